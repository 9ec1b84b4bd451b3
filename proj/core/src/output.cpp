#include "srhd/output.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"

namespace srhd {
namespace {

// Shortest decimal form that round-trips to the same double.
void append_number(std::string& line, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  line.append(buf, res.ptr);
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void finish_write(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

nlohmann::json scheme_json(const SchemeMeta& meta) {
  return {{"problem", meta.problem},
          {"order_r", meta.order_r},
          {"w_hat", meta.w_hat},
          {"theta_amp", meta.theta_amp},
          {"eps_d", meta.eps_d},
          {"eps_q", meta.eps_q},
          {"limiter", meta.limiter},
          {"characteristic", meta.characteristic},
          {"dt_policy", meta.dt_policy},
          {"threads", meta.threads},
          {"seed", meta.seed}};
}

template <int Dim>
void write_sidecar(const FieldGrid<Dim>& g, double time,
                   const std::string& path, const SchemeMeta& meta) {
  nlohmann::json j;
  j["dimension"] = Dim;
  j["time"] = time;
  j["geometry"] =
      g.geometry == Geometry::axisymmetric ? "axisymmetric" : "planar";
  for (int a = 0; a < Dim; ++a) {
    j["n"][a] = g.n[a];
    j["dx"][a] = g.dx[a];
    j["origin"][a] = g.origin[a];
  }
  j["scheme"] = scheme_json(meta);
  std::ofstream out = open_for_write(path + ".meta.json");
  out << j.dump(2) << "\n";
  finish_write(out, path + ".meta.json");
}

template <int Dim>
void append_state(std::string& line, const ConsVec<Dim>& U,
                  const EosParams& eos) {
  const Prim<Dim> V = primitive_from_conserved<Dim>(U, eos);
  const double e = V.p / ((eos.gamma - 1.0) * V.rho);
  const double W = lorentz_factor<Dim>(V.v);
  append_number(line, V.rho);
  for (int k = 0; k < Dim; ++k) {
    line += ',';
    append_number(line, V.v[k]);
  }
  line += ',';
  append_number(line, V.p);
  line += ',';
  append_number(line, e);
  line += ',';
  append_number(line, W);
  for (int k = 0; k < Dim + 2; ++k) {
    line += ',';
    append_number(line, U[k]);
  }
}

}  // namespace

void write_fields(const FieldGrid<1>& g, const EosParams& eos, double time,
                  const std::string& path, const SchemeMeta& meta) {
  std::ofstream out = open_for_write(path);
  out << "x,rho,v1,p,e,W,D,m1,E\n";
  std::string line;
  for (int i = 0; i < g.n[0]; ++i) {
    line.clear();
    append_number(line, g.center(0, i));
    line += ',';
    append_state<1>(line, g.cells[g.flat(i)], eos);
    line += '\n';
    out << line;
  }
  finish_write(out, path);
  write_sidecar(g, time, path, meta);
}

void write_fields(const FieldGrid<2>& g, const EosParams& eos, double time,
                  const std::string& path, const SchemeMeta& meta,
                  bool schlieren) {
  std::ofstream out = open_for_write(path);
  const bool axi = g.geometry == Geometry::axisymmetric;
  out << (axi ? "r,z," : "x,y,") << "rho,v1,v2,p,e,W,D,m1,m2,E";
  if (schlieren) out << ",lnrho";
  out << "\n";
  std::string line;
  for (int j = 0; j < g.n[1]; ++j)
    for (int i = 0; i < g.n[0]; ++i) {
      line.clear();
      append_number(line, g.center(0, i));
      line += ',';
      append_number(line, g.center(1, j));
      line += ',';
      append_state<2>(line, g.cells[g.flat(i, j)], eos);
      if (schlieren) {
        const Prim<2> V =
            primitive_from_conserved<2>(g.cells[g.flat(i, j)], eos);
        line += ',';
        append_number(line, std::log(V.rho));
      }
      line += '\n';
      out << line;
    }
  finish_write(out, path);
  write_sidecar(g, time, path, meta);
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw IoError("'" + path + "' is empty");
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) table.header.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p < end) {
      double v = 0.0;
      const auto res = std::from_chars(p, end, v);
      if (res.ec != std::errc{})
        throw IoError("bad number in '" + path + "': " + line);
      row.push_back(v);
      p = res.ptr;
      if (p < end && *p == ',') ++p;
    }
    if (row.size() != table.header.size())
      throw IoError("ragged row in '" + path + "': " + line);
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_manifest(const RunManifest& m, const std::string& path) {
  nlohmann::json j;
  j["scheme"] = scheme_json(m.scheme);
  j["gamma"] = m.gamma;
  j["dimension"] = m.dimension;
  j["n"] = m.dimension == 1 ? nlohmann::json::array({m.n[0]})
                            : nlohmann::json::array({m.n[0], m.n[1]});
  j["t_final"] = m.t_final;
  j["steps"] = m.steps;
  j["wall_seconds"] = m.wall_seconds;
  j["min_D"] = m.min_D;
  j["min_q"] = m.min_q;
  j["snapshots"] = m.snapshots;
  std::ofstream out = open_for_write(path);
  out << j.dump(2) << "\n";
  finish_write(out, path);
}

}  // namespace srhd
