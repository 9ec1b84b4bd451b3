//! \file run.cpp
//! Batch orchestration: single runs, convergence studies, property suite.

#include "srhd/run.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>

#include "srhd/time_integration.hpp"

namespace srhd {

namespace {

namespace fs = std::filesystem;

std::string join_path(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

void ensure_output_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw IoError("cannot create output directory " + dir + ": " +
                  ec.message());
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write failed for " + path);
}

SweepConfig make_sweep(const RunConfig& cfg, const EosParams& eos,
                       int threads) {
  SweepConfig s;
  s.order_r = cfg.order_r;
  s.eos = eos;
  s.theta_amp = cfg.theta_amp;
  s.floors = Floors{cfg.eps_d, cfg.eps_q};
  s.limiter_enabled = cfg.limiter;
  s.characteristic = cfg.characteristic;
  s.threads = threads;
  return s;
}

template <int Dim>
void fold_interior_minima(const FieldGrid<Dim>& g, double& min_D,
                          double& min_q) {
  const auto fold = [&](std::size_t f) {
    if (g.is_solid(f)) return;
    min_D = std::min(min_D, g.cells[f][0]);
    min_q = std::min(min_q, q_value<Dim>(g.cells[f]));
  };
  if constexpr (Dim == 1) {
    for (int i = 0; i < g.n[0]; ++i) fold(g.flat(i));
  } else {
    for (int j = 0; j < g.n[1]; ++j)
      for (int i = 0; i < g.n[0]; ++i) fold(g.flat(i, j));
  }
}

// 2D snapshots always carry the schlieren column: the density logarithm is
// the quantity the multidimensional benchmarks are plotted in.
template <int Dim>
void snapshot(const FieldGrid<Dim>& g, const EosParams& eos, double time,
              const std::string& path, const SchemeMeta& meta) {
  if constexpr (Dim == 1) {
    write_fields(g, eos, time, path, meta);
  } else {
    write_fields(g, eos, time, path, meta, /*schlieren=*/true);
  }
}

template <int Dim>
RunManifest run_dim(const RunConfig& cfg, const ProblemSpec& spec,
                    const std::array<int, 2>& n, int threads,
                    std::ostream& log) {
  StepControls controls;
  controls.w_hat = cfg.w_hat;
  TimeIntegrator<Dim> ti(
      [&] {
        if constexpr (Dim == 1) return build_grid_1d(spec, n[0], cfg.order_r);
        if constexpr (Dim == 2)
          return build_grid_2d(spec, n[0], n[1], cfg.order_r);
      }(),
      make_sweep(cfg, spec.eos, threads), controls);

  RunManifest m;
  m.scheme = scheme_meta(cfg, spec.name, threads);
  m.gamma = spec.eos.gamma;
  m.dimension = Dim;
  m.n = {n[0], Dim == 2 ? n[1] : 0};
  m.t_final = spec.t_final;
  m.min_D = std::numeric_limits<double>::infinity();
  m.min_q = std::numeric_limits<double>::infinity();

  int snap_index = 0;
  const auto snap = [&](double time) {
    std::ostringstream name;
    name << spec.name << '_' << std::setw(4) << std::setfill('0')
         << snap_index++ << ".csv";
    const std::string path = join_path(cfg.output_dir, name.str());
    snapshot(ti.grid(), spec.eos, time, path, m.scheme);
    m.snapshots.push_back(path);
    log << "t=" << time << "  " << path << '\n';
  };

  const auto start = std::chrono::steady_clock::now();
  snap(0.0);

  const double tf = spec.t_final;
  double t = 0.0;
  long next_snap = 1;  // index of the next cadence snapshot
  while (t < tf * (1.0 - 1e-12)) {
    double cap = tf - t;
    double target = 0.0;
    if (cfg.output_cadence > 0.0) {
      target = cfg.output_cadence * static_cast<double>(next_snap);
      if (target < tf * (1.0 - 1e-9))
        cap = std::min(cap, target - t);
      else
        target = 0.0;  // remaining cadence marks collapse onto the final snap
    }
    const StepResult r = ti.step(cap);
    t += r.dt;
    ++m.steps;
    m.min_D = std::min(m.min_D, r.min_D);
    m.min_q = std::min(m.min_q, r.min_q);
    if (target > 0.0 && t >= target * (1.0 - 1e-12)) {
      snap(t);
      ++next_snap;
    }
  }

  fold_interior_minima(ti.grid(), m.min_D, m.min_q);
  snap(tf);
  m.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  write_manifest(m, join_path(cfg.output_dir, spec.name + ".manifest.json"));
  log << spec.name << ": " << m.steps << " steps to t=" << tf
      << ", min D=" << m.min_D << ", min q=" << m.min_q << "  ("
      << m.wall_seconds << " s)\n";
  return m;
}

std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(4) << v;
  return os.str();
}

std::string ord(double v) {
  if (std::isnan(v)) return "-";
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v;
  return os.str();
}

}  // namespace

int env_threads() {
  const char* raw = std::getenv("SRHD_THREADS");
  if (raw == nullptr || *raw == '\0') {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
  }
  const std::string s(raw);
  int value = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || p != s.data() + s.size() || value <= 0)
    throw ConfigError("SRHD_THREADS: expected a positive integer, got '" + s +
                      "'");
  return value;
}

RunManifest run_single(const RunConfig& cfg, int threads, std::ostream& log) {
  const ProblemSpec spec = make_problem(cfg);
  ensure_output_dir(cfg.output_dir);

  std::array<int, 2> n = spec.default_n;
  if (!cfg.resolution.empty()) {
    if (static_cast<int>(cfg.resolution.size()) != spec.dimension) {
      std::ostringstream os;
      os << "resolution: expected " << spec.dimension << " value"
         << (spec.dimension == 2 ? "s" : "") << " for problem '" << spec.name
         << "', got " << cfg.resolution.size();
      throw ConfigError(os.str());
    }
    n[0] = cfg.resolution[0];
    if (spec.dimension == 2) n[1] = cfg.resolution[1];
  }

  if (spec.dimension == 1) return run_dim<1>(cfg, spec, n, threads, log);
  return run_dim<2>(cfg, spec, n, threads, log);
}

ConvergenceStudy run_convergence(const RunConfig& cfg, int threads,
                                 std::ostream& log) {
  RunConfig c = cfg;
  if (c.problem.empty() && !c.inline_rp) c.problem = "smooth";
  if (c.problem != "smooth")
    throw ConfigError(
        "convergence: the study measures errors against the exact smooth "
        "solution; set problem=smooth");
  const ProblemSpec spec = make_problem(c);
  ensure_output_dir(c.output_dir);
  const std::vector<int> meshes =
      c.meshes.empty() ? default_meshes(c.order_r) : c.meshes;

  ConvergenceStudy study;
  for (const int N : meshes) {
    const SweepConfig sweep = make_sweep(c, spec.eos, threads);
    StepControls controls;
    controls.w_hat = c.w_hat;
    controls.dt_policy = DtPolicy::accuracy_power;
    TimeIntegrator<1> ti(build_grid_1d(spec, N, c.order_r), sweep, controls);

    const double tf = spec.t_final;
    double t = 0.0;
    while (t < tf * (1.0 - 1e-12)) t += ti.step(tf - t).dt;

    const FieldGrid<1>& g = ti.grid();
    std::vector<double> numeric(static_cast<std::size_t>(N));
    std::vector<double> exact(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
      const std::size_t k = static_cast<std::size_t>(i);
      numeric[k] = primitive_from_conserved<1>(g.cells[g.flat(i)], spec.eos,
                                               sweep.recovery)
                       .rho;
      exact[k] = smooth_exact(g.center(0, i), tf).rho;
    }

    ConvergenceRow row;
    row.n = N;
    row.norms = error_norms(numeric, exact, g.dx[0]);
    row.l1_order = std::numeric_limits<double>::quiet_NaN();
    row.linf_order = std::numeric_limits<double>::quiet_NaN();
    if (!study.rows.empty()) {
      const ConvergenceRow& prev = study.rows.back();
      row.l1_order = observed_order(prev.norms.l1, row.norms.l1, prev.n, N);
      row.linf_order =
          observed_order(prev.norms.linf, row.norms.linf, prev.n, N);
    }
    study.rows.push_back(row);
  }

  const std::string table = format_convergence(study);
  log << table;
  std::ostringstream name;
  name << "convergence_r" << c.order_r << ".txt";
  write_text(join_path(c.output_dir, name.str()), table);
  return study;
}

std::string format_convergence(const ConvergenceStudy& s) {
  std::ostringstream os;
  os << std::setw(6) << "N" << std::setw(14) << "l1 error" << std::setw(8)
     << "order" << std::setw(14) << "linf error" << std::setw(8) << "order"
     << '\n';
  for (const ConvergenceRow& r : s.rows) {
    os << std::setw(6) << r.n << std::setw(14) << sci(r.norms.l1)
       << std::setw(8) << ord(r.l1_order) << std::setw(14) << sci(r.norms.linf)
       << std::setw(8) << ord(r.linf_order) << '\n';
  }
  return os.str();
}

PropertyReport run_properties(const RunConfig& cfg, int threads,
                              std::ostream& log) {
  ensure_output_dir(cfg.output_dir);
  const PropertyReport report =
      lemma_property_suite(cfg.samples, cfg.seed, threads);
  const std::string text = format_report(report);
  log << text;
  write_text(join_path(cfg.output_dir, "properties.txt"), text);
  return report;
}

}  // namespace srhd
