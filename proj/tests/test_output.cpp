//! Snapshot and manifest IO tests: layout, bit-exact number round-trips,
//! sidecar metadata, and error surfacing.

#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "srhd/output.hpp"
#include "srhd/problems.hpp"

using namespace srhd;

namespace {

std::filesystem::path scratch_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "srhd_io_test";
  std::filesystem::create_directories(dir);
  return dir;
}

long line_count(const std::string& path) {
  std::ifstream in(path);
  long n = 0;
  std::string line;
  while (std::getline(in, line)) ++n;
  return n;
}

}  // namespace

TEST_CASE("1D snapshot layout and bit-exact round trip") {
  const ProblemSpec spec = preset("rp1d");
  FieldGrid<1> g = build_grid_1d(spec, 2, 3);
  // make the second cell numerically awkward
  Prim<1> odd;
  odd.rho = 1.0 / 3.0;
  odd.v = {std::sqrt(0.5)};
  odd.p = 3.14159e-7;
  g.cells[g.flat(1)] = conserved_from_primitive(odd, spec.eos);

  const std::string path = (scratch_dir() / "one_d.csv").string();
  SchemeMeta meta;
  meta.problem = "rp1d";
  write_fields(g, spec.eos, 0.125, path, meta);

  CHECK(line_count(path) == 3);  // header + 2 rows

  const CsvTable t = read_csv(path);
  REQUIRE(t.header.size() == 9);
  CHECK(t.header[0] == "x");
  CHECK(t.header[1] == "rho");
  CHECK(t.header[8] == "E");
  REQUIRE(t.rows.size() == 2);
  for (int i = 0; i < 2; ++i) {
    const ConsVec<1>& U = g.cells[g.flat(i)];
    CHECK(t.rows[i][0] == g.center(0, i));  // bit-exact
    CHECK(t.rows[i][6] == U[0]);
    CHECK(t.rows[i][7] == U[1]);
    CHECK(t.rows[i][8] == U[2]);
    const Prim<1> V = primitive_from_conserved<1>(U, spec.eos);
    CHECK(t.rows[i][1] == V.rho);
    CHECK(t.rows[i][2] == V.v[0]);
    CHECK(t.rows[i][3] == V.p);
  }

  // sidecar records dimensions, spacing, time, scheme settings
  std::ifstream side(path + ".meta.json");
  REQUIRE(side.good());
  const auto j = nlohmann::json::parse(side);
  CHECK(j["dimension"] == 1);
  CHECK(j["time"] == 0.125);
  CHECK(j["n"][0] == 2);
  CHECK(j["dx"][0] == doctest::Approx(0.5));
  CHECK(j["scheme"]["order_r"] == 3);
  CHECK(j["scheme"]["problem"] == "rp1d");
}

TEST_CASE("2D snapshot: row-major order, coordinate names, schlieren") {
  const ProblemSpec spec = preset("rp2d_1");
  FieldGrid<2> g = build_grid_2d(spec, 4, 3, 3);
  const std::string path = (scratch_dir() / "two_d.csv").string();
  SchemeMeta meta;
  write_fields(g, spec.eos, 0.0, path, meta, /*schlieren=*/true);

  const CsvTable t = read_csv(path);
  REQUIRE(t.header.size() == 13);
  CHECK(t.header[0] == "x");
  CHECK(t.header[1] == "y");
  CHECK(t.header.back() == "lnrho");
  REQUIRE(t.rows.size() == 4 * 3);
  // row-major by y then x: row index j*nx + i
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 4; ++i) {
      const auto& row = t.rows[j * 4 + i];
      CHECK(row[0] == g.center(0, i));
      CHECK(row[1] == g.center(1, j));
      CHECK(row.back() == std::log(row[2]));  // lnrho column, bit-exact
    }

  // axisymmetric grids name the coordinates r,z
  const ProblemSpec jet = preset("jet_a1");
  FieldGrid<2> gj = build_grid_2d(jet, 7, 10, 3);
  const std::string jpath = (scratch_dir() / "jet.csv").string();
  write_fields(gj, jet.eos, 0.0, jpath, meta);
  const CsvTable tj = read_csv(jpath);
  CHECK(tj.header[0] == "r");
  CHECK(tj.header[1] == "z");
  CHECK(tj.rows[0][0] == gj.center(0, 0));  // first radial point at dr
}

TEST_CASE("manifest serialization") {
  RunManifest m;
  m.scheme.problem = "blast";
  m.scheme.order_r = 5;
  m.scheme.w_hat = 0.4;
  m.gamma = 1.4;
  m.dimension = 1;
  m.n = {1000, 0};
  m.t_final = 0.43;
  m.steps = 512;
  m.wall_seconds = 1.25;
  m.min_D = 3.2e-4;
  m.min_q = 7.5e-9;
  m.snapshots = {"blast_000000.csv", "blast_final.csv"};
  const std::string path = (scratch_dir() / "run_manifest.json").string();
  write_manifest(m, path);

  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  CHECK(j["scheme"]["problem"] == "blast");
  CHECK(j["scheme"]["order_r"] == 5);
  CHECK(j["gamma"] == 1.4);
  CHECK(j["n"].size() == 1);
  CHECK(j["n"][0] == 1000);
  CHECK(j["steps"] == 512);
  CHECK(j["min_D"] == 3.2e-4);
  CHECK(j["min_q"] == 7.5e-9);
  CHECK(j["snapshots"].size() == 2);
}

TEST_CASE("IO failures carry the path") {
  const ProblemSpec spec = preset("rp1d");
  FieldGrid<1> g = build_grid_1d(spec, 2, 3);
  SchemeMeta meta;
  CHECK_THROWS_AS(
      write_fields(g, spec.eos, 0.0, "/nonexistent_dir_xyz/out.csv", meta),
      IoError);
  CHECK_THROWS_AS(read_csv("/nonexistent_dir_xyz/in.csv"), IoError);

  // malformed numbers are rejected
  const std::string bad = (scratch_dir() / "bad.csv").string();
  {
    std::ofstream out(bad);
    out << "x,rho\n1.0,notanumber\n";
  }
  CHECK_THROWS_AS(read_csv(bad), IoError);
}
