//! \file output.hpp
//! Field snapshots and run manifests. Snapshots are plain CSV with full
//! round-trip decimal precision plus a JSON sidecar (<path>.meta.json)
//! recording dimensions, spacings, time, and scheme settings; manifests are
//! JSON. Desk-scale outputs stay trivially diffable.

#ifndef SRHD_OUTPUT_HPP_
#define SRHD_OUTPUT_HPP_

#include <array>
#include <string>
#include <vector>

#include "srhd/grid.hpp"

namespace srhd {

// Scheme settings echoed into sidecars and manifests.
struct SchemeMeta {
  std::string problem;
  int order_r = 3;
  double w_hat = 0.45;
  double theta_amp = 1.2;
  double eps_d = 1e-13;
  double eps_q = 1e-13;
  bool limiter = true;
  bool characteristic = true;
  std::string dt_policy = "cfl";
  int threads = 1;
  unsigned seed = 0;
};

// 1D snapshot: header x,rho,v1,p,e,W,D,m1,E, one row per cell.
void write_fields(const FieldGrid<1>& g, const EosParams& eos, double time,
                  const std::string& path, const SchemeMeta& meta);

// 2D snapshot: x,y (planar) or r,z (axisymmetric) prefix columns, then
// rho,v1,v2,p,e,W,D,m1,m2,E, row-major by y then x. With schlieren an extra
// ln(rho) column is appended for contour plots of the density logarithm.
void write_fields(const FieldGrid<2>& g, const EosParams& eos, double time,
                  const std::string& path, const SchemeMeta& meta,
                  bool schlieren = false);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

// Parses a snapshot back; numbers round-trip bit-exactly.
CsvTable read_csv(const std::string& path);

struct RunManifest {
  SchemeMeta scheme;
  double gamma = 5.0 / 3.0;
  int dimension = 1;
  std::array<int, 2> n{0, 0};
  double t_final = 0.0;
  long steps = 0;
  double wall_seconds = 0.0;
  double min_D = 0.0;  // smallest density seen at any stage of the run
  double min_q = 0.0;  // smallest q seen at any stage of the run
  std::vector<std::string> snapshots;
};

void write_manifest(const RunManifest& m, const std::string& path);

}  // namespace srhd

#endif  // SRHD_OUTPUT_HPP_
