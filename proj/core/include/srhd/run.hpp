//! \file run.hpp
//! Batch orchestration. Three modes, all driven by a validated RunConfig:
//! a single run (snapshots at a time cadence plus a JSON manifest), a
//! convergence study on the smooth benchmark (fresh grid per mesh, dt from
//! the accuracy power policy, error/order table), and the lemma property
//! suite. Output files are deterministic for a fixed config and seed.

#ifndef SRHD_RUN_HPP_
#define SRHD_RUN_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "srhd/config.hpp"
#include "srhd/output.hpp"
#include "srhd/properties.hpp"
#include "srhd/reference.hpp"

namespace srhd {

// Thread count from the SRHD_THREADS environment variable; unset or empty
// falls back to the hardware concurrency (at least 1). A malformed or
// non-positive value is a ConfigError.
int env_threads();

// Advance the configured problem to its final time. Writes the initial and
// final states plus one snapshot per cadence interval (cadence 0 disables
// intermediate snapshots) into output_dir as <problem>_NNNN.csv, then the
// manifest as <problem>.manifest.json. `log` receives one line per snapshot
// and a closing summary. Solver failures propagate with the failing
// cell/interface coordinates and stage in the message.
RunManifest run_single(const RunConfig& cfg, int threads, std::ostream& log);

// One mesh of a convergence study. Orders are measured against the previous
// (coarser) row and are NaN on the first row.
struct ConvergenceRow {
  int n = 0;
  ErrorNorms norms;
  double l1_order = 0.0;
  double linf_order = 0.0;
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
};

// Run the smooth accuracy benchmark on every configured mesh (default ladder
// from default_meshes), one fresh grid per mesh, dt = (dx/2)^e with the
// order's accuracy exponent, and measure rho against the exact traveling
// wave at the cell centers. The table is written to
// <output_dir>/convergence_r<r>.txt as well as returned. Requires the
// smooth problem (empty problem name defaults to it).
ConvergenceStudy run_convergence(const RunConfig& cfg, int threads,
                                 std::ostream& log);

// N / l1 error / order / linf error / order rows in benchmark-table layout.
std::string format_convergence(const ConvergenceStudy& s);

// Lemma property suite at the configured sample count and seed; the report
// is written to <output_dir>/properties.txt as well as returned.
PropertyReport run_properties(const RunConfig& cfg, int threads,
                              std::ostream& log);

}  // namespace srhd

#endif  // SRHD_RUN_HPP_
