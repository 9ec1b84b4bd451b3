//! \file config.hpp
//! Run configuration: a small key=value document format plus validation.
//!
//! Documents are line oriented. `#` starts a comment, blank lines are
//! skipped, `[section]` prefixes the following keys with `section.`, and a
//! value is either a scalar or a whitespace-separated list. Unknown keys,
//! duplicate keys, and contract violations are rejected with the offending
//! line number or key name.

#ifndef SRHD_CONFIG_HPP_
#define SRHD_CONFIG_HPP_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "srhd/output.hpp"
#include "srhd/problems.hpp"

namespace srhd {

// Custom two-state 1D Riemann problem given directly in the document
// instead of a preset name (keys inline.left, inline.right, ...).
struct InlineRiemann {
  Prim<1> left{};
  Prim<1> right{};
  double split = 0.5;               // interface position
  double gamma = 5.0 / 3.0;
  std::array<double, 2> domain{0.0, 1.0};
  double t_final = 0.4;
};

struct RunConfig {
  std::string problem;                     // preset name; empty when inline
  std::optional<InlineRiemann> inline_rp;  // mutually exclusive with problem

  int order_r = 3;          // reconstruction radius: 3 or 5
  double w_hat = 0.45;      // CFL fraction; default 0.45 (r=3) / 0.4 (r=5)
  double theta_amp = 1.2;   // viscosity amplification
  double eps_d = 1e-13;     // density floor
  double eps_q = 1e-13;     // q floor

  std::vector<int> resolution;  // per-axis cells; empty -> preset default
  std::vector<int> meshes;      // convergence study; empty -> default by r
  std::optional<double> t_final;

  std::string output_dir = ".";
  double output_cadence = 0.0;  // time between snapshots; 0 = final only

  bool limiter = true;
  bool characteristic = true;  // false: component-wise reconstruction
  unsigned long seed = 0;
  long samples = 10000;  // property-suite draws per family
};

// Parse and validate a configuration document. Defaults are applied after
// parsing (in particular w_hat follows order_r unless given explicitly).
// Throws ConfigError with a line number for syntax problems and with the
// key name for contract violations.
RunConfig parse_config(const std::string& text);

// Same, reading the document from a file (IoError when unreadable).
RunConfig parse_config_file(const std::string& path);

// Parse two documents as one configuration. Both are lexed independently
// (sections never leak from one into the other) and validated together; a
// key present in both is a ConfigError naming the key. This is how
// command-line flags combine with --config files: disjoint keys, no silent
// precedence.
RunConfig parse_config_overlay(const std::string& base,
                               const std::string& overrides);

// Resolve the configured problem: preset lookup or the inline Riemann
// problem, with the t_final override applied. Throws ConfigError when the
// config names no problem.
ProblemSpec make_problem(const RunConfig& config);

// Mesh sequence used by convergence studies when none is configured.
std::vector<int> default_meshes(int order_r);

// Scheme settings echoed into snapshots and manifests.
SchemeMeta scheme_meta(const RunConfig& config, const std::string& problem,
                       int threads);

}  // namespace srhd

#endif  // SRHD_CONFIG_HPP_
