// srhd: batch driver for the relativistic hydrodynamics solver.
//
// Verbs: run, convergence, properties, list-problems. Flags mirror the
// configuration keys; --config supplies a key=value file and command-line
// keys must be disjoint from the file's keys (no silent precedence). Thread
// count comes from the SRHD_THREADS environment variable.
//
// Exit codes: 0 success, 2 configuration error, 3 solver error, 4 IO error.

#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "srhd/run.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIo = 4;

// Flag values are kept as the user's literal tokens and assembled into a
// key=value document, so the configuration parser stays the single point of
// validation for both files and flags.
struct Flags {
  std::string config;
  std::string problem, r, w_hat, theta, eps_d, eps_q, t_final;
  std::string output_dir, cadence, limiter, characteristic, seed, samples;
  std::vector<std::string> resolution, meshes;
};

void register_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config,
                  "key=value configuration file; flag keys must not repeat "
                  "keys set in the file");
  cmd->add_option("--problem", f.problem,
                  "benchmark preset (see list-problems)");
  cmd->add_option("--r", f.r, "reconstruction radius: 3 (5th order WENO) or "
                              "5 (9th order)");
  cmd->add_option("--w-hat", f.w_hat, "CFL fraction in (0,1)");
  cmd->add_option("--theta", f.theta,
                  "numerical-viscosity amplification, >= 1");
  cmd->add_option("--eps-d", f.eps_d, "density floor");
  cmd->add_option("--eps-q", f.eps_q, "q floor");
  cmd->add_option("--resolution", f.resolution,
                  "cells per axis (one or two values)")
      ->expected(1, 2);
  cmd->add_option("--meshes", f.meshes, "convergence study mesh ladder")
      ->expected(2, 64);
  cmd->add_option("--t-final", f.t_final, "final time override");
  cmd->add_option("--output-dir", f.output_dir, "output directory");
  cmd->add_option("--cadence", f.cadence,
                  "time between snapshots (0: initial and final only)");
  cmd->add_option("--limiter", f.limiter,
                  "physical-constraints-preserving limiter on/off");
  cmd->add_option("--characteristic", f.characteristic,
                  "characteristic (on) or component-wise (off) "
                  "reconstruction");
  cmd->add_option("--seed", f.seed, "property-suite seed");
  cmd->add_option("--samples", f.samples, "property-suite draws per family");
}

std::string join_tokens(const std::vector<std::string>& toks) {
  std::string out;
  for (const std::string& t : toks) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

std::string overrides_document(const Flags& f) {
  std::string doc;
  const auto kv = [&doc](const char* key, const std::string& value) {
    if (!value.empty()) doc += std::string(key) + "=" + value + "\n";
  };
  kv("problem", f.problem);
  kv("r", f.r);
  kv("w_hat", f.w_hat);
  kv("theta", f.theta);
  kv("eps_d", f.eps_d);
  kv("eps_q", f.eps_q);
  kv("resolution", join_tokens(f.resolution));
  kv("meshes", join_tokens(f.meshes));
  kv("t_final", f.t_final);
  kv("output.dir", f.output_dir);
  kv("output.cadence", f.cadence);
  kv("limiter", f.limiter);
  kv("characteristic", f.characteristic);
  kv("seed", f.seed);
  kv("samples", f.samples);
  return doc;
}

srhd::RunConfig resolve_config(const Flags& f) {
  std::string base;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in.good())
      throw srhd::IoError("cannot read config file: " + f.config);
    std::ostringstream buf;
    buf << in.rdbuf();
    base = buf.str();
  }
  return srhd::parse_config_overlay(base, overrides_document(f));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"physical-constraints-preserving finite difference WENO "
               "solver for special relativistic hydrodynamics"};
  app.require_subcommand(1);

  Flags run_flags, conv_flags, prop_flags;
  CLI::App* run_cmd = app.add_subcommand(
      "run", "advance one problem to its final time and write snapshots "
             "plus a manifest");
  register_flags(run_cmd, run_flags);
  CLI::App* conv_cmd = app.add_subcommand(
      "convergence", "accuracy study on the smooth benchmark: one fresh "
                     "grid per mesh, error/order table");
  register_flags(conv_cmd, conv_flags);
  CLI::App* prop_cmd = app.add_subcommand(
      "properties", "randomized checks of the scheme's admissibility "
                    "lemmas; zero violations expected");
  register_flags(prop_cmd, prop_flags);
  CLI::App* list_cmd =
      app.add_subcommand("list-problems", "print the benchmark preset names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (list_cmd->parsed()) {
      for (const std::string& name : srhd::list_problems())
        std::cout << name << '\n';
      return 0;
    }

    const int threads = srhd::env_threads();
    if (run_cmd->parsed()) {
      srhd::run_single(resolve_config(run_flags), threads, std::cout);
    } else if (conv_cmd->parsed()) {
      srhd::run_convergence(resolve_config(conv_flags), threads, std::cout);
    } else if (prop_cmd->parsed()) {
      const srhd::PropertyReport report =
          srhd::run_properties(resolve_config(prop_flags), threads, std::cout);
      if (!report.all_passed()) {
        std::cerr << "property violations detected\n";
        return kExitSolver;
      }
    }
    return 0;
  } catch (const srhd::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const srhd::IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kExitIo;
  } catch (const srhd::Error& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSolver;
  }
}
