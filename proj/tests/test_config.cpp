//! Configuration parsing tests: defaults, key validation, sections, lists,
//! inline problems, and error diagnostics.

#include <string>

#include "doctest.h"
#include "srhd/config.hpp"
#include "srhd/errors.hpp"

using namespace srhd;

namespace {

// True when the error message mentions the token (line number or key).
bool mentions(const Error& e, const std::string& token) {
  return std::string(e.what()).find(token) != std::string::npos;
}

}  // namespace

TEST_CASE("defaults: problem=smooth leaves everything at scheme defaults") {
  const RunConfig cfg = parse_config("problem = smooth\n");
  CHECK(cfg.problem == "smooth");
  CHECK(cfg.order_r == 3);
  CHECK(cfg.w_hat == 0.45);
  CHECK(cfg.theta_amp == 1.2);
  CHECK(cfg.eps_d == 1e-13);
  CHECK(cfg.eps_q == 1e-13);
  CHECK(cfg.resolution.empty());
  CHECK(!cfg.t_final.has_value());
  CHECK(cfg.output_dir == ".");
  CHECK(cfg.output_cadence == 0.0);
  CHECK(cfg.limiter);
  CHECK(cfg.characteristic);
  CHECK(cfg.seed == 0);
  CHECK(cfg.samples == 10000);

  // an empty document is also valid (problem chosen later / property mode)
  const RunConfig empty = parse_config("");
  CHECK(empty.problem.empty());
  CHECK(empty.order_r == 3);
}

TEST_CASE("w_hat default follows the order") {
  CHECK(parse_config("r = 5\n").w_hat == 0.4);
  CHECK(parse_config("r = 3\n").w_hat == 0.45);
  // explicit value wins over the order-derived default
  CHECK(parse_config("r = 5\nw_hat = 0.3\n").w_hat == 0.3);
}

TEST_CASE("unsupported order is rejected") {
  CHECK_THROWS_AS(parse_config("r = 4\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("r = 9\n"), ConfigError);
  try {
    parse_config("r = 4\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(mentions(e, "'r'"));
  }
}

TEST_CASE("sections, comments, and lists") {
  const std::string doc =
      "# run setup\n"
      "problem = blast   # preset\n"
      "resolution = 1000\n"
      "\n"
      "[output]\n"
      "dir = out/blast\n"
      "cadence = 0.05\n";
  const RunConfig cfg = parse_config(doc);
  CHECK(cfg.problem == "blast");
  REQUIRE(cfg.resolution.size() == 1);
  CHECK(cfg.resolution[0] == 1000);
  CHECK(cfg.output_dir == "out/blast");
  CHECK(cfg.output_cadence == 0.05);

  // dotted keys work without the section header too
  CHECK(parse_config("output.dir = elsewhere\n").output_dir == "elsewhere");

  // 2D resolution and convergence meshes are lists
  const RunConfig two = parse_config("problem = rp2d_2\nresolution = 100 100\n");
  REQUIRE(two.resolution.size() == 2);
  CHECK(two.resolution[1] == 100);
  const RunConfig conv = parse_config("meshes = 8 16 32 64\n");
  REQUIRE(conv.meshes.size() == 4);
  CHECK(conv.meshes[3] == 64);
}

TEST_CASE("syntax errors carry line numbers") {
  try {
    parse_config("problem = smooth\nthis line has no equals\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(mentions(e, "line 2"));
  }
  try {
    parse_config("\n\nproblem =\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(mentions(e, "line 3"));
    CHECK(mentions(e, "empty value"));
  }
  try {
    parse_config("[output\ndir = x\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(mentions(e, "line 1"));
  }
}

TEST_CASE("unknown and duplicate keys are rejected by name") {
  try {
    parse_config("problem = smooth\nwibble = 3\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(mentions(e, "unknown key 'wibble'"));
    CHECK(mentions(e, "line 2"));
  }
  try {
    parse_config("r = 3\nr = 5\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(mentions(e, "duplicate key 'r'"));
  }
  // unknown problem names are contract violations on the key
  try {
    parse_config("problem = nosuch\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(mentions(e, "'problem'"));
    CHECK(mentions(e, "nosuch"));
  }
}

TEST_CASE("value contracts") {
  CHECK_THROWS_AS(parse_config("w_hat = 1.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("w_hat = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("theta = 0.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("eps_d = -1e-13\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("eps_q = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("t_final = -1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("resolution = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("resolution = 8 8 8\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("meshes = 16\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("meshes = 16 8\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("output.cadence = -0.1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("samples = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("seed = -1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("limiter = maybe\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("r = three\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("w_hat = fast\n"), ConfigError);
  CHECK(parse_config("limiter = off\n").limiter == false);
  CHECK(parse_config("characteristic = no\n").characteristic == false);
  CHECK(parse_config("seed = 42\n").seed == 42);
}

TEST_CASE("inline Riemann problems") {
  const std::string doc =
      "[inline]\n"
      "left = 1 0 1000\n"
      "right = 0.125 0 0.1\n"
      "gamma = 1.4\n"
      "split = 0.3\n"
      "domain = 0 2\n"
      "t_final = 0.25\n";
  const RunConfig cfg = parse_config(doc);
  REQUIRE(cfg.inline_rp.has_value());
  CHECK(cfg.inline_rp->left.rho == 1.0);
  CHECK(cfg.inline_rp->right.p == 0.1);
  CHECK(cfg.inline_rp->gamma == 1.4);

  const ProblemSpec spec = make_problem(cfg);
  CHECK(spec.name == "inline");
  CHECK(spec.dimension == 1);
  CHECK(spec.eos.gamma == 1.4);
  CHECK(spec.t_final == 0.25);
  CHECK(spec.lo[0] == 0.0);
  CHECK(spec.hi[0] == 2.0);
  CHECK(spec.init1(0.29).rho == 1.0);
  CHECK(spec.init1(0.31).rho == 0.125);

  // defaults: split at the domain midpoint, gamma 5/3
  const RunConfig mini = parse_config("inline.left = 1 0 1\ninline.right = 0.1 0 0.1\n");
  REQUIRE(mini.inline_rp.has_value());
  CHECK(mini.inline_rp->split == 0.5);
  CHECK(mini.inline_rp->gamma == 5.0 / 3.0);

  // contract violations
  CHECK_THROWS_AS(parse_config("problem = rp1d\ninline.left = 1 0 1\n"
                               "inline.right = 1 0 1\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("inline.left = 1 0 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("inline.left = 1 0\ninline.right = 1 0 1\n"),
                  ConfigError);
  CHECK_THROWS_AS(
      parse_config("inline.left = -1 0 1\ninline.right = 1 0 1\n"),
      ConfigError);
  CHECK_THROWS_AS(
      parse_config("inline.left = 1 0 1\ninline.right = 1 0 1\n"
                   "inline.gamma = 2.5\n"),
      ConfigError);
  CHECK_THROWS_AS(
      parse_config("inline.left = 1 0 1\ninline.right = 1 0 1\n"
                   "inline.split = 1.5\n"),
      ConfigError);
}

TEST_CASE("make_problem resolves presets and applies overrides") {
  RunConfig cfg = parse_config("problem = rp1d\nt_final = 0.2\n");
  const ProblemSpec spec = make_problem(cfg);
  CHECK(spec.name == "rp1d");
  CHECK(spec.t_final == 0.2);

  CHECK_THROWS_AS(make_problem(parse_config("")), ConfigError);
}

TEST_CASE("default convergence meshes and scheme meta") {
  CHECK(default_meshes(3) == std::vector<int>{8, 16, 32, 64, 128, 256});
  CHECK(default_meshes(5) == std::vector<int>{8, 16, 24, 32, 40, 48, 56});

  const RunConfig cfg = parse_config("problem = smooth\nr = 5\nseed = 7\n"
                                     "limiter = off\n");
  const SchemeMeta meta = scheme_meta(cfg, "smooth", 2);
  CHECK(meta.problem == "smooth");
  CHECK(meta.order_r == 5);
  CHECK(meta.w_hat == 0.4);
  CHECK(!meta.limiter);
  CHECK(meta.characteristic);
  CHECK(meta.threads == 2);
  CHECK(meta.seed == 7);
}

TEST_CASE("overlay parsing keeps documents disjoint") {
  // overrides extend the base; validation spans the union
  const RunConfig cfg = parse_config_overlay(
      "problem = smooth\n[output]\ndir = /tmp/base\n", "r = 5\nseed = 9\n");
  CHECK(cfg.problem == "smooth");
  CHECK(cfg.order_r == 5);
  CHECK(cfg.w_hat == 0.4);  // default still follows the overridden order
  CHECK(cfg.output_dir == "/tmp/base");
  CHECK(cfg.seed == 9);

  // a trailing section in the base never leaks onto override keys: a bare
  // 'cadence' stays bare (the qualified key is output.cadence) and is
  // rejected as unknown instead of being silently section-qualified
  CHECK_THROWS_WITH_AS(
      parse_config_overlay("[output]\ndir = /x\n", "cadence = 0.5\n"),
      doctest::Contains("cadence"), ConfigError);
  const RunConfig sec = parse_config_overlay("[output]\ndir = /x\n",
                                             "output.cadence = 0.5\n");
  CHECK(sec.output_cadence == 0.5);
  CHECK(sec.output_dir == "/x");

  // the same key on both sides is an error naming the key
  CHECK_THROWS_WITH_AS(parse_config_overlay("r = 3\n", "r = 5\n"),
                       doctest::Contains("'r'"), ConfigError);
  // either side may be empty
  CHECK(parse_config_overlay("", "problem = rp1d\n").problem == "rp1d");
  CHECK(parse_config_overlay("problem = rp1d\n", "").problem == "rp1d");
}
