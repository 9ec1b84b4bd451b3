//! \file test_sweep.cpp
//! Residual assembly: uniform exactness, smooth-field convergence against an
//! analytic flux derivative, conservation telescoping, x/y symmetry of the
//! dimension-split sweeps, the axisymmetric source, and split parameters.

#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "srhd/characteristic.hpp"
#include "srhd/random_states.hpp"
#include "srhd/sweep.hpp"

using namespace srhd;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

template <int Dim>
double q_noise_scale(const ConsVec<Dim>& u) {
  double m2 = 0.0;
  for (int d = 0; d < Dim; ++d) m2 += u[1 + d] * u[1 + d];
  return std::abs(u[Dim + 1]) + std::abs(u[0]) + std::sqrt(m2);
}

FieldGrid<1> periodic_line(int n, int ng) {
  FieldGrid<1> g;
  g.n = {n};
  g.ng = ng;
  g.origin = {0.0};
  g.dx = {2.0 * M_PI / n};
  g.bc[0][0].kind = BoundaryKind::periodic;
  g.bc[0][1].kind = BoundaryKind::periodic;
  g.allocate();
  return g;
}

// smooth periodic primitive profile and its x-derivative
Prim<1> wave_prim(double x) {
  Prim<1> v;
  v.rho = 1.0 + 0.4 * std::sin(x);
  v.v = {0.3 + 0.2 * std::sin(2.0 * x)};
  v.p = 1.0 + 0.3 * std::cos(x);
  return v;
}

Vec<3> wave_prim_dx(double x) {
  return Vec<3>{0.4 * std::cos(x), 0.4 * std::cos(2.0 * x),
                -0.3 * std::sin(x)};
}

// l1 error of the residual against the analytic -dF/dx on a periodic grid
double residual_l1_error(int n, int order_r) {
  FieldGrid<1> g = periodic_line(n, order_r);
  const EosParams eos{};
  for (int i = 0; i < n; ++i)
    g.cells[g.flat(i)] =
        conserved_from_primitive(wave_prim(g.center(0, i)), eos);
  fill_ghosts(g, g.cells, 0);
  SweepConfig cfg;
  cfg.order_r = order_r;
  Field<1> L = residual_1d(g, cfg);
  double err = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = g.center(0, i);
    const Mat<3> jf = flux_primitive_jacobian<1>(wave_prim(x), eos, 0);
    const Vec<3> dfdx = matvec(jf, wave_prim_dx(x));
    const Vec<3> diff = L[g.flat(i)] + dfdx;
    for (int c = 0; c < 3; ++c) err += std::abs(diff[c]);
  }
  return err * g.dx[0];
}

}  // namespace

TEST_CASE("uniform states give an exactly zero residual") {
  const EosParams eos{};
  Prim<1> v;
  v.rho = 1.7;
  v.v = {0.6};
  v.p = 0.9;
  for (int r : {3, 5}) {
    FieldGrid<1> g = periodic_line(12, r);
    for (int i = 0; i < 12; ++i)
      g.cells[g.flat(i)] = conserved_from_primitive(v, eos);
    fill_ghosts(g, g.cells, 0);
    SweepConfig cfg;
    cfg.order_r = r;
    Field<1> L = residual_1d(g, cfg);
    for (int i = 0; i < 12; ++i)
      for (int c = 0; c < 3; ++c) CHECK(L[g.flat(i)][c] == 0.0);
  }

  FieldGrid<2> g2;
  g2.n = {8, 6};
  g2.ng = 3;
  g2.origin = {0.0, 0.0};
  g2.dx = {0.125, 1.0 / 6};
  for (int a = 0; a < 2; ++a)
    for (int s = 0; s < 2; ++s) g2.bc[a][s].kind = BoundaryKind::outflow;
  g2.allocate();
  Prim<2> w;
  w.rho = 0.8;
  w.v = {0.3, -0.5};
  w.p = 2.0;
  for (auto& c : g2.cells) c = conserved_from_primitive(w, eos);
  SweepConfig cfg;
  Field<2> L2 = residual_2d(g2, cfg);
  for (int j = 0; j < 6; ++j)
    for (int i = 0; i < 8; ++i)
      for (int c = 0; c < 4; ++c) CHECK(L2[g2.flat(i, j)][c] == 0.0);
}

TEST_CASE("smooth residual converges at the design order") {
  // L should approach -dF/dx at order 2r-1 (l1; the paper's accuracy norms
  // are l1-based as well)
  const double e5a = residual_l1_error(48, 3);
  const double e5b = residual_l1_error(96, 3);
  const double order5 = std::log2(e5a / e5b);
  INFO("r=3 errors ", e5a, " ", e5b, " order ", order5);
  CHECK(order5 > 4.4);
  CHECK(e5b < e5a);

  const double e9a = residual_l1_error(24, 5);
  const double e9b = residual_l1_error(48, 5);
  const double order9 = std::log2(e9a / e9b);
  INFO("r=5 errors ", e9a, " ", e9b, " order ", order9);
  CHECK(order9 > 7.5);
}

TEST_CASE("periodic interface fluxes wrap bitwise and telescope") {
  const int n = 32;
  FieldGrid<1> g = periodic_line(n, 3);
  const EosParams eos{};
  for (int i = 0; i < n; ++i)
    g.cells[g.flat(i)] =
        conserved_from_primitive(wave_prim(g.center(0, i)), eos);
  fill_ghosts(g, g.cells, 0);
  SweepConfig cfg;
  std::vector<Prim<1>> prims;
  scan_primitives(g, g.cells, cfg, prims);
  Field<1> fhat;
  sweep_axis<1>(g, g.cells, prims, 0, cfg, nullptr, 0.0, fhat);
  for (int c = 0; c < 3; ++c) CHECK(fhat[0][c] == fhat[n][c]);

  Field<1> L = residual_1d(g, cfg);
  Vec<3> total{};
  double scale = 0.0;
  for (int i = 0; i < n; ++i) {
    total += g.dx[0] * L[g.flat(i)];
    scale = std::max(scale, norm_inf(fhat[static_cast<std::size_t>(i)]));
  }
  for (int c = 0; c < 3; ++c)
    CHECK(std::abs(total[c]) <= 16.0 * n * kEps * scale);
}

TEST_CASE("non-periodic residual sums to the boundary flux difference") {
  const int n = 24;
  FieldGrid<1> g = periodic_line(n, 3);
  g.bc[0][0].kind = BoundaryKind::outflow;
  g.bc[0][1].kind = BoundaryKind::outflow;
  const EosParams eos{};
  for (int i = 0; i < n; ++i)
    g.cells[g.flat(i)] =
        conserved_from_primitive(wave_prim(g.center(0, i)), eos);
  fill_ghosts(g, g.cells, 0);
  SweepConfig cfg;
  std::vector<Prim<1>> prims;
  scan_primitives(g, g.cells, cfg, prims);
  Field<1> fhat;
  sweep_axis<1>(g, g.cells, prims, 0, cfg, nullptr, 0.0, fhat);
  Field<1> L = residual_1d(g, cfg);
  Vec<3> total{};
  for (int i = 0; i < n; ++i) total += g.dx[0] * L[g.flat(i)];
  const Vec<3> expect = fhat[0] - fhat[static_cast<std::size_t>(n)];
  double scale = 0.0;
  for (std::size_t k = 0; k < fhat.size(); ++k)
    scale = std::max(scale, norm_inf(fhat[k]));
  for (int c = 0; c < 3; ++c)
    CHECK(std::abs(total[c] - expect[c]) <= 64.0 * kEps * scale);
}

TEST_CASE("x-aligned 1D data embedded in 2D reproduces the 1D residual") {
  const int n = 20;
  const EosParams eos{};
  SweepConfig cfg;

  FieldGrid<1> g1 = periodic_line(n, 3);
  g1.bc[0][0].kind = BoundaryKind::outflow;
  g1.bc[0][1].kind = BoundaryKind::outflow;
  auto rp = [&](int i) {
    Prim<1> v;
    const bool left = i < n / 2;
    v.rho = left ? 10.0 : 1.0;
    v.v = {left ? 0.0 : 0.3};
    v.p = left ? 13.33 : 1e-6;
    return v;
  };
  for (int i = 0; i < n; ++i)
    g1.cells[g1.flat(i)] = conserved_from_primitive(rp(i), eos);
  fill_ghosts(g1, g1.cells, 0);
  Field<1> L1 = residual_1d(g1, cfg);

  FieldGrid<2> g2;
  g2.n = {n, 4};
  g2.ng = 3;
  g2.origin = {0.0, 0.0};
  g2.dx = {g1.dx[0], 0.25};
  g2.bc[0][0].kind = BoundaryKind::outflow;
  g2.bc[0][1].kind = BoundaryKind::outflow;
  g2.bc[1][0].kind = BoundaryKind::periodic;
  g2.bc[1][1].kind = BoundaryKind::periodic;
  g2.allocate();
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < n; ++i) {
      const Prim<1> v = rp(i);
      Prim<2> w;
      w.rho = v.rho;
      w.v = {v.v[0], 0.0};
      w.p = v.p;
      g2.cells[g2.flat(i, j)] = conserved_from_primitive(w, eos);
    }
  fill_ghosts(g2, g2.cells, 0);
  fill_ghosts(g2, g2.cells, 1);
  Field<2> L2 = residual_2d(g2, cfg);
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < n; ++i) {
      const Vec<4>& l2 = L2[g2.flat(i, j)];
      const Vec<3>& l1 = L1[g1.flat(i)];
      CHECK(l2[0] == l1[0]);
      CHECK(l2[1] == l1[1]);
      CHECK(l2[2] == 0.0);
      CHECK(l2[3] == l1[2]);
    }
}

TEST_CASE("transposed grids give bitwise-swapped residuals") {
  const int nx = 12, ny = 7;
  const EosParams eos{};
  SweepConfig cfg;
  StateSampler sampler(91);

  FieldGrid<2> a;
  a.n = {nx, ny};
  a.ng = 3;
  a.origin = {0.0, 0.0};
  a.dx = {1.0 / nx, 1.0 / ny};
  for (int ax = 0; ax < 2; ++ax)
    for (int s = 0; s < 2; ++s) a.bc[ax][s].kind = BoundaryKind::outflow;
  a.allocate();
  FieldGrid<2> b;
  b.n = {ny, nx};
  b.ng = 3;
  b.origin = {0.0, 0.0};
  b.dx = {a.dx[1], a.dx[0]};
  for (int ax = 0; ax < 2; ++ax)
    for (int s = 0; s < 2; ++s) b.bc[ax][s].kind = BoundaryKind::outflow;
  b.allocate();

  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const Prim<2> v = sampler.primitive<2>(4.0);
      const ConsVec<2> u = conserved_from_primitive(v, eos);
      a.cells[a.flat(i, j)] = u;
      b.cells[b.flat(j, i)] = ConsVec<2>{u[0], u[2], u[1], u[3]};
    }
  fill_ghosts(a, a.cells, 0);
  fill_ghosts(a, a.cells, 1);
  fill_ghosts(b, b.cells, 0);
  fill_ghosts(b, b.cells, 1);
  Field<2> La = residual_2d(a, cfg);
  Field<2> Lb = residual_2d(b, cfg);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const Vec<4>& la = La[a.flat(i, j)];
      const Vec<4>& lb = Lb[b.flat(j, i)];
      CHECK(la[0] == lb[0]);
      CHECK(la[1] == lb[2]);
      CHECK(la[2] == lb[1]);
      CHECK(la[3] == lb[3]);
    }
}

TEST_CASE("limited interfaces stay local") {
  // craft marginal data so some interfaces engage the limiter, then check
  // the limited flux differs from pure WENO exactly where theta < 1
  const int n = 24;
  FieldGrid<1> g = periodic_line(n, 3);
  g.bc[0][0].kind = BoundaryKind::outflow;
  g.bc[0][1].kind = BoundaryKind::outflow;
  const EosParams eos{};
  for (int i = 0; i < n; ++i) {
    Prim<1> v;
    const bool left = i < n / 2;
    v.rho = 1.0;
    v.v = {left ? 0.0 : 0.99};
    v.p = left ? 1.0 : 1e-12;
    g.cells[g.flat(i)] = conserved_from_primitive(v, eos);
  }
  fill_ghosts(g, g.cells, 0);
  SweepConfig cfg;
  std::vector<Prim<1>> prims;
  GridScan<1> scan = scan_primitives(g, g.cells, cfg, prims);

  Field<1> plain, limited;
  sweep_axis<1>(g, g.cells, prims, 0, cfg, nullptr, 0.0, plain);
  const double c_trial = 0.9 / scan.alpha_hat[0];
  SweepStats stats = sweep_axis<1>(g, g.cells, prims, 0, cfg, &g.cells,
                                   c_trial, limited);
  REQUIRE(stats.limited > 0);
  long changed = 0;
  for (std::size_t k = 0; k < plain.size(); ++k)
    if (norm_inf(limited[k] - plain[k]) != 0.0) ++changed;
  CHECK(changed == stats.limited);
  CHECK(stats.min_theta >= 0.0);
  CHECK(stats.min_theta < 1.0);
}

TEST_CASE("axisymmetric source matches the exact formula") {
  const EosParams eos{};
  Prim<2> v;
  v.rho = 2.0;
  v.v = {0.0, 0.4};
  v.p = 1.5;
  const ConsVec<2> u0 = conserved_from_primitive(v, eos);
  const ConsVec<2> s0 = axisymmetric_source(u0, 0.7, eos);
  for (int c = 0; c < 4; ++c) CHECK(s0[c] == 0.0);  // v1 = 0, m1 = 0

  v.v = {0.3, -0.2};
  const ConsVec<2> u = conserved_from_primitive(v, eos);
  const ConsVec<2> s1 = axisymmetric_source(u, 0.5, eos);
  const ConsVec<2> s2 = axisymmetric_source(u, 1.0, eos);
  for (int c = 0; c < 4; ++c)
    CHECK(s2[c] == doctest::Approx(0.5 * s1[c]).epsilon(1e-14));

  // the energy source -m1/r equals -(E+p) v1 / r for exact states
  CHECK(s1[3] ==
        doctest::Approx(-(u[3] + v.p) * v.v[0] / 0.5).epsilon(1e-12));

  CHECK_THROWS_AS(axisymmetric_source(u, 0.0, eos), DomainError);
  CHECK_THROWS_AS(axisymmetric_source(u, -1.0, eos), DomainError);
}

TEST_CASE("source steps inside the Lemma bound stay admissible") {
  const EosParams eos{};
  StateSampler sampler(57);
  int strong = 0;
  for (int t = 0; t < 2000; ++t) {
    const Prim<2> v = sampler.primitive<2>(50.0);
    const ConsVec<2> u = conserved_from_primitive(v, eos);
    const double r = sampler.log_uniform(1e-3, 1e3);
    const double q = q_value<2>(u);
    const double xi_max = q / (v.p + q);
    double dt;
    if (v.v[0] > 0.0) {
      const double frac = sampler.uniform(0.0, 1.0 - 1e-6);
      dt = frac * xi_max * r / v.v[0];
    } else {
      dt = sampler.log_uniform(1e-6, 1e3);
    }
    const ConsVec<2> s = axisymmetric_source(u, r, v.v[0]);
    const ConsVec<2> trial = u + dt * s;
    const double noise =
        32.0 * kEps * (q_noise_scale<2>(u) + dt * q_noise_scale<2>(s));
    CHECK(trial[0] > -noise);
    CHECK(q_value<2>(trial) > -noise);
    if (trial[0] > noise && q_value<2>(trial) > noise) ++strong;
  }
  CHECK(strong > 1500);  // most samples are strictly interior
}

TEST_CASE("source split parameters follow the qualifying-set minimum") {
  const EosParams eos{};
  FieldGrid<2> g;
  g.n = {4, 3};
  g.ng = 3;
  g.origin = {0.0, 0.0};
  g.dx = {0.1, 0.1};
  g.geometry = Geometry::axisymmetric;
  g.bc[0][0].kind = BoundaryKind::axis;
  g.allocate();

  // background with v1 <= 0 everywhere: empty qualifying set
  Prim<2> bg;
  bg.rho = 1.0;
  bg.v = {-0.1, 0.2};
  bg.p = 1.0;
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 4; ++i)
      g.cells[g.flat(i, j)] = conserved_from_primitive(bg, eos);
  SweepConfig cfg;
  std::vector<Prim<2>> prims;
  fill_ghosts(g, g.cells, 0);
  fill_ghosts(g, g.cells, 1);
  scan_primitives(g, g.cells, cfg, prims);
  SourceSplit sp = source_split_params(g, g.cells, prims, 2.0, 3.0, 0.45);
  CHECK(std::isinf(sp.a_s));
  CHECK(sp.beta == 0.0);

  // one qualifying cell with q = 1, p = 1, v1 = 0.5 at radius 2*dr = 0.2:
  // A_s = 0.2 * 1 / ((1+1) * 0.5) = 0.2
  Prim<2> marked;
  marked.v = {0.5, 0.0};
  marked.p = 1.0;
  double lo = 1e-3, hi = 50.0;
  for (int it = 0; it < 200; ++it) {
    marked.rho = 0.5 * (lo + hi);
    const double q = q_value<2>(conserved_from_primitive(marked, eos));
    (q < 1.0 ? lo : hi) = marked.rho;
  }
  marked.rho = 0.5 * (lo + hi);
  const ConsVec<2> mu = conserved_from_primitive(marked, eos);
  REQUIRE(q_value<2>(mu) == doctest::Approx(1.0).epsilon(1e-12));
  g.cells[g.flat(1, 1)] = mu;
  fill_ghosts(g, g.cells, 0);
  scan_primitives(g, g.cells, cfg, prims);
  sp = source_split_params(g, g.cells, prims, 2.0, 3.0, 0.45);
  CHECK(sp.a_s == doctest::Approx(0.2).epsilon(1e-10));
  CHECK(sp.beta == doctest::Approx(0.45 / (0.45 + 2.0 * 0.2 * 5.0)).epsilon(1e-12));

  // equalization of the two time-step bounds at the optimal beta
  StateSampler sampler(3);
  for (int t = 0; t < 200; ++t) {
    const double a_s = sampler.log_uniform(1e-4, 1e4);
    const double t1 = sampler.log_uniform(1e-3, 1e3);
    const double t2 = sampler.log_uniform(1e-3, 1e3);
    const double w = sampler.uniform(0.05, 0.95);
    const SourceSplit s = make_source_split(a_s, t1, t2, w);
    REQUIRE(s.beta > 0.0);
    REQUIRE(s.beta < 1.0);
    const double flux_bound = (1.0 - s.beta) * w / (2.0 * (t1 + t2));
    const double src_bound = s.beta * a_s;
    CHECK(flux_bound == doctest::Approx(src_bound).epsilon(1e-12));
  }
}

TEST_CASE("primitive scan reductions cover ghost bands") {
  const EosParams eos{};
  FieldGrid<2> g;
  g.n = {5, 4};
  g.ng = 3;
  g.origin = {0.0, 0.0};
  g.dx = {0.2, 0.25};
  g.bc[1][0].kind = BoundaryKind::inflow;
  Prim<2> beam;
  beam.rho = 0.01;
  beam.v = {0.0, 0.99};
  beam.p = 0.05;
  g.bc[1][0].inflow_state = conserved_from_primitive(beam, eos);
  g.bc[1][0].mask_lo = 0.0;
  g.bc[1][0].mask_hi = 10.0;
  g.allocate();
  Prim<2> slow;
  slow.rho = 1.0;
  slow.v = {0.05, 0.1};
  slow.p = 0.5;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 5; ++i)
      g.cells[g.flat(i, j)] = conserved_from_primitive(slow, eos);
  for (int a = 0; a < 2; ++a) fill_ghosts(g, g.cells, a);
  SweepConfig cfg;
  std::vector<Prim<2>> prims;
  GridScan<2> scan = scan_primitives(g, g.cells, cfg, prims);
  const double beam_radius = spectral_radius(beam, eos, 1);
  const double slow_radius = spectral_radius(slow, eos, 1);
  REQUIRE(beam_radius > slow_radius);
  CHECK(scan.alpha_hat[1] >=
        doctest::Approx(1.2 * beam_radius).epsilon(1e-12));
  CHECK(scan.min_D == doctest::Approx(conserved_from_primitive(slow, eos)[0])
                          .epsilon(1e-14));
}
