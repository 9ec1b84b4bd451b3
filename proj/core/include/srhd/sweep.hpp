//! \file sweep.hpp
//! Pencil-oriented residual assembly: primitive scans, interface fluxes with
//! optional stage-folded PCP limiting, the semi-discrete residual operators,
//! and the axisymmetric geometric source.
//!
//! Every pencil runs the same axis-0 kernel; y-sweeps gather states with the
//! momentum components swapped and unswap the resulting fluxes, which keeps
//! the two directions bit-identical and makes diagonal symmetry exact.

#ifndef SRHD_SWEEP_HPP_
#define SRHD_SWEEP_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <vector>

#include "srhd/flux.hpp"
#include "srhd/grid.hpp"
#include "srhd/parallel.hpp"
#include "srhd/state.hpp"

namespace srhd {

struct SweepConfig {
  int order_r = 3;  // reconstruction radius: 3 (5th order) or 5 (9th order)
  EosParams eos{};
  RecoveryOptions recovery{};
  double theta_amp = 1.2;  // numerical-viscosity amplification
  Floors floors{};
  bool limiter_enabled = true;
  bool characteristic = true;  // false: component-wise reconstruction
  int threads = 1;
};

// Flux limiting context for one sweep: trial states are
//   base[cell] -/+ c_trial * fhat
// on the plus/minus side of each interface. A null base disables limiting
// (pure WENO fluxes, used by the plain residual operators).
template <int Dim>
struct TrialContext {
  const ConsVec<Dim>* base = nullptr;  // pencil-aligned, like the state array
  double c_trial = 0.0;
};

struct SweepStats {
  long limited = 0;       // interfaces with theta < 1
  double min_theta = 1.0;

  void merge(const SweepStats& o) {
    limited += o.limited;
    min_theta = std::min(min_theta, o.min_theta);
  }
};

// Reductions gathered while recovering primitives over the padded grid.
template <int Dim>
struct GridScan {
  std::array<double, Dim> alpha_hat{};  // max amplified wave speed per axis
  double min_D = std::numeric_limits<double>::infinity();   // interior fluid
  double min_q = std::numeric_limits<double>::infinity();
  double a_s = std::numeric_limits<double>::infinity();     // axisym only
};

namespace detail {

inline ConsVec<2> swap_momenta(const ConsVec<2>& u) {
  return ConsVec<2>{u[0], u[2], u[1], u[3]};
}

inline Prim<2> swap_momenta(const Prim<2>& v) {
  Prim<2> s;
  s.rho = v.rho;
  s.v[0] = v.v[1];
  s.v[1] = v.v[0];
  s.p = v.p;
  return s;
}

// Interface fluxes for one pencil of n interior cells. All pointers are
// pencil-aligned: index k is valid for k in [-ng, n+ng). fhat[i+1] receives
// the flux at interface i+1/2 for i in [-1, n-1]; interfaces not adjoining an
// interior fluid cell are skipped (left as zero). `fluid` may be null when
// the pencil has no solid cells.
template <int Dim, int R>
void pencil_fluxes(int n, int ng, const ConsVec<Dim>* u, const Prim<Dim>* prim,
                   const ConsVec<Dim>* fcell, const std::uint8_t* fluid,
                   const SweepConfig& cfg, const TrialContext<Dim>& lim,
                   ConsVec<Dim>* fhat, SweepStats& stats) {
  constexpr int W = 2 * R - 1;
  const bool limiting = lim.base != nullptr && cfg.limiter_enabled;
  ConsVec<Dim> hp[W], hm[W];
  (void)ng;

  for (int i = -1; i < n; ++i) {
    const bool plus_live = i >= 0 && (fluid == nullptr || fluid[i]);
    const bool minus_live = i + 1 < n && (fluid == nullptr || fluid[i + 1]);
    if (!plus_live && !minus_live) {
      fhat[i + 1] = ConsVec<Dim>{};
      continue;
    }

    Prim<Dim> avg;
    avg.rho = 0.5 * (prim[i].rho + prim[i + 1].rho);
    avg.p = 0.5 * (prim[i].p + prim[i + 1].p);
    for (int d = 0; d < Dim; ++d)
      avg.v[d] = 0.5 * (prim[i].v[d] + prim[i + 1].v[d]);

    const double alpha = viscosity_alpha<Dim>(prim + (i - R + 1), 2 * R, avg,
                                              cfg.eos, 0, cfg.theta_amp);
    CharacteristicBasis<Dim> basis;
    if (cfg.characteristic) {
      basis = characteristic_basis(prim[i], prim[i + 1], cfg.eos, 0);
    } else {
      basis.identity_fallback = true;  // component-wise reconstruction
    }

    for (int s = 0; s < W; ++s) {
      const int kp = i - R + 1 + s;
      hp[s] = llf_split(u[kp], fcell[kp], alpha, +1);
      hm[s] = llf_split(u[kp + 1], fcell[kp + 1], alpha, -1);
    }
    const ConsVec<Dim> f_weno = weno_interface_flux<Dim, R>(hp, hm, basis, alpha);

    if (!limiting) {
      fhat[i + 1] = f_weno;
      continue;
    }

    const ConsVec<Dim> f_llf =
        llf_flux(u[i], u[i + 1], fcell[i], fcell[i + 1], alpha);
    const double c = lim.c_trial;
    const ConsVec<Dim> plus_llf = lim.base[i] - c * f_llf;
    const ConsVec<Dim> plus_weno = lim.base[i] - c * f_weno;
    const ConsVec<Dim> minus_llf = lim.base[i + 1] + c * f_llf;
    const ConsVec<Dim> minus_weno = lim.base[i + 1] + c * f_weno;
    const InterfaceFluxSet<Dim> set =
        pcp_limit<Dim>(f_weno, f_llf, plus_llf, plus_weno, minus_llf,
                       minus_weno, cfg.floors, alpha);
    fhat[i + 1] = set.f_pcp;
    const double theta = std::min(set.theta_D, set.theta_q);
    if (theta < 1.0) {
      ++stats.limited;
      stats.min_theta = std::min(stats.min_theta, theta);
    }
  }
}

template <int Dim>
void dispatch_pencil(int n, int ng, const ConsVec<Dim>* u,
                     const Prim<Dim>* prim, const ConsVec<Dim>* fcell,
                     const std::uint8_t* fluid, const SweepConfig& cfg,
                     const TrialContext<Dim>& lim, ConsVec<Dim>* fhat,
                     SweepStats& stats) {
  if (cfg.order_r == 3) {
    pencil_fluxes<Dim, 3>(n, ng, u, prim, fcell, fluid, cfg, lim, fhat, stats);
  } else if (cfg.order_r == 5) {
    pencil_fluxes<Dim, 5>(n, ng, u, prim, fcell, fluid, cfg, lim, fhat, stats);
  } else {
    throw ConfigError("sweep: reconstruction radius must be 3 or 5");
  }
}

// Run `body(p, scratch)` for each pencil index p, capturing exceptions and
// rethrowing the one from the lowest pencil to keep failures deterministic.
template <class Body>
void for_each_pencil(int count, int threads, const Body& body) {
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  parallel_for(0, count, threads, [&](int p) {
    try {
      body(p);
    } catch (...) {
      errors[static_cast<std::size_t>(p)] = std::current_exception();
    }
  });
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace detail

// Recover primitives over every cell a sweep may read: the full padded line
// in 1D; interior rows (with x ghosts) plus the y ghost bands of interior
// columns in 2D. Corner ghosts stay untouched. Returns the grid reductions.
template <int Dim>
GridScan<Dim> scan_primitives(const FieldGrid<Dim>& g, const Field<Dim>& field,
                              const SweepConfig& cfg,
                              std::vector<Prim<Dim>>& prims) {
  prims.resize(g.total());
  GridScan<Dim> scan;

  auto recover_at = [&](std::size_t f) {
    prims[f] = primitive_from_conserved<Dim>(field[f], cfg.eos, cfg.recovery);
  };
  auto radius_axis = [&](const Prim<Dim>& v, int axis) {
    return spectral_radius(v, cfg.eos, axis);
  };

  if constexpr (Dim == 1) {
    const int n = g.n[0], ng = g.ng;
    for (int k = -ng; k < n + ng; ++k) {
      const std::size_t f = g.flat(k);
      recover_at(f);
      scan.alpha_hat[0] = std::max(scan.alpha_hat[0], radius_axis(prims[f], 0));
      if (k >= 0 && k < n && !g.is_solid(f)) {
        scan.min_D = std::min(scan.min_D, field[f][0]);
        scan.min_q = std::min(scan.min_q, q_value<1>(field[f]));
      }
    }
    scan.alpha_hat[0] = std::max(cfg.theta_amp * scan.alpha_hat[0], alpha_floor);
  } else {
    const int nx = g.n[0], ny = g.n[1], ng = g.ng;
    const bool axisym = g.geometry == Geometry::axisymmetric;
    std::vector<GridScan<2>> partial(static_cast<std::size_t>(ny + 2 * ng));
    // interior rows: full pencils including x ghosts
    detail::for_each_pencil(ny, cfg.threads, [&](int j) {
      GridScan<2>& ps = partial[static_cast<std::size_t>(j + ng)];
      for (int i = -ng; i < nx + ng; ++i) {
        const std::size_t f = g.flat(i, j);
        recover_at(f);
        ps.alpha_hat[0] = std::max(ps.alpha_hat[0], radius_axis(prims[f], 0));
        ps.alpha_hat[1] = std::max(ps.alpha_hat[1], radius_axis(prims[f], 1));
        if (i >= 0 && i < nx && !g.is_solid(f)) {
          ps.min_D = std::min(ps.min_D, field[f][0]);
          ps.min_q = std::min(ps.min_q, q_value<2>(field[f]));
          if (axisym) {
            const double v1 = prims[f].v[0];
            if (v1 > 0.0) {
              const double q = q_value<2>(field[f]);
              const double p = prims[f].p;
              ps.a_s = std::min(ps.a_s, g.radius(i) * q / ((p + q) * v1));
            }
          }
        }
      }
    });
    // y ghost bands of interior columns (top and bottom strips)
    detail::for_each_pencil(2 * ng, cfg.threads, [&](int band) {
      const int j = band < ng ? -1 - band : ny + (band - ng);
      GridScan<2>& ps = partial[static_cast<std::size_t>(
          band < ng ? ng - 1 - band : ny + ng + (band - ng))];
      for (int i = 0; i < nx; ++i) {
        const std::size_t f = g.flat(i, j);
        recover_at(f);
        ps.alpha_hat[0] = std::max(ps.alpha_hat[0], radius_axis(prims[f], 0));
        ps.alpha_hat[1] = std::max(ps.alpha_hat[1], radius_axis(prims[f], 1));
      }
    });
    for (const GridScan<2>& ps : partial) {
      scan.alpha_hat[0] = std::max(scan.alpha_hat[0], ps.alpha_hat[0]);
      scan.alpha_hat[1] = std::max(scan.alpha_hat[1], ps.alpha_hat[1]);
      scan.min_D = std::min(scan.min_D, ps.min_D);
      scan.min_q = std::min(scan.min_q, ps.min_q);
      scan.a_s = std::min(scan.a_s, ps.a_s);
    }
    for (int a = 0; a < 2; ++a)
      scan.alpha_hat[a] = std::max(cfg.theta_amp * scan.alpha_hat[a], alpha_floor);
  }
  return scan;
}

// One directional sweep over the whole grid. Writes the interface flux array:
// axis 0 stores (n0+1) fluxes per interior row, axis 1 stores (n1+1) fluxes
// per interior column (column-major blocks: column i occupies the contiguous
// range [i*(n1+1), (i+1)*(n1+1))). Momentum components in `fhat` are already
// unswapped for axis 1.
template <int Dim>
SweepStats sweep_axis(const FieldGrid<Dim>& g, const Field<Dim>& field,
                      const std::vector<Prim<Dim>>& prims, int axis,
                      const SweepConfig& cfg, const Field<Dim>* trial_base,
                      double c_trial, Field<Dim>& fhat) {
  const int ng = g.ng;
  SweepStats total;

  if constexpr (Dim == 1) {
    const int n = g.n[0];
    fhat.assign(static_cast<std::size_t>(n + 1), ConsVec<1>{});
    std::vector<ConsVec<1>> fcell(g.total());
    for (int k = -ng; k < n + ng; ++k)
      fcell[g.flat(k)] = physical_flux(prims[g.flat(k)], field[g.flat(k)], 0);
    TrialContext<1> lim;
    lim.c_trial = c_trial;
    if (trial_base != nullptr) lim.base = trial_base->data() + ng;
    const std::uint8_t* fluid = nullptr;
    std::vector<std::uint8_t> fl;
    if (!g.solid.empty()) {
      fl.resize(g.total());
      for (std::size_t f = 0; f < fl.size(); ++f) fl[f] = g.solid[f] ? 0 : 1;
      fluid = fl.data() + ng;
    }
    detail::dispatch_pencil<1>(n, ng, field.data() + ng, prims.data() + ng,
                               fcell.data() + ng, fluid, cfg, lim, fhat.data(),
                               total);
    return total;
  } else {
    const int nx = g.n[0], ny = g.n[1];
    const int n = axis == 0 ? nx : ny;
    const int pencils = axis == 0 ? ny : nx;
    fhat.assign(static_cast<std::size_t>(pencils) *
                    static_cast<std::size_t>(n + 1),
                ConsVec<2>{});
    std::vector<SweepStats> stats(static_cast<std::size_t>(pencils));

    detail::for_each_pencil(pencils, cfg.threads, [&](int p) {
      const int len = n + 2 * ng;
      std::vector<ConsVec<2>> u(static_cast<std::size_t>(len));
      std::vector<Prim<2>> pv(static_cast<std::size_t>(len));
      std::vector<ConsVec<2>> fc(static_cast<std::size_t>(len));
      std::vector<ConsVec<2>> base;
      std::vector<std::uint8_t> fl;
      const bool masked = !g.solid.empty();
      if (masked) fl.resize(static_cast<std::size_t>(len));
      if (trial_base != nullptr) base.resize(static_cast<std::size_t>(len));

      for (int k = -ng; k < n + ng; ++k) {
        const std::size_t f = axis == 0 ? g.flat(k, p) : g.flat(p, k);
        const std::size_t s = static_cast<std::size_t>(k + ng);
        if (axis == 0) {
          u[s] = field[f];
          pv[s] = prims[f];
          if (trial_base != nullptr) base[s] = (*trial_base)[f];
        } else {
          u[s] = detail::swap_momenta(field[f]);
          pv[s] = detail::swap_momenta(prims[f]);
          if (trial_base != nullptr)
            base[s] = detail::swap_momenta((*trial_base)[f]);
        }
        fc[s] = physical_flux(pv[s], u[s], 0);
        if (masked) fl[s] = g.is_solid(f) ? 0 : 1;
      }

      TrialContext<2> lim;
      lim.c_trial = c_trial;
      if (trial_base != nullptr) lim.base = base.data() + ng;
      std::vector<ConsVec<2>> line(static_cast<std::size_t>(n + 1));
      detail::dispatch_pencil<2>(n, ng, u.data() + ng, pv.data() + ng,
                                 fc.data() + ng, masked ? fl.data() + ng : nullptr,
                                 cfg, lim, line.data(),
                                 stats[static_cast<std::size_t>(p)]);

      ConsVec<2>* out = fhat.data() + static_cast<std::size_t>(p) *
                                          static_cast<std::size_t>(n + 1);
      if (axis == 0) {
        for (int k = 0; k <= n; ++k) out[k] = line[static_cast<std::size_t>(k)];
      } else {
        for (int k = 0; k <= n; ++k)
          out[k] = detail::swap_momenta(line[static_cast<std::size_t>(k)]);
      }
    });
    for (const SweepStats& s : stats) total.merge(s);
    return total;
  }
}

// Semi-discrete residual L(U; j) = -(Fhat_{j+1/2} - Fhat_{j-1/2})/dx without
// limiting. Ghosts must be filled. Returns a padded-layout field with L on
// interior cells and zeros elsewhere.
inline Field<1> residual_1d(const FieldGrid<1>& g, const SweepConfig& cfg) {
  std::vector<Prim<1>> prims;
  scan_primitives(g, g.cells, cfg, prims);
  Field<1> fhat;
  sweep_axis<1>(g, g.cells, prims, 0, cfg, nullptr, 0.0, fhat);
  Field<1> L(g.total(), ConsVec<1>{});
  const double inv = 1.0 / g.dx[0];
  for (int i = 0; i < g.n[0]; ++i) {
    const std::size_t k = static_cast<std::size_t>(i);
    L[g.flat(i)] = inv * (fhat[k] - fhat[k + 1]);
  }
  return L;
}

// Dimension-by-dimension residual (planar; no geometric source).
inline Field<2> residual_2d(const FieldGrid<2>& g, const SweepConfig& cfg) {
  std::vector<Prim<2>> prims;
  scan_primitives(g, g.cells, cfg, prims);
  Field<2> fx, fy;
  sweep_axis<2>(g, g.cells, prims, 0, cfg, nullptr, 0.0, fx);
  sweep_axis<2>(g, g.cells, prims, 1, cfg, nullptr, 0.0, fy);
  Field<2> L(g.total(), ConsVec<2>{});
  const int nx = g.n[0], ny = g.n[1];
  const double ix = 1.0 / g.dx[0], iy = 1.0 / g.dx[1];
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      if (g.is_solid(g.flat(i, j))) continue;
      const std::size_t kx = static_cast<std::size_t>(j) *
                                 static_cast<std::size_t>(nx + 1) +
                             static_cast<std::size_t>(i);
      const std::size_t ky = static_cast<std::size_t>(i) *
                                 static_cast<std::size_t>(ny + 1) +
                             static_cast<std::size_t>(j);
      L[g.flat(i, j)] =
          ix * (fx[kx] - fx[kx + 1]) + iy * (fy[ky] - fy[ky + 1]);
    }
  return L;
}

// Geometric source of the axisymmetric equations,
//   S(U, r) = -(1/r) (D v1, m1 v1, m2 v1, m1),
// with v1 the radial velocity. The energy entry uses m1 = (E + p) v1 exactly.
inline ConsVec<2> axisymmetric_source(const ConsVec<2>& U, double r,
                                      double v1) {
  if (!(r > 0.0)) throw DomainError("axisymmetric source needs r > 0");
  ConsVec<2> s;
  s[0] = -U[0] * v1 / r;
  s[1] = -U[1] * v1 / r;
  s[2] = -U[2] * v1 / r;
  s[3] = -U[1] / r;
  return s;
}

inline ConsVec<2> axisymmetric_source(const ConsVec<2>& U, double r,
                                      const EosParams& eos,
                                      const RecoveryOptions& opt = {}) {
  if (!(r > 0.0)) throw DomainError("axisymmetric source needs r > 0");
  const Prim<2> v = primitive_from_conserved<2>(U, eos, opt);
  return axisymmetric_source(U, r, v.v[0]);
}

struct SourceSplit {
  double beta = 0.0;  // 0 encodes the pure-CFL limit (A_s = +inf)
  double a_s = std::numeric_limits<double>::infinity();
};

// Optimal convex-split parameter: beta equalizes (1-beta) w/(2(tau1+tau2))
// and beta*A_s. An empty qualifying set (A_s = +inf) degenerates to beta = 0,
// i.e. pure CFL stepping.
inline SourceSplit make_source_split(double a_s, double tau1, double tau2,
                                     double w_hat) {
  SourceSplit sp;
  sp.a_s = a_s;
  if (std::isinf(a_s)) return sp;
  sp.beta = w_hat / (w_hat + 2.0 * a_s * (tau1 + tau2));
  return sp;
}

// A_s over the interior cells with v1 > 0 (radius * q / ((p+q) v1)), then the
// optimal split. Primitives must match `field`.
inline SourceSplit source_split_params(const FieldGrid<2>& g,
                                       const Field<2>& field,
                                       const std::vector<Prim<2>>& prims,
                                       double tau1, double tau2,
                                       double w_hat) {
  double a_s = std::numeric_limits<double>::infinity();
  for (int j = 0; j < g.n[1]; ++j)
    for (int i = 0; i < g.n[0]; ++i) {
      const std::size_t f = g.flat(i, j);
      if (g.is_solid(f)) continue;
      const double v1 = prims[f].v[0];
      if (v1 <= 0.0) continue;
      const double q = q_value<2>(field[f]);
      a_s = std::min(a_s, g.radius(i) * q / ((prims[f].p + q) * v1));
    }
  return make_source_split(a_s, tau1, tau2, w_hat);
}

}  // namespace srhd

#endif  // SRHD_SWEEP_HPP_
