//! \file time_integration.hpp
//! SSP-RK3 stepping with stage-folded PCP limiting.
//!
//! Each stage computes U_new = a U^n + b (U_cur + dt L(U_cur) [+ dt S]) and
//! limits every interface flux against the stage-folded trial states
//!   base -/+ c f,   base = a U^n + b (1-beta) U_cur,   c = 2 b dt/(tau_hat dx),
//! so the stage output is a convex combination of admissible states. The
//! axisymmetric source enters through the convex split
//!   (1-beta)(U + dt/(1-beta) L) + beta (U + dt/beta S),
//! with beta re-optimized from A_s every stage; beta = 0 encodes the
//! source-free (or no-qualifying-cell) pure-CFL limit.
//!
//! Because a + b = 1 at every stage, the chain is carried in increment form
//!   delta_new = b (delta_cur + dt L + dt S),   U_stage = U^n + delta,
//! with stage states materialized only as flux/limiter inputs, and the final
//! delta folded into U^n once per step with a compensated (carried-low-bits)
//! add. Increments combine at their own small magnitude, so the per-stage
//! eps|U| storage rounding that otherwise random-walks across steps -- the
//! visible error floor of the 9th-order scheme -- never enters the state.

#ifndef SRHD_TIME_INTEGRATION_HPP_
#define SRHD_TIME_INTEGRATION_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "srhd/sweep.hpp"

namespace srhd {

enum class DtPolicy { cfl, fixed, accuracy_power };

struct StepControls {
  double w_hat = 0.0;             // 0 -> default by order: 0.45 (r=3), 0.4 (r=5)
  DtPolicy dt_policy = DtPolicy::cfl;
  double fixed_dt = 0.0;
  double accuracy_exponent = 0.0;  // 0 -> default: 5/3 (r=3), 3 (r=5)
  double safety = 1.0;             // extra margin on cfl steps
  bool check_floors = true;
};

inline double default_w_hat(int order_r) { return order_r == 5 ? 0.4 : 0.45; }

inline double default_accuracy_exponent(int order_r) {
  return order_r == 5 ? 3.0 : 5.0 / 3.0;
}

namespace detail {

// SSP-RK3 stage combination U_new = A[s] U^n + B[s] (U_cur + dt L(U_cur)).
inline constexpr double kRkA[3] = {0.0, 0.75, 1.0 / 3.0};
inline constexpr double kRkB[3] = {1.0, 0.25, 2.0 / 3.0};

inline double effective_w_hat(const StepControls& c, int order_r) {
  const double w = c.w_hat > 0.0 ? c.w_hat : default_w_hat(order_r);
  if (!(w > 0.0 && w < 1.0))
    throw ConfigError("time step: w_hat must lie in (0,1)");
  return w;
}

inline double effective_exponent(const StepControls& c, int order_r) {
  return c.accuracy_exponent > 0.0 ? c.accuracy_exponent
                                   : default_accuracy_exponent(order_r);
}

}  // namespace detail

// Time step for a 1D grid of spacing dx given the max amplified wave speed.
inline double compute_dt_1d(double dx, double alpha_max,
                            const StepControls& controls, int order_r) {
  switch (controls.dt_policy) {
    case DtPolicy::fixed:
      return controls.fixed_dt;
    case DtPolicy::accuracy_power:
      return std::pow(0.5 * dx, detail::effective_exponent(controls, order_r));
    case DtPolicy::cfl:
      break;
  }
  if (!(alpha_max > 0.0))
    throw DomainError("time step: alpha_max must be positive");
  return detail::effective_w_hat(controls, order_r) * dx / (2.0 * alpha_max);
}

// Time step for a 2D grid from tau_i = alpha_hat_i / dx_i.
inline double compute_dt_2d(double tau1, double tau2,
                            const StepControls& controls, int order_r) {
  if (controls.dt_policy == DtPolicy::fixed) return controls.fixed_dt;
  if (!(tau1 >= 0.0) || !(tau2 >= 0.0) || tau1 + tau2 <= 0.0)
    throw ConfigError("time step: degenerate grid (tau1 + tau2 = 0)");
  return detail::effective_w_hat(controls, order_r) / (2.0 * (tau1 + tau2));
}

struct StepResult {
  double dt = 0.0;
  double beta = 0.0;   // axisymmetric split at the first stage
  double a_s = std::numeric_limits<double>::infinity();
  double min_D = std::numeric_limits<double>::infinity();  // over stage inputs
  double min_q = std::numeric_limits<double>::infinity();
  SweepStats stats;    // limiter activity over all stages
};

// Owns the grid state and the per-step scratch fields.
template <int Dim>
class TimeIntegrator {
 public:
  TimeIntegrator(FieldGrid<Dim> grid, SweepConfig sweep, StepControls controls)
      : g_(std::move(grid)), cfg_(std::move(sweep)), controls_(controls) {
    g_.validate();
    if (g_.ng < cfg_.order_r)
      throw ConfigError("grid ghost width smaller than reconstruction radius");
    const double w = detail::effective_w_hat(controls_, cfg_.order_r);
    if (w * cfg_.theta_amp >= 1.0)
      throw ConfigError("w_hat * theta_amp must stay below 1");
    const std::size_t t = g_.total();
    ucur_.resize(t);
    unext_.resize(t);
    base_.resize(t);
    dcur_.resize(t);
    dnext_.resize(t);
    comp_.resize(t);
  }

  FieldGrid<Dim>& grid() { return g_; }
  const FieldGrid<Dim>& grid() const { return g_; }
  const SweepConfig& sweep_config() const { return cfg_; }
  StepControls& controls() { return controls_; }

  // One SSP-RK3 step, clipped to dt_cap (pass +inf for no cap). Returns the
  // step actually taken.
  StepResult step(double dt_cap) {
    StepResult result;
    const bool axisym = g_.geometry == Geometry::axisymmetric;
    const double w = detail::effective_w_hat(controls_, cfg_.order_r);

    Field<Dim>& un = g_.cells;
    double dt = 0.0;
    std::fill(dcur_.begin(), dcur_.end(), ConsVec<Dim>{});

    for (int stage = 0; stage < 3; ++stage) {
      Field<Dim>& field = stage == 0 ? un : ucur_;

      for (int a = 0; a < Dim; ++a) fill_ghosts(g_, field, a);
      fill_solid(g_, field, 0);
      GridScan<Dim> scan = scan_primitives(g_, field, cfg_, prims_);

      double tau[2] = {0.0, 0.0};
      for (int a = 0; a < Dim; ++a) tau[a] = scan.alpha_hat[a] / g_.dx[a];

      SourceSplit split;
      if constexpr (Dim == 2) {
        if (axisym) split = make_source_split(scan.a_s, tau[0], tau[1], w);
      }

      if (stage == 0) {
        dt = first_stage_dt(scan, tau, split, w);
        dt = std::min(dt, dt_cap);
        if (!(dt > 0.0))
          throw ConfigError("time step collapsed to zero");
        result.dt = dt;
        result.beta = split.beta;
        result.a_s = scan.a_s;
      }
      result.min_D = std::min(result.min_D, scan.min_D);
      result.min_q = std::min(result.min_q, scan.min_q);

      const double a = detail::kRkA[stage], b = detail::kRkB[stage];
      const double one_minus_beta = 1.0 - split.beta;
      for (std::size_t f = 0; f < base_.size(); ++f)
        base_[f] = a * un[f] + (b * one_minus_beta) * field[f];

      double c_trial[2] = {0.0, 0.0};
      if constexpr (Dim == 1) {
        c_trial[0] = 2.0 * b * dt / g_.dx[0];
      } else {
        const double tsum = tau[0] + tau[1];
        for (int ax = 0; ax < 2; ++ax) {
          const double tau_hat = tau[ax] / tsum;
          c_trial[ax] = 2.0 * b * dt / (tau_hat * g_.dx[ax]);
        }
      }

      sweep_and_combine(stage, field, a, b, dt, split, c_trial, result.stats);
      if (controls_.check_floors) assert_floors(stage);
      unext_.swap(ucur_);
      dnext_.swap(dcur_);
    }

    fold_step(un);
    return result;
  }

 private:
  // Compensated fold of the step increment into the state. The add rounds
  // at eps|U| per component per step, and those losses would random-walk
  // across steps and -- amplified ~W^3 through the recovery into the
  // velocity -- surface as the error floor of the high-order schemes long
  // before truncation error reaches machine precision. Carrying the lost
  // low bits into the next step's increment bounds the total storage error
  // at O(eps|U|) independent of the step count. Per component, so a
  // floor-scale D is never perturbed at E's magnitude; a zero increment
  // leaves the state bitwise untouched (uniform states stay exact fixed
  // points).
  void fold_step(Field<Dim>& un) {
    const auto fold = [&](std::size_t f) {
      if (g_.is_solid(f)) {
        un[f] = ucur_[f];  // mirror fill; rewritten before any read
        return;
      }
      for (int c = 0; c < Dim + 2; ++c) {
        const double y = dcur_[f][c] + comp_[f][c];
        const double t = un[f][c] + y;
        comp_[f][c] = y - (t - un[f][c]);
        un[f][c] = t;
      }
    };
    if constexpr (Dim == 1) {
      for (int i = 0; i < g_.n[0]; ++i) fold(g_.flat(i));
    } else {
      for (int j = 0; j < g_.n[1]; ++j)
        for (int i = 0; i < g_.n[0]; ++i) fold(g_.flat(i, j));
    }
  }

  double first_stage_dt(const GridScan<Dim>& scan, const double* tau,
                        const SourceSplit& split, double w) {
    double dt;
    if constexpr (Dim == 1) {
      dt = compute_dt_1d(g_.dx[0], scan.alpha_hat[0], controls_, cfg_.order_r);
    } else {
      if (controls_.dt_policy == DtPolicy::accuracy_power) {
        dt = std::pow(0.5 * std::min(g_.dx[0], g_.dx[1]),
                      detail::effective_exponent(controls_, cfg_.order_r));
      } else if (controls_.dt_policy == DtPolicy::fixed) {
        dt = controls_.fixed_dt;
      } else if (g_.geometry == Geometry::axisymmetric && split.beta > 0.0) {
        const double flux_bound =
            (1.0 - split.beta) * w / (2.0 * (tau[0] + tau[1]));
        dt = std::min(flux_bound, split.beta * split.a_s);
      } else {
        dt = compute_dt_2d(tau[0], tau[1], controls_, cfg_.order_r);
      }
    }
    if (controls_.dt_policy == DtPolicy::cfl) dt *= controls_.safety;
    return dt;
  }

  void sweep_and_combine(int stage, Field<Dim>& field, double a, double b,
                         double dt, const SourceSplit& split,
                         const double* c_trial, SweepStats& stats) {
    const Field<Dim>* un = &g_.cells;
    stats.merge(sweep_axis<Dim>(g_, field, prims_, 0, cfg_, &base_, c_trial[0],
                                fx_));

    if constexpr (Dim == 1) {
      const int n = g_.n[0];
      const double bdx = b * dt / g_.dx[0];
      for (int i = 0; i < n; ++i) {
        const std::size_t f = g_.flat(i);
        // increment form: zero flux differences leave uniform states bitwise
        // fixed, and the chain never rounds at full state magnitude
        dnext_[f] = b * dcur_[f] + bdx * (fx_[static_cast<std::size_t>(i)] -
                                          fx_[static_cast<std::size_t>(i) + 1]);
        unext_[f] = (*un)[f] + dnext_[f];
      }
    } else {
      // refresh solid mirror values (and their primitives/trial bases) for
      // the y direction before the second sweep
      if (!g_.solid.empty()) {
        fill_solid(g_, field, 1);
        refresh_solid(field, a, b, 1.0 - split.beta);
      }
      stats.merge(sweep_axis<Dim>(g_, field, prims_, 1, cfg_, &base_,
                                  c_trial[1], fy_));

      const int nx = g_.n[0], ny = g_.n[1];
      const double bx = b * dt / g_.dx[0];
      const double by = b * dt / g_.dx[1];
      const bool axisym = g_.geometry == Geometry::axisymmetric;
      std::vector<std::exception_ptr> errors(static_cast<std::size_t>(ny));
      parallel_for(0, ny, cfg_.threads, [&](int j) {
        try {
          for (int i = 0; i < nx; ++i) {
            const std::size_t f = g_.flat(i, j);
            if (g_.is_solid(f)) {
              unext_[f] = field[f];  // carried; refilled before any read
              dnext_[f] = dcur_[f];
              continue;
            }
            const std::size_t kx = static_cast<std::size_t>(j) *
                                       static_cast<std::size_t>(nx + 1) +
                                   static_cast<std::size_t>(i);
            const std::size_t ky = static_cast<std::size_t>(i) *
                                       static_cast<std::size_t>(ny + 1) +
                                   static_cast<std::size_t>(j);
            ConsVec<Dim> d = b * dcur_[f] + bx * (fx_[kx] - fx_[kx + 1]) +
                             by * (fy_[ky] - fy_[ky + 1]);
            if (axisym) {
              const ConsVec<Dim> s =
                  axisymmetric_source(field[f], g_.radius(i), prims_[f].v[0]);
              if (split.beta > 0.0) check_source_trial(field[f], s, dt, split.beta, stage, i, j);
              d += (b * dt) * s;
            }
            dnext_[f] = d;
            unext_[f] = (*un)[f] + d;
          }
        } catch (...) {
          errors[static_cast<std::size_t>(j)] = std::current_exception();
        }
      });
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    }
  }

  void check_source_trial(const ConsVec<2>& u, const ConsVec<2>& s, double dt,
                          double beta, int stage, int i, int j) const {
    const ConsVec<2> trial = u + (dt / beta) * s;
    if (!(trial[0] > 0.0) || !(q_value<2>(trial) > 0.0)) {
      std::ostringstream os;
      os << "stage " << stage + 1 << ": axisymmetric source trial left the "
         << "admissible set at cell (" << i << "," << j
         << "): time step too large";
      throw CflError(os.str());
    }
  }

  void refresh_solid(const Field<Dim>& field, double a, double b,
                     double one_minus_beta) {
    if constexpr (Dim == 2) {
      const Field<Dim>& un = g_.cells;
      for (int j = 0; j < g_.n[1]; ++j)
        for (int i = 0; i < g_.n[0]; ++i) {
          const std::size_t f = g_.flat(i, j);
          if (!g_.is_solid(f)) continue;
          prims_[f] = primitive_from_conserved<2>(field[f], cfg_.eos,
                                                  cfg_.recovery);
          base_[f] = a * un[f] + (b * one_minus_beta) * field[f];
        }
    }
  }

  void assert_floors(int stage) const {
    constexpr double eps = std::numeric_limits<double>::epsilon();
    const auto bad = [&](const ConsVec<Dim>& u) {
      double m2 = 0.0;
      for (int d = 0; d < Dim; ++d) m2 += u[1 + d] * u[1 + d];
      const double slack =
          64.0 * eps * (std::abs(u[Dim + 1]) + u[0] + std::sqrt(m2));
      return u[0] < cfg_.floors.eps_D - slack ||
             q_value<Dim>(u) < cfg_.floors.eps_q - slack;
    };
    auto fail = [&](int i, int j) {
      std::ostringstream os;
      os << "stage " << stage + 1 << ": admissibility floors violated at cell ("
         << i;
      if (Dim == 2) os << "," << j;
      os << ")";
      throw CflError(os.str());
    };
    if constexpr (Dim == 1) {
      for (int i = 0; i < g_.n[0]; ++i)
        if (!g_.is_solid(g_.flat(i)) && bad(unext_[g_.flat(i)])) fail(i, 0);
    } else {
      for (int j = 0; j < g_.n[1]; ++j)
        for (int i = 0; i < g_.n[0]; ++i) {
          const std::size_t f = g_.flat(i, j);
          if (!g_.is_solid(f) && bad(unext_[f])) fail(i, j);
        }
    }
  }

  FieldGrid<Dim> g_;
  SweepConfig cfg_;
  StepControls controls_;
  Field<Dim> ucur_, unext_, base_;
  Field<Dim> dcur_, dnext_;  // stage increments relative to U^n
  Field<Dim> comp_;          // low bits carried between steps by fold_step
  Field<Dim> fx_, fy_;
  std::vector<Prim<Dim>> prims_;
};

}  // namespace srhd

#endif  // SRHD_TIME_INTEGRATION_HPP_
