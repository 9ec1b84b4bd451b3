//! \file reference.hpp
//! Independent reference solutions and error measurement for the benchmark
//! suite: the smooth traveling-wave exact solution, the cold-wall shock
//! heating relations, discrete error norms with observed convergence orders,
//! a two-Riemann-problem composed reference for the blast-wave interaction
//! test, and a jump locator for measuring wave positions in numeric fields.

#ifndef SRHD_REFERENCE_HPP_
#define SRHD_REFERENCE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

#include "srhd/errors.hpp"
#include "srhd/riemann.hpp"
#include "srhd/state.hpp"

namespace srhd {

// Exact solution of the smooth accuracy test: a density sine wave advected
// with uniform velocity 0.99 at constant pressure 0.005 on [0, 2 pi),
//     V(x, t) = (1 + 0.99999 sin(x - 0.99 t), 0.99, 0.005).
inline Prim<1> smooth_exact(double x, double t) {
  Prim<1> V;
  V.rho = 1.0 + 0.99999 * std::sin(x - 0.99 * t);
  V.v = {0.99};
  V.p = 0.005;
  return V;
}

// Cold-wall shock heating relations. Cold gas of unit rest-mass density
// hitting a reflecting wall at speed v0 forms a receding shock with the gas
// at rest behind it:
//     W0     = (1 - v0^2)^(-1/2)            upstream Lorentz factor,
//     v_s    = (Gamma-1) W0 |v0| / (W0 + 1)  shock speed (away from wall),
//     sigma  = (Gamma+1)/(Gamma-1) + Gamma/(Gamma-1) (W0 - 1)
//              compression ratio, growing linearly with W0 (the
//              non-relativistic bound is (Gamma+1)/(Gamma-1)),
//     e_post = W0 - 1                        post-shock internal energy.
struct ShockHeatingReference {
  double W0 = 0.0;
  double shock_speed = 0.0;
  double sigma = 0.0;
  double e_post = 0.0;
};

inline ShockHeatingReference shock_heating_reference(const EosParams& eos,
                                                     double v0) {
  validate_eos(eos);
  if (!(v0 > 0.0 && v0 < 1.0))
    throw DomainError("shock_heating_reference: v0 must lie in (0, 1)");
  ShockHeatingReference ref;
  ref.W0 = 1.0 / std::sqrt((1.0 - v0) * (1.0 + v0));
  ref.shock_speed = (eos.gamma - 1.0) * ref.W0 * v0 / (ref.W0 + 1.0);
  ref.sigma = (eos.gamma + 1.0) / (eos.gamma - 1.0) +
              eos.gamma / (eos.gamma - 1.0) * (ref.W0 - 1.0);
  ref.e_post = ref.W0 - 1.0;
  return ref;
}

// Discrete error norms between a numeric and an exact cell sequence:
// l1 = dx * sum |err|, linf = max |err|.
struct ErrorNorms {
  double l1 = 0.0;
  double linf = 0.0;
};

inline ErrorNorms error_norms(const std::vector<double>& numeric,
                              const std::vector<double>& exact, double dx) {
  if (numeric.size() != exact.size()) {
    std::ostringstream os;
    os << "error_norms: size mismatch " << numeric.size() << " vs "
       << exact.size();
    throw DomainError(os.str());
  }
  ErrorNorms n;
  for (std::size_t i = 0; i < numeric.size(); ++i) {
    const double err = std::abs(numeric[i] - exact[i]);
    n.l1 += err;
    n.linf = std::max(n.linf, err);
  }
  n.l1 *= dx;
  return n;
}

// Observed order between two resolutions: -ln(e_coarse/e_fine)/ln(N_coarse/
// N_fine), positive when the error drops under refinement.
inline double observed_order(double error_coarse, double error_fine,
                             double n_coarse, double n_fine) {
  return -std::log(error_coarse / error_fine) / std::log(n_coarse / n_fine);
}

// Composed exact reference for the three-state blast-wave interaction: two
// independent Riemann problems released at x1 and x2. The composition is
// exact until the fastest wave of the left problem meets the fastest wave of
// the right one; after that collision event no signal can have escaped its
// light cone (all speeds < 1), so the composition stays exact outside
//     |x - x_collision| <= t - t_collision.
struct BlastReference {
  RiemannSolution rp1;  // jump released at x1
  RiemannSolution rp2;  // jump released at x2
  double x1 = 0.0;
  double x2 = 0.0;
  double t_collision = 0.0;
  double x_collision = 0.0;

  bool valid_at(double x, double t) const {
    if (t < t_collision) return true;
    return std::abs(x - x_collision) > t - t_collision;
  }

  // Exact state at (x, t) outside the collision light cone.
  std::optional<Prim<1>> sample(double x, double t) const {
    if (!(t > 0.0) || !valid_at(x, t)) return std::nullopt;
    const double xi1 = (x - x1) / t;
    const double xi2 = (x - x2) / t;
    if (xi1 < rp1.right_wave.hi) return rp1.sample(xi1);
    if (xi2 > rp2.left_wave.lo) return rp2.sample(xi2);
    return rp1.right;  // quiescent middle state (== rp2.left)
  }
};

inline BlastReference make_blast_reference(const Prim<1>& left,
                                           const Prim<1>& middle,
                                           const Prim<1>& right, double x1,
                                           double x2, const EosParams& eos) {
  BlastReference ref;
  ref.rp1 = exact_riemann_1d(left, middle, eos);
  ref.rp2 = exact_riemann_1d(middle, right, eos);
  ref.x1 = x1;
  ref.x2 = x2;
  const double s1 = ref.rp1.right_wave.hi;  // fastest rightward wave of RP1
  const double s2 = ref.rp2.left_wave.lo;   // fastest leftward wave of RP2
  if (s1 > s2) {
    ref.t_collision = (x2 - x1) / (s1 - s2);
    ref.x_collision = x1 + s1 * ref.t_collision;
  } else {
    ref.t_collision = std::numeric_limits<double>::infinity();
    ref.x_collision = std::numeric_limits<double>::quiet_NaN();
  }
  return ref;
}

// Interface position of the steepest signed jump of a cell sequence inside
// [window_lo, window_hi]: the x at which value[i+1] - value[i] is most
// positive (rising = true) or most negative. Used to locate contacts and
// shocks in numeric output for comparison against exact wave positions.
inline double locate_steepest_jump(const std::vector<double>& x,
                                   const std::vector<double>& value,
                                   double window_lo, double window_hi,
                                   bool rising) {
  if (x.size() != value.size() || x.size() < 2)
    throw DomainError("locate_steepest_jump: need matching sequences");
  double best = 0.0;
  double where = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double mid = 0.5 * (x[i] + x[i + 1]);
    if (mid < window_lo || mid > window_hi) continue;
    const double jump = rising ? value[i + 1] - value[i]
                               : value[i] - value[i + 1];
    if (jump > best) {
      best = jump;
      where = mid;
    }
  }
  if (!(best > 0.0))
    throw DomainError("locate_steepest_jump: no jump of the requested sign");
  return where;
}

}  // namespace srhd

#endif  // SRHD_REFERENCE_HPP_
