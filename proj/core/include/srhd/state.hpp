//! \file state.hpp
//! Relativistic state algebra for the special RHD system with an ideal-gas
//! (gamma-law) equation of state. Units set c = 1.
//!
//! Conserved vectors are stored flat as (D, m_1..m_Dim, E) where D = rho*W is
//! the lab-frame rest-mass density, m the momentum density and E the total
//! energy density. The admissible set is
//!     G = { U : D > 0  and  q(U) = E - sqrt(D^2 + |m|^2) > 0 },
//! which is convex, and q is concave and sqrt(2)-Lipschitz. Pressure as a
//! function of U is *not* concave, which is why the limiter works with D and q
//! rather than with rho and p.

#ifndef SRHD_STATE_HPP_
#define SRHD_STATE_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "srhd/errors.hpp"
#include "srhd/vec.hpp"

namespace srhd {

// Conserved state / flux vector layout: [0] = D, [1..Dim] = m, [Dim+1] = E.
template <int Dim>
using ConsVec = Vec<Dim + 2>;

template <int Dim>
struct Prim {
  double rho = 0.0;  // rest-mass density
  Vec<Dim> v;        // coordinate velocity, |v| < 1
  double p = 0.0;    // thermal pressure
};

struct EosParams {
  double gamma = 5.0 / 3.0;  // adiabatic index, must lie in (1, 2]
};

struct RecoveryOptions {
  double rel_tol = 1e-14;
  int max_iter = 200;
};

// Velocities this close to light speed are rejected rather than clipped.
inline constexpr double velocity_limit = 1.0 - 1e-15;

inline void validate_eos(const EosParams& eos) {
  if (!(eos.gamma > 1.0 && eos.gamma <= 2.0)) {
    std::ostringstream os;
    os << "gamma = " << eos.gamma << " outside (1, 2]";
    throw DomainError(os.str());
  }
}

template <int Dim>
inline double lorentz_factor(const Vec<Dim>& v) {
  const double v2 = dot(v, v);
  if (!(v2 < velocity_limit * velocity_limit)) {
    std::ostringstream os;
    os << "|v| = " << std::sqrt(v2) << " at or beyond the velocity limit";
    throw DomainError(os.str());
  }
  return 1.0 / std::sqrt(1.0 - v2);
}

inline double specific_enthalpy(double rho, double p, const EosParams& eos) {
  return 1.0 + eos.gamma / (eos.gamma - 1.0) * p / rho;
}

// c_s^2 = gamma p / (rho h); always < gamma - 1 for the gamma-law gas.
inline double sound_speed(double rho, double p, const EosParams& eos) {
  return std::sqrt(eos.gamma * p / (rho * specific_enthalpy(rho, p, eos)));
}

template <int Dim>
inline double q_value(const ConsVec<Dim>& U) {
  double m2 = 0.0;
  for (int i = 0; i < Dim; ++i) m2 += U[1 + i] * U[1 + i];
  return U[Dim + 1] - std::sqrt(U[0] * U[0] + m2);
}

template <int Dim>
inline bool is_admissible(const ConsVec<Dim>& U) {
  return U[0] > 0.0 && q_value<Dim>(U) > 0.0;
}

template <int Dim>
inline void validate_primitive(const Prim<Dim>& V, const EosParams& eos) {
  validate_eos(eos);
  if (!(V.rho > 0.0) || !(V.p > 0.0)) {
    std::ostringstream os;
    os << "non-positive rho = " << V.rho << " or p = " << V.p;
    throw DomainError(os.str());
  }
  (void)lorentz_factor<Dim>(V.v);  // rejects |v| >= velocity_limit
}

template <int Dim>
inline ConsVec<Dim> conserved_from_primitive(const Prim<Dim>& V,
                                             const EosParams& eos) {
  validate_primitive(V, eos);
  const double W = lorentz_factor<Dim>(V.v);
  const double rhohW2 = (V.rho + eos.gamma / (eos.gamma - 1.0) * V.p) * W * W;
  ConsVec<Dim> U;
  U[0] = V.rho * W;
  for (int i = 0; i < Dim; ++i) U[1 + i] = rhohW2 * V.v[i];
  U[Dim + 1] = rhohW2 - V.p;
  return U;
}

namespace detail {

// Pressure equation for primitive recovery. With m = |m| the root of
//   Phi(p) = m^2/(E+p) + D*sqrt(1 - m^2/(E+p)^2) + p/(gamma-1) - E
// is the physical pressure; Phi is strictly increasing with Phi(0) < 0 for
// admissible input. sqrt((E+p)^2 - m^2) is evaluated in factored form to
// limit cancellation at large Lorentz factors.
inline double recovery_phi(double p, double D, double m, double E,
                           double gamma) {
  const double ep = E + p;
  const double s = std::sqrt((ep - m) * (ep + m));
  return m * m / ep + D * s / ep + p / (gamma - 1.0) - E;
}

inline double recovery_dphi(double p, double D, double m, double E,
                            double gamma) {
  const double ep = E + p;
  const double s = std::sqrt((ep - m) * (ep + m));
  const double x = (m / ep) * (m / ep);
  return 1.0 / (gamma - 1.0) - x * (1.0 - D / s);
}

}  // namespace detail

// Invert the conserved map. Solves Phi(p) = 0 with a bisection-safeguarded
// Newton iteration on the bracket [0, p_hi]; p_hi = (gamma-1)(E-D) is always
// an upper bound (it is exact for v = 0).
template <int Dim>
inline Prim<Dim> primitive_from_conserved(
    const ConsVec<Dim>& U, const EosParams& eos,
    const RecoveryOptions& opts = RecoveryOptions{}) {
  validate_eos(eos);
  const double D = U[0];
  const double E = U[Dim + 1];
  double m2 = 0.0;
  for (int i = 0; i < Dim; ++i) m2 += U[1 + i] * U[1 + i];
  const double m = std::sqrt(m2);
  if (!is_admissible<Dim>(U)) {
    std::ostringstream os;
    os << "non-admissible conserved state: D = " << D
       << ", q = " << q_value<Dim>(U);
    throw DomainError(os.str());
  }

  const double gm1 = eos.gamma - 1.0;
  double hi = std::max(std::numeric_limits<double>::min(), gm1 * (E - D));
  // Phi(hi) >= 0 holds analytically; keep the doubling loop as a rounding
  // safeguard.
  int guard = 0;
  while (detail::recovery_phi(hi, D, m, E, eos.gamma) < 0.0 && guard++ < 64) {
    hi *= 2.0;
  }
  double lo = 0.0;
  double p = hi;
  double phi = detail::recovery_phi(p, D, m, E, eos.gamma);
  // Newton's own rounding noise floor: |Phi| cannot be resolved below this.
  const double noise =
      4.0 * std::numeric_limits<double>::epsilon() *
      (std::fabs(E) + std::fabs(p) / gm1 + m + D);

  bool converged = false;
  for (int it = 0; it < opts.max_iter; ++it) {
    if (std::fabs(phi) <= noise) {
      converged = true;
      break;
    }
    if (phi > 0.0) {
      hi = p;
    } else {
      lo = p;
    }
    const double dphi = detail::recovery_dphi(p, D, m, E, eos.gamma);
    double pn = p - phi / dphi;
    if (!(pn > lo && pn < hi)) pn = 0.5 * (lo + hi);  // bisect out of bracket
    const double dp = std::fabs(pn - p);
    p = pn;
    phi = detail::recovery_phi(p, D, m, E, eos.gamma);
    if (dp <= opts.rel_tol * std::fabs(p)) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    std::ostringstream os;
    os << "primitive recovery stalled: residual " << phi << " at p = " << p
       << " after " << opts.max_iter << " iterations";
    throw ConvergenceError(os.str());
  }

  Prim<Dim> V;
  const double ep = E + p;
  const double s = std::sqrt((ep - m) * (ep + m));  // = (E+p)/W
  for (int i = 0; i < Dim; ++i) V.v[i] = U[1 + i] / ep;
  V.rho = D * s / ep;
  V.p = p;
  return V;
}

// Characteristic speeds of the flux Jacobian along one axis. The full
// spectrum is {lambda_minus, v_axis (multiplicity Dim), lambda_plus} and the
// spectral radius is strictly below 1 (light speed).
struct WaveSpeeds {
  double lambda_minus = 0.0;
  double lambda_mid = 0.0;
  double lambda_plus = 0.0;
  double radius = 0.0;
};

template <int Dim>
inline WaveSpeeds wave_speeds(const Prim<Dim>& V, const EosParams& eos,
                              int axis) {
  const double v2 = dot(V.v, V.v);
  const double vi = V.v[axis];
  const double cs = sound_speed(V.rho, V.p, eos);
  const double cs2 = cs * cs;
  const double winv = std::sqrt(std::max(1.0 - v2, 0.0));
  const double disc = std::sqrt(std::max(1.0 - vi * vi - (v2 - vi * vi) * cs2, 0.0));
  const double denom = 1.0 - v2 * cs2;
  WaveSpeeds ws;
  ws.lambda_minus = (vi * (1.0 - cs2) - cs * winv * disc) / denom;
  ws.lambda_mid = vi;
  ws.lambda_plus = (vi * (1.0 - cs2) + cs * winv * disc) / denom;
  ws.radius = (std::fabs(vi) * (1.0 - cs2) + cs * winv * disc) / denom;
  return ws;
}

template <int Dim>
inline double spectral_radius(const Prim<Dim>& V, const EosParams& eos,
                              int axis) {
  return wave_speeds(V, eos, axis).radius;
}

// Physical flux along one axis, evaluated from a consistent (V, U) pair.
template <int Dim>
inline ConsVec<Dim> physical_flux(const Prim<Dim>& V, const ConsVec<Dim>& U,
                                  int axis) {
  const double vi = V.v[axis];
  ConsVec<Dim> F;
  F[0] = U[0] * vi;
  for (int j = 0; j < Dim; ++j) F[1 + j] = U[1 + j] * vi;
  F[1 + axis] += V.p;
  F[Dim + 1] = U[1 + axis];
  return F;
}

template <int Dim>
inline ConsVec<Dim> physical_flux(const Prim<Dim>& V, const EosParams& eos,
                                  int axis) {
  return physical_flux<Dim>(V, conserved_from_primitive(V, eos), axis);
}

// Apply an orthogonal transform Q (Dim x Dim, row major) to the vector part.
template <int Dim>
inline ConsVec<Dim> rotate_state(const ConsVec<Dim>& U,
                                 const double (&Q)[Dim][Dim]) {
  ConsVec<Dim> R = U;
  for (int i = 0; i < Dim; ++i) {
    double s = 0.0;
    for (int j = 0; j < Dim; ++j) s += Q[i][j] * U[1 + j];
    R[1 + i] = s;
  }
  return R;
}

}  // namespace srhd

#endif  // SRHD_STATE_HPP_
