//! \file flux.hpp
//! Interface numerical fluxes: global-coefficient-free local Lax-Friedrichs
//! building blocks, the characteristic WENO flux, and the two-step flux
//! limiter that keeps trial states inside the admissible set.
//!
//! Notation at interface j+1/2 (axis suppressed): the split values
//!   H^{+-}_k = (U_k +- F(U_k)/alpha) / 2
//! are reconstructed as if they were cell averages; the plus window spans
//! cells j-r+1..j+r-1 (centered at j) and the minus window j-r+2..j+r
//! (centered at j+1). The WENO flux is alpha (H^+_L - H^-_R).

#ifndef SRHD_FLUX_HPP_
#define SRHD_FLUX_HPP_

#include <algorithm>
#include <sstream>

#include "srhd/characteristic.hpp"
#include "srhd/state.hpp"
#include "srhd/weno.hpp"

namespace srhd {

struct Floors {
  double eps_D = 1e-13;
  double eps_q = 1e-13;
};

// Lower bound keeps alpha usable as a divisor in the flux splitting even for
// pathological (numerically static, cold) stencils.
inline constexpr double alpha_floor = 1e-12;

template <int Dim>
struct InterfaceFluxSet {
  ConsVec<Dim> f_weno;
  ConsVec<Dim> f_llf;
  ConsVec<Dim> f_pcp;
  double theta_D = 1.0;
  double theta_q = 1.0;
  double alpha = 0.0;
};

// Interface viscosity: amp times the largest spectral radius over the 2r
// stencil states plus the averaged interface state standing in for the Roe
// matrix radius.
template <int Dim>
inline double viscosity_alpha(const Prim<Dim>* stencil, int count,
                              const Prim<Dim>& avg, const EosParams& eos,
                              int axis, double amp) {
  double radius = spectral_radius(avg, eos, axis);
  for (int k = 0; k < count; ++k)
    radius = std::max(radius, spectral_radius(stencil[k], eos, axis));
  return std::max(amp * radius, alpha_floor);
}

template <int N>
inline Vec<N> llf_flux(const Vec<N>& UL, const Vec<N>& UR, const Vec<N>& FL,
                       const Vec<N>& FR, double alpha) {
  return 0.5 * (FL + FR - alpha * (UR - UL));
}

// H^{+-} = (U +- F/alpha)/2; both lie in the admissible set whenever alpha
// is at least the local spectral radius.
template <int N>
inline Vec<N> llf_split(const Vec<N>& U, const Vec<N>& F, double alpha,
                        int sign) {
  Vec<N> H;
  const double s = sign > 0 ? 1.0 : -1.0;
  for (int c = 0; c < N; ++c) H[c] = 0.5 * (U[c] + s * F[c] / alpha);
  return H;
}

// Characteristic WENO reconstruction of the upwind split-flux values at one
// interface. hp/hm point at the first cell of the plus/minus windows (2r-1
// consecutive split states each).
template <int Dim, int R>
inline ConsVec<Dim> weno_interface_flux(const ConsVec<Dim>* hp,
                                        const ConsVec<Dim>* hm,
                                        const CharacteristicBasis<Dim>& basis,
                                        double alpha) {
  constexpr int N = Dim + 2;
  constexpr int Wn = 2 * R - 1;
  double wp[N][Wn];
  double wm[N][Wn];
  if (basis.identity_fallback) {
    for (int k = 0; k < Wn; ++k)
      for (int c = 0; c < N; ++c) {
        wp[c][k] = hp[k][c];
        wm[c][k] = hm[k][c];
      }
  } else {
    for (int k = 0; k < Wn; ++k) {
      for (int c = 0; c < N; ++c) {
        double sp = 0.0, sm = 0.0;
        for (int j = 0; j < N; ++j) {
          sp += basis.Rinv.a[c][j] * hp[k][j];
          sm += basis.Rinv.a[c][j] * hm[k][j];
        }
        wp[c][k] = sp;
        wm[c][k] = sm;
      }
    }
  }
  double recon[N];
  for (int c = 0; c < N; ++c)
    recon[c] = weno_left<R>(wp[c]) - weno_right<R>(wm[c]);
  ConsVec<Dim> f;
  if (basis.identity_fallback) {
    for (int c = 0; c < N; ++c) f[c] = alpha * recon[c];
  } else {
    for (int i = 0; i < N; ++i) {
      double s = 0.0;
      for (int c = 0; c < N; ++c) s += basis.R.a[i][c] * recon[c];
      f[i] = alpha * s;
    }
  }
  return f;
}

namespace detail {

inline double blend_theta(double value_llf, double value_candidate,
                          double floor) {
  if (value_candidate >= floor) return 1.0;
  // value_llf >= floor was checked upstream, so the denominator is positive.
  const double theta = (value_llf - floor) / (value_llf - value_candidate);
  return std::clamp(theta, 0.0, 1.0);
}

}  // namespace detail

// Two-step PCP flux limiter. The four trial states are the stage-folded
// neighbor updates on either side of the interface,
//   plus side  : cell j     updated by -2 dt_eff/dx f,
//   minus side : cell j+1   updated by +2 dt_eff/dx f,
// for f in {LLF, WENO}; the caller builds them so the same routine serves
// every RK stage and geometry. Step I blends only the mass flux until both
// trial densities respect eps_D; step II blends the whole vector using q.
// Precondition (Lax-Friedrichs trials admissible with floors) failing means
// the time step violated the CFL condition.
template <int Dim>
inline InterfaceFluxSet<Dim> pcp_limit(const ConsVec<Dim>& f_weno,
                                       const ConsVec<Dim>& f_llf,
                                       const ConsVec<Dim>& plus_llf,
                                       const ConsVec<Dim>& plus_weno,
                                       const ConsVec<Dim>& minus_llf,
                                       const ConsVec<Dim>& minus_weno,
                                       const Floors& floors, double alpha) {
  InterfaceFluxSet<Dim> out;
  out.f_weno = f_weno;
  out.f_llf = f_llf;
  out.alpha = alpha;

  const double q_plus_llf = q_value<Dim>(plus_llf);
  const double q_minus_llf = q_value<Dim>(minus_llf);
  if (plus_llf[0] < floors.eps_D || minus_llf[0] < floors.eps_D ||
      q_plus_llf < floors.eps_q || q_minus_llf < floors.eps_q) {
    std::ostringstream os;
    os << "LLF trial state broke the floors (D+ = " << plus_llf[0]
       << ", q+ = " << q_plus_llf << ", D- = " << minus_llf[0]
       << ", q- = " << q_minus_llf << "): time step too large";
    throw CflError(os.str());
  }

  // Step I: mass component only.
  const double thD_plus =
      detail::blend_theta(plus_llf[0], plus_weno[0], floors.eps_D);
  const double thD_minus =
      detail::blend_theta(minus_llf[0], minus_weno[0], floors.eps_D);
  out.theta_D = std::min(thD_plus, thD_minus);

  ConsVec<Dim> f_D = f_weno;
  ConsVec<Dim> plus_D = plus_weno;
  ConsVec<Dim> minus_D = minus_weno;
  if (out.theta_D < 1.0) {
    f_D[0] = (1.0 - out.theta_D) * f_llf[0] + out.theta_D * f_weno[0];
    // the trial map is affine in the flux, so only the density entry moves
    plus_D[0] = (1.0 - out.theta_D) * plus_llf[0] + out.theta_D * plus_weno[0];
    minus_D[0] =
        (1.0 - out.theta_D) * minus_llf[0] + out.theta_D * minus_weno[0];
  }

  // Step II: whole vector, driven by q.
  const double thq_plus =
      detail::blend_theta(q_plus_llf, q_value<Dim>(plus_D), floors.eps_q);
  const double thq_minus =
      detail::blend_theta(q_minus_llf, q_value<Dim>(minus_D), floors.eps_q);
  out.theta_q = std::min(thq_plus, thq_minus);

  if (out.theta_q < 1.0) {
    out.f_pcp = (1.0 - out.theta_q) * f_llf + out.theta_q * f_D;
  } else {
    out.f_pcp = f_D;
  }
  return out;
}

}  // namespace srhd

#endif  // SRHD_FLUX_HPP_
