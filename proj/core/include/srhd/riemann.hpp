//! \file riemann.hpp
//! Exact solver for the 1D special-relativistic Riemann problem with a
//! gamma-law gas. The solution of
//!     U_t + F(U)_x = 0,   U(x,0) = U_L (x<0) / U_R (x>0)
//! is self-similar in xi = x/t: an outer left wave (shock or rarefaction
//! fan), a contact discontinuity, and an outer right wave, separating two
//! constant "star" states that share pressure p* and normal velocity v*.
//!
//! Construction: for a trial star pressure p, each outer wave determines the
//! star velocity reachable from its side,
//!   - shock branch (p > p_side): the Taub adiabat fixes the post-shock
//!     enthalpy (a quadratic for the gamma-law gas), and the jump conditions
//!     give the relative velocity between the states,
//!         v_rel^2 = (p - p_s)(eps - eps_s) / ((eps_s + p)(eps + p_s)),
//!     with eps = rho h - p the rest-frame total energy density;
//!   - rarefaction branch (p <= p_side): the flow is a smooth simple wave on
//!     the isentrope p / rho^gamma = const, along which the Riemann invariant
//!         J_+- = artanh(v) +- G(c_s),
//!         G(c) = 2/sqrt(gamma-1) * artanh(c/sqrt(gamma-1)),
//!     is constant (+ across the left fan, - across the right fan).
//! Since relativistic velocity composition is additive in artanh, matching
//! the two star velocities is a scalar root-find in p, monotone decreasing,
//! solved by bracketed bisection on log p.

#ifndef SRHD_RIEMANN_HPP_
#define SRHD_RIEMANN_HPP_

#include "srhd/state.hpp"

namespace srhd {

enum class WaveType { shock, rarefaction };

// One outer wave of the self-similar pattern. For a shock lo == hi == the
// shock speed; for a rarefaction [lo, hi] is the closed fan of xi = x/t.
struct Wave {
  WaveType type = WaveType::shock;
  double lo = 0.0;
  double hi = 0.0;
};

struct RiemannSolution {
  EosParams eos;
  Prim<1> left;   // input state left of the initial jump
  Prim<1> right;  // input state right of the initial jump

  double p_star = 0.0;          // pressure between the outer waves
  double v_star = 0.0;          // velocity of (and between) the outer waves
  double rho_star_left = 0.0;   // density between left wave and contact
  double rho_star_right = 0.0;  // density between contact and right wave

  Wave left_wave;
  Wave right_wave;
  double contact = 0.0;  // contact-discontinuity speed (== v_star)

  // Self-similar solution at xi = x/t. Exactly at a discontinuity the state
  // on the right of it is returned.
  Prim<1> sample(double xi) const;
};

// Solves the Riemann problem exactly. Throws DomainError for invalid input
// states or data whose solution contains a vacuum (pressure -> 0 between two
// receding rarefactions), ConvergenceError if the pressure iteration fails
// to bracket or converge.
RiemannSolution exact_riemann_1d(const Prim<1>& VL, const Prim<1>& VR,
                                 const EosParams& eos);

}  // namespace srhd

#endif  // SRHD_RIEMANN_HPP_
