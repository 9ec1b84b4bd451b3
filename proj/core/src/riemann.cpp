#include "srhd/riemann.hpp"

#include <cmath>
#include <sstream>

namespace srhd {
namespace {

// Characteristic speeds lambda_-+ = (v -+ c) / (1 -+ v c).
double lambda_minus(double v, double c) { return (v - c) / (1.0 - v * c); }
double lambda_plus(double v, double c) { return (v + c) / (1.0 + v * c); }

// Precomputed per-side quantities. "atv" is artanh(v); all velocity algebra
// happens in artanh space where relativistic composition is additive.
struct SideState {
  Prim<1> V;
  double h = 0.0;    // specific enthalpy
  double c = 0.0;    // sound speed
  double eps = 0.0;  // rest-frame total energy density rho h - p
  double D = 0.0;    // lab-frame density rho W
  double K = 0.0;    // isentrope constant p / rho^gamma
  double atv = 0.0;
  double Gc = 0.0;   // G(c), see below
};

struct Eos {
  double gamma;
  double gm1;  // gamma - 1
  double sg;   // sqrt(gamma - 1)

  explicit Eos(const EosParams& e)
      : gamma(e.gamma), gm1(e.gamma - 1.0), sg(std::sqrt(e.gamma - 1.0)) {}

  // Rarefaction invariant potential G(c) = 2/sqrt(g-1) artanh(c/sqrt(g-1));
  // J_+- = artanh(v) +- G(c) is constant across a left/right fan.
  double G(double c) const { return 2.0 / sg * std::atanh(c / sg); }
};

SideState make_side(const Prim<1>& V, const Eos& eos, const EosParams& raw) {
  SideState s;
  s.V = V;
  s.h = specific_enthalpy(V.rho, V.p, raw);
  s.c = sound_speed(V.rho, V.p, raw);
  s.eps = V.rho * s.h - V.p;
  s.D = V.rho * lorentz_factor<1>(V.v);
  s.K = V.p / std::pow(V.rho, eos.gamma);
  s.atv = std::atanh(V.v[0]);
  s.Gc = eos.G(s.c);
  return s;
}

// Post-shock enthalpy from the Taub adiabat
//     h^2 - h_s^2 = (h/rho + h_s/rho_s)(p - p_s),
// which with h/rho = (g-1) h (h-1) / (g p) becomes the quadratic
//     (1 - A) h^2 + A h - C = 0,
//     A = (g-1)(p - p_s)/(g p),  C = h_s^2 + (p - p_s) h_s / rho_s.
// 1 - A = (p + (g-1) p_s)/(g p) > 0, so the positive root always exists.
double taub_enthalpy(double p, const SideState& s, const Eos& eos) {
  const double A = eos.gm1 * (p - s.V.p) / (eos.gamma * p);
  const double C = s.h * s.h + (p - s.V.p) * s.h / s.V.rho;
  const double disc = A * A + 4.0 * (1.0 - A) * C;
  return (-A + std::sqrt(disc)) / (2.0 * (1.0 - A));
}

double shock_density(double p, double h, const Eos& eos) {
  return eos.gamma * p / (eos.gm1 * (h - 1.0));
}

// artanh of the flow velocity jump across the outer wave on one side, as a
// function of the star pressure p: positive for a shock (p > p_s), negative
// for a rarefaction. Increasing in p, zero at p = p_s.
double wave_strength(double p, const SideState& s, const Eos& eos,
                     const EosParams& raw) {
  if (p > s.V.p) {
    const double h = taub_enthalpy(p, s, eos);
    const double rho = shock_density(p, h, eos);
    const double eps = rho * h - p;
    // Relative velocity across a relativistic shock front:
    // v_rel^2 = (p - p_s)(eps - eps_s) / ((eps_s + p)(eps + p_s)).
    const double v2 = (p - s.V.p) * (eps - s.eps) /
                      ((s.eps + p) * (eps + s.V.p));
    return std::atanh(std::sqrt(std::max(v2, 0.0)));
  }
  const double rho = s.V.rho * std::pow(p / s.V.p, 1.0 / eos.gamma);
  return eos.G(sound_speed(rho, p, raw)) - s.Gc;
}

// Star-velocity mismatch in artanh space; strictly decreasing in p.
double pressure_mismatch(double p, const SideState& L, const SideState& R,
                         const Eos& eos, const EosParams& raw) {
  return (L.atv - wave_strength(p, L, eos, raw)) -
         (R.atv + wave_strength(p, R, eos, raw));
}

// State inside a rarefaction fan at similarity coordinate xi. The fan state
// satisfies lambda_-+(v, c) = xi and carries the side's invariant J_-+, which
// pins the sound speed; bisection on c is monotone on the bracket
// [c_star, c_side] (fan edges).
Prim<1> fan_state(double xi, const SideState& s, double c_star, bool left,
                  const Eos& eos) {
  const double invariant = left ? s.atv + s.Gc : s.atv - s.Gc;
  double lo = c_star;
  double hi = s.c;
  for (int it = 0; it < 150; ++it) {
    const double c = 0.5 * (lo + hi);
    const double v = left ? (xi + c) / (1.0 + xi * c)
                          : (xi - c) / (1.0 - xi * c);
    const double g = left ? std::atanh(v) + eos.G(c) - invariant
                          : std::atanh(v) - eos.G(c) - invariant;
    // g is increasing in c across a left fan and decreasing across a right
    // fan; keep the sign change inside [lo, hi].
    if ((left && g <= 0.0) || (!left && g >= 0.0))
      lo = c;
    else
      hi = c;
  }
  const double c = 0.5 * (lo + hi);
  Prim<1> out;
  out.v = {left ? (xi + c) / (1.0 + xi * c) : (xi - c) / (1.0 - xi * c)};
  // Invert c^2 = gamma p / (rho h) on the isentrope p = K rho^gamma:
  // with y = gamma K rho^(gamma-1), c^2 = y / (1 + y/(gamma-1)).
  const double y = c * c * eos.gm1 / (eos.gm1 - c * c);
  out.rho = std::pow(y / (eos.gamma * s.K), 1.0 / eos.gm1);
  out.p = s.K * std::pow(out.rho, eos.gamma);
  return out;
}

// Lab-frame shock speed from the D-jump D_b (v_b - V_s) = D_a (v_a - V_s).
// Falls back to the acoustic speed in the zero-strength limit where the
// division degenerates.
double shock_speed(double D_star, double v_star, const SideState& s,
                   bool left) {
  const double denom = D_star - s.D;
  if (std::abs(denom) >
      1e-12 * std::max(std::abs(D_star), std::abs(s.D))) {
    return (D_star * v_star - s.D * s.V.v[0]) / denom;
  }
  return left ? lambda_minus(s.V.v[0], s.c) : lambda_plus(s.V.v[0], s.c);
}

}  // namespace

Prim<1> RiemannSolution::sample(double xi) const {
  const Eos e(eos);
  const EosParams raw = eos;
  if (xi < left_wave.lo) return left;
  if (left_wave.type == WaveType::rarefaction && xi < left_wave.hi) {
    const SideState s = make_side(left, e, raw);
    return fan_state(xi, s, sound_speed(rho_star_left, p_star, raw), true, e);
  }
  if (xi < contact) {
    Prim<1> out;
    out.rho = rho_star_left;
    out.v = {v_star};
    out.p = p_star;
    return out;
  }
  if (xi < right_wave.lo) {
    Prim<1> out;
    out.rho = rho_star_right;
    out.v = {v_star};
    out.p = p_star;
    return out;
  }
  if (right_wave.type == WaveType::rarefaction && xi < right_wave.hi) {
    const SideState s = make_side(right, e, raw);
    return fan_state(xi, s, sound_speed(rho_star_right, p_star, raw), false,
                     e);
  }
  return right;
}

RiemannSolution exact_riemann_1d(const Prim<1>& VL, const Prim<1>& VR,
                                 const EosParams& eos) {
  validate_primitive(VL, eos);
  validate_primitive(VR, eos);
  const Eos e(eos);
  const SideState L = make_side(VL, e, eos);
  const SideState R = make_side(VR, e, eos);

  // p -> 0 limit of the mismatch; non-positive means the two fans separate
  // completely and the solution contains a vacuum.
  if ((L.atv + L.Gc) - (R.atv - R.Gc) <= 0.0) {
    throw DomainError(
        "riemann: states generate a vacuum (no positive star pressure)");
  }

  auto f = [&](double p) { return pressure_mismatch(p, L, R, e, eos); };

  // Bracket the root of the decreasing mismatch, then bisect on log p.
  double lo = std::min(VL.p, VR.p);
  double hi = std::max(VL.p, VR.p);
  int guard = 0;
  while (f(lo) < 0.0) {
    lo *= 0.25;
    if (!(lo > 0.0) || ++guard > 4000)
      throw ConvergenceError("riemann: failed to bracket p* from below");
  }
  guard = 0;
  while (f(hi) > 0.0) {
    hi *= 4.0;
    if (!std::isfinite(hi) || ++guard > 4000)
      throw ConvergenceError("riemann: failed to bracket p* from above");
  }
  for (int it = 0; it < 300 && hi - lo > 2e-16 * hi; ++it) {
    const double mid = std::sqrt(lo * hi);
    const double fm = f(mid);
    if (fm == 0.0) {
      lo = hi = mid;
    } else if (fm > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  if (hi - lo > 1e-12 * hi)
    throw ConvergenceError("riemann: pressure iteration did not converge");

  RiemannSolution sol;
  sol.eos = eos;
  sol.left = VL;
  sol.right = VR;
  sol.p_star = 0.5 * (lo + hi);

  const double aL = L.atv - wave_strength(sol.p_star, L, e, eos);
  const double aR = R.atv + wave_strength(sol.p_star, R, e, eos);
  sol.v_star = std::tanh(0.5 * (aL + aR));
  sol.contact = sol.v_star;

  const double W_star = lorentz_factor<1>(Vec<1>{sol.v_star});

  if (sol.p_star > VL.p) {
    const double h = taub_enthalpy(sol.p_star, L, e);
    sol.rho_star_left = shock_density(sol.p_star, h, e);
    const double vs =
        shock_speed(sol.rho_star_left * W_star, sol.v_star, L, true);
    sol.left_wave = {WaveType::shock, vs, vs};
  } else {
    sol.rho_star_left = VL.rho * std::pow(sol.p_star / VL.p, 1.0 / eos.gamma);
    const double c_star = sound_speed(sol.rho_star_left, sol.p_star, eos);
    sol.left_wave = {WaveType::rarefaction, lambda_minus(VL.v[0], L.c),
                     lambda_minus(sol.v_star, c_star)};
  }

  if (sol.p_star > VR.p) {
    const double h = taub_enthalpy(sol.p_star, R, e);
    sol.rho_star_right = shock_density(sol.p_star, h, e);
    const double vs =
        shock_speed(sol.rho_star_right * W_star, sol.v_star, R, false);
    sol.right_wave = {WaveType::shock, vs, vs};
  } else {
    sol.rho_star_right = VR.rho * std::pow(sol.p_star / VR.p, 1.0 / eos.gamma);
    const double c_star = sound_speed(sol.rho_star_right, sol.p_star, eos);
    sol.right_wave = {WaveType::rarefaction, lambda_plus(sol.v_star, c_star),
                      lambda_plus(VR.v[0], R.c)};
  }

  return sol;
}

}  // namespace srhd
