//! \file random_states.hpp
//! Randomized state generators shared by the property suites and the unit
//! tests. Sampling is seed-deterministic; primitives are drawn log-uniformly
//! so the admissible set is stressed across many decades, and near-boundary
//! states are produced by shrinking q toward zero along the E direction.

#ifndef SRHD_RANDOM_STATES_HPP_
#define SRHD_RANDOM_STATES_HPP_

#include <cmath>
#include <random>

#include "srhd/state.hpp"

namespace srhd {

class StateSampler {
 public:
  explicit StateSampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  // adiabatic index in (1, 2]
  double gamma() { return uniform(1.05, 2.0); }

  double lorentz(double max_w = 1e3) {
    return 1.0 + log_uniform(1e-6, max_w - 1.0);
  }

  template <int Dim>
  Vec<Dim> direction() {
    Vec<Dim> n;
    double norm = 0.0;
    std::normal_distribution<double> gauss(0.0, 1.0);
    do {
      for (int i = 0; i < Dim; ++i) n[i] = gauss(rng_);
      norm = norm2(n);
    } while (norm < 1e-12);
    return n * (1.0 / norm);
  }

  template <int Dim>
  Prim<Dim> primitive(double max_w = 1e3) {
    Prim<Dim> V;
    V.rho = log_uniform(1e-6, 1e6);
    V.p = log_uniform(1e-10, 1e6);
    const double W = lorentz(max_w);
    const double speed = std::sqrt(1.0 - 1.0 / (W * W));
    V.v = direction<Dim>() * speed;
    return V;
  }

  template <int Dim>
  ConsVec<Dim> admissible(const EosParams& eos, double max_w = 1e3) {
    return conserved_from_primitive(primitive<Dim>(max_w), eos);
  }

  // Admissible state with q/E pushed down to ~1e-8: E is pulled toward
  // sqrt(D^2+|m|^2) so only a fraction s of the original q survives.
  template <int Dim>
  ConsVec<Dim> near_boundary(const EosParams& eos, double max_w = 1e3) {
    ConsVec<Dim> U = admissible<Dim>(eos, max_w);
    const double q = q_value<Dim>(U);
    const double s = log_uniform(1e-8, 1.0);
    U[Dim + 1] = (U[Dim + 1] - q) + s * q;
    return U;
  }

  // Arbitrary real vector (not necessarily admissible), for the global
  // q-concavity and Lipschitz checks.
  template <int Dim>
  ConsVec<Dim> arbitrary() {
    ConsVec<Dim> U;
    const double scale = log_uniform(1e-6, 1e6);
    for (int c = 0; c < Dim + 2; ++c) U[c] = scale * uniform(-1.0, 1.0);
    return U;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace srhd

#endif  // SRHD_RANDOM_STATES_HPP_
