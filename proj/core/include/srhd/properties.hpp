//! \file properties.hpp
//! Randomized property suite for the mathematical guarantees the scheme is
//! built on: convexity of the admissible set, concavity and Lipschitz
//! continuity of q, admissibility of flux-shifted states at the spectral
//! radius, the first-order LLF update under its CFL bound, the geometric
//! source step under its time-step bound, and the non-concavity witness for
//! the pressure.
//!
//! The statements hold in exact arithmetic; the checkers allow a rounding
//! slack of a few ulps of the participating magnitudes, so a reported
//! violation is a genuine property failure, not noise. Families shard their
//! samples by seed across threads and only count, which makes the report
//! independent of scheduling order.

#ifndef SRHD_PROPERTIES_HPP_
#define SRHD_PROPERTIES_HPP_

#include <random>
#include <string>
#include <vector>

#include "srhd/state.hpp"

namespace srhd {

// One random admissible state with its generating primitives. States are
// sampled in primitive variables and forward-mapped, so admissibility holds
// by construction; a fraction are additionally stressed toward the q = 0
// boundary (down to q/E = 1e-8) by raising the energy denominator.
template <int Dim>
struct AdmissibleSample {
  ConsVec<Dim> U{};
  Prim<Dim> V{};
};

// Adiabatic index for property draws: the common values and the closure
// boundary, plus uniform draws over the admitted interval (1, 2].
EosParams random_eos(std::mt19937_64& rng);

// Draw covers rho in [1e-6, 1e4], p in [1e-10, 1e6], Lorentz factors up to
// 1e3, and (for boundary-stressed draws) q/E down to 1e-8.
template <int Dim>
AdmissibleSample<Dim> draw_admissible(std::mt19937_64& rng,
                                      const EosParams& eos);

// phi(lambda) = p(lambda U1 + (1-lambda) U0) - lambda p(U1)
//               - (1-lambda) p(U0).
// Negative values witness that the recovered pressure is not concave in the
// conserved variables.
double pressure_combination_gap(const ConsVec<1>& U0, const ConsVec<1>& U1,
                                double lambda, const EosParams& eos);

struct FamilyResult {
  std::string name;
  long samples = 0;
  long violations = 0;
};

struct PropertyReport {
  std::vector<FamilyResult> families;

  bool all_passed() const {
    for (const auto& f : families)
      if (f.violations != 0) return false;
    return !families.empty();
  }
};

// Run all six families with `samples` draws each. Deterministic for a fixed
// (samples, seed) pair regardless of thread count.
PropertyReport lemma_property_suite(long samples, unsigned long seed,
                                    int threads = 1);

// Line-oriented report: one family per line as "name samples violations".
std::string format_report(const PropertyReport& report);

}  // namespace srhd

#endif  // SRHD_PROPERTIES_HPP_
