// Hot-path microbenchmarks: WENO weights, primitive recovery, the
// characteristic basis and one full interface flux evaluation.

#include <benchmark/benchmark.h>

#include <vector>

#include "srhd/flux.hpp"
#include "srhd/random_states.hpp"

using namespace srhd;

namespace {

template <int K>
void bench_weno_left(benchmark::State& state) {
  StateSampler s(1u);
  double w[2 * K - 1];
  for (double& x : w) x = s.log_uniform(0.1, 10.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(weno_left<K>(w));
    w[K - 1] += 1e-12;  // defeat value caching
  }
}

void bench_recovery(benchmark::State& state) {
  const EosParams eos{5.0 / 3.0};
  StateSampler s(2u);
  std::vector<ConsVec<2>> pool;
  for (int i = 0; i < 1024; ++i) pool.push_back(s.admissible<2>(eos, 100.0));
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(primitive_from_conserved<2>(pool[k], eos));
    k = (k + 1) & 1023;
  }
}

void bench_characteristic_basis(benchmark::State& state) {
  const EosParams eos{5.0 / 3.0};
  Prim<2> VL, VR;
  VL.rho = 1.0;
  VL.p = 0.5;
  VL.v[0] = 0.3;
  VL.v[1] = -0.1;
  VR.rho = 0.8;
  VR.p = 0.7;
  VR.v[0] = 0.25;
  VR.v[1] = 0.05;
  for (auto _ : state) {
    benchmark::DoNotOptimize(characteristic_basis<2>(VL, VR, eos, 0));
    VL.p += 1e-12;
  }
}

template <int R>
void bench_interface_flux(benchmark::State& state) {
  const EosParams eos{5.0 / 3.0};
  StateSampler s(3u);
  constexpr int Wn = 2 * R - 1;
  ConsVec<2> U[Wn + 1];
  ConsVec<2> F[Wn + 1];
  double alpha = alpha_floor;
  for (int k = 0; k < Wn + 1; ++k) {
    Prim<2> V;
    V.rho = s.log_uniform(0.5, 2.0);
    V.p = s.log_uniform(0.5, 2.0);
    V.v = s.direction<2>() * s.uniform(0.0, 0.5);
    U[k] = conserved_from_primitive(V, eos);
    F[k] = physical_flux<2>(V, U[k], 0);
    alpha = std::max(alpha, 1.2 * spectral_radius(V, eos, 0));
  }
  const Prim<2> VL = primitive_from_conserved<2>(U[R - 1], eos);
  const Prim<2> VR = primitive_from_conserved<2>(U[R], eos);
  const CharacteristicBasis<2> basis = characteristic_basis<2>(VL, VR, eos, 0);
  ConsVec<2> hp[Wn], hm[Wn];
  for (int k = 0; k < Wn; ++k) {
    hp[k] = llf_split(U[k], F[k], alpha, +1);
    hm[k] = llf_split(U[k + 1], F[k + 1], alpha, -1);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(weno_interface_flux<2, R>(hp, hm, basis, alpha));
  }
}

}  // namespace

BENCHMARK(bench_weno_left<3>);
BENCHMARK(bench_weno_left<5>);
BENCHMARK(bench_recovery);
BENCHMARK(bench_characteristic_basis);
BENCHMARK(bench_interface_flux<3>);
BENCHMARK(bench_interface_flux<5>);

BENCHMARK_MAIN();
