// Serial reference kernels against their OpenMP counterparts.

#include <random>

#include <benchmark/benchmark.h>

#include "qlga/one_particle.hpp"
#include "qlga/spectral.hpp"
#include "qlga/two_particle.hpp"

namespace {

using namespace qlga;

std::mt19937_64& rng() {
  static std::mt19937_64 engine(7);
  return engine;
}

template <bool Parallel>
void one_particle_step(benchmark::State& st) {
  const Lattice l(static_cast<std::size_t>(st.range(0)));
  const ScatteringParams p(pi / 12);
  const auto pot = PotentialProfile::flat(l);
  const auto psi = OneParticleState::random(l, rng());
  for (auto _ : st) {
    auto out = Parallel ? step_one_particle(psi, p, pot) : reference::step_one_particle(psi, p, pot);
    benchmark::DoNotOptimize(out.amplitudes().data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <bool Parallel>
void two_particle_step(benchmark::State& st) {
  const Lattice l(static_cast<std::size_t>(st.range(0)));
  const ScatteringParams p(pi / 12, I);
  const auto psi = TwoParticleState::random(l, rng());
  for (auto _ : st) {
    auto out = Parallel ? step_two_particle(psi, p) : reference::step_two_particle(psi, p);
    benchmark::DoNotOptimize(out.amplitudes().data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0) * st.range(0));
}

template <bool Parallel>
void spectral_decompose(benchmark::State& st) {
  const Lattice l(static_cast<std::size_t>(st.range(0)));
  const ScatteringParams p(pi / 12);
  const auto psi = OneParticleState::random(l, rng());
  for (auto _ : st) {
    auto d = Parallel ? decompose(psi, p) : reference::decompose(psi, p);
    benchmark::DoNotOptimize(&d);
  }
}

} // namespace

BENCHMARK(one_particle_step<false>)->Name("step_one_particle/serial")->RangeMultiplier(8)->Range(64, 32768);
BENCHMARK(one_particle_step<true>)->Name("step_one_particle/openmp")->RangeMultiplier(8)->Range(64, 32768);
BENCHMARK(two_particle_step<false>)->Name("step_two_particle/serial")->RangeMultiplier(2)->Range(16, 256);
BENCHMARK(two_particle_step<true>)->Name("step_two_particle/openmp")->RangeMultiplier(2)->Range(16, 256);
BENCHMARK(spectral_decompose<false>)->Name("decompose/serial")->RangeMultiplier(4)->Range(16, 1024);
BENCHMARK(spectral_decompose<true>)->Name("decompose/openmp")->RangeMultiplier(4)->Range(16, 1024);

BENCHMARK_MAIN();
