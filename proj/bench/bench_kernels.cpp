// Serial reference vs OpenMP path for each data-parallel kernel.
#include <benchmark/benchmark.h>

#include "galloop/noninertial.hpp"
#include "galloop/random_elements.hpp"

using namespace galloop;

namespace {

Exec mode(const benchmark::State& s) { return s.range(1) == 0 ? Exec::serial : Exec::parallel; }

GridOptions options(const benchmark::State& s) {
  GridOptions o;
  o.exec = mode(s);
  return o;
}

GridWavefunction packet(int n) {
  // Width scaled with the grid so the packet decays at the boundary.
  const double dq = 4.0 / (n - 1);
  return GridWavefunction::gaussian(n, dq, Mass(1.0), 0.28, {0.05, -0.04, 0.03}, {0.6, -0.3, 0.4});
}

FrameSpec rotating_frame() {
  return FrameSpec::from_rotation(rotation_about_axis({0, 0, 1}, 0.1, 1.0) *
                                  rotation_about_axis({1, 0, 0}, -0.2, 0.5));
}

void BM_derivative(benchmark::State& s) {
  const GridWavefunction psi = packet(static_cast<int>(s.range(0)));
  const GridOptions o = options(s);
  for (auto _ : s) benchmark::DoNotOptimize(derivative(psi, 0, o));
  s.SetItemsProcessed(s.iterations() * static_cast<int64_t>(psi.size()));
}

void BM_inner(benchmark::State& s) {
  const GridWavefunction psi = packet(static_cast<int>(s.range(0)));
  const Exec e = mode(s);
  for (auto _ : s) benchmark::DoNotOptimize(inner(psi, psi, e));
  s.SetItemsProcessed(s.iterations() * static_cast<int64_t>(psi.size()));
}

void BM_hamiltonian(benchmark::State& s) {
  const GridWavefunction psi = packet(static_cast<int>(s.range(0)));
  const FrameSpec f = rotating_frame();
  const GridOptions o = options(s);
  for (auto _ : s) benchmark::DoNotOptimize(hamiltonian_apply(f, psi, 0.5, o));
  s.SetItemsProcessed(s.iterations() * static_cast<int64_t>(psi.size()));
}

void BM_gauge_hamiltonian(benchmark::State& s) {
  const GridWavefunction psi = packet(static_cast<int>(s.range(0)));
  const GaugeFields f = gauge_fields(rotating_frame(), 0.5, Mass(1.0));
  const GridOptions o = options(s);
  for (auto _ : s) benchmark::DoNotOptimize(gauge_hamiltonian_apply(f, A0Variant::substitution, psi, o));
  s.SetItemsProcessed(s.iterations() * static_cast<int64_t>(psi.size()));
}

void BM_apply(benchmark::State& s) {
  ElementSampler rng(42);
  const Mass m(1.0);
  WavepacketState st(m);
  for (int64_t k = 0; k < s.range(0); ++k) {
    st.terms.push_back({VelocityLabel::from_velocity(rng.velocity_label()), {1.0, 0.0}, {}});
  }
  const LoopElement x{TrigPoly(0.3), rng.element()};
  const Exec e = mode(s);
  for (auto _ : s) benchmark::DoNotOptimize(apply(x, st, {}, e));
  s.SetItemsProcessed(s.iterations() * s.range(0));
}

}  // namespace

BENCHMARK(BM_derivative)->ArgsProduct({{17, 65, 129}, {0, 1}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_inner)->ArgsProduct({{17, 65, 129}, {0, 1}})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_hamiltonian)->ArgsProduct({{17, 65}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gauge_hamiltonian)->ArgsProduct({{17, 65}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_apply)->ArgsProduct({{16, 256}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
