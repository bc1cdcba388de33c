#include <benchmark/benchmark.h>

#include "gcnnvc/signal.hpp"

namespace {

void BM_CorrelateCyclic(benchmark::State& state) {
  const auto r = static_cast<std::size_t>(state.range(0));
  const auto g = gcnnvc::build_cyclic(r);
  gcnnvc::Rng rng(1);
  const auto basis = gcnnvc::random_basis(g, 4, rng);
  const auto f = gcnnvc::random_signal(1, r, rng);
  const gcnnvc::KernelWeights w{{0.5, -1.0, 0.25, 2.0}};
  for (auto _ : state) benchmark::DoNotOptimize(gcnnvc::g_correlate(g, basis, w, f.values()));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CorrelateCyclic)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_CorrelateGridWindow(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = gcnnvc::build_grid_translation(n, n);
  const auto basis = gcnnvc::cnn_window_basis(g, 3);
  gcnnvc::Rng rng(2);
  const auto f = gcnnvc::random_signal(1, n * n, rng);
  gcnnvc::KernelWeights w;
  for (int s = 0; s < 9; ++s) w.w.push_back(rng.uniform(-1, 1));
  for (auto _ : state) benchmark::DoNotOptimize(gcnnvc::g_correlate(g, basis, w, f.values()));
}
BENCHMARK(BM_CorrelateGridWindow)->Arg(8)->Arg(28);

}  // namespace
