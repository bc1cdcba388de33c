#include <benchmark/benchmark.h>

#include "gcnnvc/network.hpp"

namespace {

void BM_GcnnForwardDihedral(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = gcnnvc::build_dihedral(n);
  const gcnnvc::GcnnSpec spec{3, {2, 8, 8, 1}, g.resolution()};
  gcnnvc::Rng rng(3);
  const auto params = gcnnvc::GcnnParams::random(spec, rng);
  const auto basis = gcnnvc::random_basis(g, spec.k, rng);
  const auto f = gcnnvc::random_signal(2, g.resolution(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(gcnnvc::gcnn_forward(spec, params, basis, g, f));
}
BENCHMARK(BM_GcnnForwardDihedral)->Arg(4)->Arg(16)->Arg(64);

}  // namespace
