#include <benchmark/benchmark.h>

#include "gcnnvc/bounds.hpp"

namespace {

void BM_VcUpperBySearch(benchmark::State& state) {
  const auto depth = static_cast<std::size_t>(state.range(0));
  gcnnvc::GcnnSpec spec{4, std::vector<std::size_t>(depth + 1, 16), 64};
  for (auto _ : state) benchmark::DoNotOptimize(gcnnvc::vc_upper_by_search(spec));
}
BENCHMARK(BM_VcUpperBySearch)->Arg(2)->Arg(8)->Arg(32);

}  // namespace
