#include <benchmark/benchmark.h>

#include "gcnnvc/verify.hpp"

namespace {

void BM_VerifyIntervalInstance(benchmark::State& state) {
  const auto r = static_cast<std::size_t>(state.range(0));
  const auto inst = gcnnvc::build_shatter_instance(gcnnvc::build_cyclic(r), 0.0, 1.0);
  gcnnvc::VerifyOptions opt;
  opt.threads = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(gcnnvc::verify_shattering(inst, opt));
}
BENCHMARK(BM_VerifyIntervalInstance)->Args({16, 1})->Args({64, 1})->Args({64, 4})->Unit(benchmark::kMillisecond);

void BM_VerifyComposite(benchmark::State& state) {
  const auto inst = gcnnvc::build_composite_instance(gcnnvc::build_cyclic(8), 3);
  for (auto _ : state) benchmark::DoNotOptimize(gcnnvc::verify_shattering(inst));
}
BENCHMARK(BM_VerifyComposite)->Unit(benchmark::kMillisecond);

}  // namespace
