#include <benchmark/benchmark.h>

#include "scpa/scpa.hpp"

namespace {

void BM_Median9Naive(benchmark::State& state) {
  scpa::SplitMix64 rng(1);
  scpa::Window3x3 w;
  for (auto& v : w) v = static_cast<std::uint8_t>(rng.next());
  for (auto _ : state) {
    benchmark::DoNotOptimize(w);
    benchmark::DoNotOptimize(scpa::median9_naive(w));
  }
}
BENCHMARK(BM_Median9Naive);

void BM_Median9WideReg(benchmark::State& state) {
  scpa::SplitMix64 rng(1);
  scpa::Window3x3 w;
  for (auto& v : w) v = static_cast<std::uint8_t>(rng.next());
  for (auto _ : state) {
    benchmark::DoNotOptimize(w);
    benchmark::DoNotOptimize(scpa::median9_widereg(scpa::WideRegister::pack(w)));
  }
}
BENCHMARK(BM_Median9WideReg);

void BM_MedianFilter(benchmark::State& state) {
  const auto kernel = static_cast<scpa::MedianKernel>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const scpa::Image img = scpa::random_image(n, n, 1, 7);
  for (auto _ : state) benchmark::DoNotOptimize(scpa::median_filter(img, kernel));
  state.SetItemsProcessed(state.iterations() * n * n);
  state.SetLabel(std::string(scpa::to_string(kernel)));
}
BENCHMARK(BM_MedianFilter)
    ->ArgsProduct({{0, 1, 2}, {128, 512}})
    ->Unit(benchmark::kMillisecond);

void BM_AdaptiveCif(benchmark::State& state) {
  const auto pattern = static_cast<scpa::Pattern>(state.range(0));
  const auto noisy = scpa::inject_impulse_noise(scpa::synth_frame(pattern, 352, 288), {0.1, 42});
  for (auto _ : state) benchmark::DoNotOptimize(scpa::adaptive_median_filter(noisy.image));
  state.SetItemsProcessed(state.iterations() * 352 * 288);
  state.SetLabel(std::string(scpa::to_string(pattern)));
}
BENCHMARK(BM_AdaptiveCif)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_Convert(benchmark::State& state) {
  const auto name = scpa::color_space_names()[static_cast<std::size_t>(state.range(0))];
  const auto path = static_cast<scpa::ArithPath>(state.range(1));
  const scpa::Image img = scpa::random_image(352, 288, 3, 3);
  const auto& m = scpa::color_matrix(name);
  for (auto _ : state) benchmark::DoNotOptimize(scpa::convert_image(img, m, path));
  state.SetItemsProcessed(state.iterations() * 352 * 288);
  state.SetLabel(std::string(name) + "/" + std::string(scpa::to_string(path)));
}
BENCHMARK(BM_Convert)->ArgsProduct({{0, 1, 2, 3}, {0, 1}})->Unit(benchmark::kMicrosecond);

void BM_ScpaRun(benchmark::State& state) {
  const scpa::Image img = scpa::random_image(128, 128, 3, 5);
  for (auto _ : state) {
    auto run = scpa::init_runtime(scpa::TaskTable::all_conversions(), 16);
    run.scatter(img);
    benchmark::DoNotOptimize(run.gather());
  }
}
BENCHMARK(BM_ScpaRun)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
