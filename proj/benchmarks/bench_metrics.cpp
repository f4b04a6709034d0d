#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "evsharp/metrics.hpp"

using namespace evsharp;

namespace {

Frame noise_frame(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> value(0.2, 0.8);
  std::vector<double> values(static_cast<std::size_t>(dim) * dim);
  for (double& v : values) {
    v = value(rng);
  }
  return Frame(dim, dim, std::move(values), ExposureWindow{0.0, 0.0});
}

void BM_Psnr(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  Frame a = noise_frame(dim, 1);
  Frame b = noise_frame(dim, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(psnr(a, b));
  }
  state.SetItemsProcessed(state.iterations() * dim * dim);
}
BENCHMARK(BM_Psnr)->Arg(256)->Arg(512);

void BM_Ssim(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  Frame a = noise_frame(dim, 1);
  Frame b = noise_frame(dim, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ssim(a, b));
  }
  state.SetItemsProcessed(state.iterations() * dim * dim);
}
BENCHMARK(BM_Ssim)->Arg(256)->Arg(512);

}  // namespace
