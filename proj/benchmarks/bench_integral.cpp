#include <benchmark/benchmark.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "evsharp/integral.hpp"

using namespace evsharp;

namespace {

EventStream bench_stream(int dim, int count) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> time_dist(0.0, 1.2);
  std::uniform_int_distribution<int> xy_dist(0, dim - 1);
  std::uniform_int_distribution<int> p_dist(0, 1);
  std::vector<Event> events(count);
  for (Event& e : events) {
    e.t = time_dist(rng);
    e.x = static_cast<std::uint16_t>(xy_dist(rng));
    e.y = static_cast<std::uint16_t>(xy_dist(rng));
    e.p = p_dist(rng) ? 1 : -1;
  }
  std::sort(events.begin(), events.end(),
            [](const Event& a, const Event& b) { return a.t < b.t; });
  return EventStream(dim, dim, std::move(events), TimeSpan{0.0, 1.2});
}

void BM_DoubleIntegral(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  EventStream stream = bench_stream(dim, 20000);
  Threshold c(0.2);
  ExposureWindow win{0.2, 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(double_integral(stream, 0.45, win, c));
  }
  state.SetItemsProcessed(state.iterations() * dim * dim);
}
BENCHMARK(BM_DoubleIntegral)->Arg(32)->Arg(64)->Arg(128);

void BM_DoubleIntegralOutside(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  EventStream stream = bench_stream(dim, 20000);
  Threshold c(0.2);
  ExposureWindow win{0.6, 0.3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(double_integral(stream, 0.1, win, c));
  }
  state.SetItemsProcessed(state.iterations() * dim * dim);
}
BENCHMARK(BM_DoubleIntegralOutside)->Arg(64);

void BM_SharpIntegral(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  EventStream stream = bench_stream(dim, 20000);
  Threshold c(0.2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sharp_integral(stream, 0.3, 0.9, c));
  }
  state.SetItemsProcessed(state.iterations() * dim * dim);
}
BENCHMARK(BM_SharpIntegral)->Arg(64)->Arg(128);

void BM_QuadratureOracle(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  EventStream stream = bench_stream(dim, 20000);
  Threshold c(0.2);
  ExposureWindow win{0.2, 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(quadrature_oracle(stream, 0.45, win, c, 1000000));
  }
  state.SetItemsProcessed(state.iterations() * dim * dim);
}
BENCHMARK(BM_QuadratureOracle)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
