#include <benchmark/benchmark.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "evsharp/simulate.hpp"

using namespace evsharp;

namespace {

// Random-walk latent video in log space, bounded away from the intensity
// rails so downstream code never clamps.
LatentVideo bench_video(int dim, int frame_count) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> step(-0.05, 0.05);
  const std::size_t pixels = static_cast<std::size_t>(dim) * dim;
  std::vector<double> logs(pixels, std::log(0.3));
  std::vector<Frame> frames;
  frames.reserve(frame_count);
  for (int k = 0; k < frame_count; ++k) {
    std::vector<double> values(pixels);
    for (std::size_t i = 0; i < pixels; ++i) {
      if (k > 0) {
        logs[i] = std::clamp(logs[i] + step(rng), std::log(0.12),
                             std::log(0.88));
      }
      values[i] = std::exp(logs[i]);
    }
    double t = 1.2 * static_cast<double>(k) / (frame_count - 1);
    frames.emplace_back(dim, dim, std::move(values), ExposureWindow{t, 0.0});
  }
  return LatentVideo(std::move(frames));
}

EventStream bench_stream(int dim, int count) {
  std::mt19937_64 rng(13);
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

void BM_GenerateEvents(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  LatentVideo video = bench_video(dim, 120);
  Threshold c(0.1);
  std::size_t produced = 0;
  for (auto _ : state) {
    EventStream events = generate_events(video, c);
    produced = events.size();
    benchmark::DoNotOptimize(events);
  }
  state.counters["events"] = static_cast<double>(produced);
}
BENCHMARK(BM_GenerateEvents)->Arg(32)->Arg(64);

void BM_SynthesizeBlur(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  LatentVideo video = bench_video(dim, 120);
  ExposureWindow win{0.1, 0.9};
  for (auto _ : state) {
    benchmark::DoNotOptimize(synthesize_blur(video, win));
  }
}
BENCHMARK(BM_SynthesizeBlur)->Arg(64);

void BM_ModelExactVideo(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  EventStream stream = bench_stream(dim, 20000);
  Frame base = Frame::constant(dim, dim, 0.3, ExposureWindow{0.0, 0.0});
  Threshold c(0.01);  // tiny threshold keeps the walk inside the rails
  std::vector<double> samples(256);
  for (int k = 0; k < 256; ++k) {
    samples[k] = 1.2 * (k + 0.5) / 256.0;
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(model_exact_video(base, stream, samples, c));
  }
}
BENCHMARK(BM_ModelExactVideo)->Arg(64);

}  // namespace
