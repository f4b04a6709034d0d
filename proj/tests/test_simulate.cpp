#include <cmath>
#include <vector>

#include "doctest.h"
#include "evsharp/errors.hpp"
#include "evsharp/frame.hpp"
#include "evsharp/reconstruct.hpp"
#include "evsharp/simulate.hpp"
#include "test_support.hpp"

using namespace evsharp;

namespace {

Frame still(double value, double t) {
  return Frame::constant(4, 3, value, ExposureWindow{t, 0.0});
}

}  // namespace

TEST_CASE("latent video validates shape and time order") {
  CHECK_THROWS_AS(LatentVideo({}), Error);
  CHECK_THROWS_AS(LatentVideo({still(0.5, 0.0), still(0.5, 0.0)}), Error);
  CHECK_THROWS_AS(LatentVideo({still(0.5, 1.0), still(0.5, 0.0)}), Error);
  CHECK_THROWS_AS(
      LatentVideo({still(0.5, 0.0),
                   Frame::constant(2, 2, 0.5, ExposureWindow{1.0, 0.0})}),
      Error);
  CHECK_THROWS_AS(
      LatentVideo({Frame::constant(4, 3, 0.5, ExposureWindow{0.0, 1.0})}),
      Error);

  LatentVideo ok({still(0.5, 0.0), still(0.6, 1.0)});
  CHECK(ok.size() == 2);
  CHECK(ok.span().begin == 0.0);
  CHECK(ok.span().end == 1.0);
}

TEST_CASE("constant video generates no events") {
  LatentVideo video({still(0.42, 0.0), still(0.42, 0.5), still(0.42, 1.0)});
  EventStream s = generate_events(video, Threshold(0.2));
  CHECK(s.is_empty());
  CHECK(s.span().begin == 0.0);
  CHECK(s.span().end == 1.0);
}

TEST_CASE("generate_events needs two frames") {
  LatentVideo video({still(0.42, 0.0)});
  CHECK_THROWS_AS(generate_events(video, Threshold(0.2)), Error);
}

TEST_CASE("log ramp crosses levels at closed-form times") {
  // Log intensity rises linearly by 2.5c over [0, 1]: the +c and +2c levels
  // are crossed at t = 0.4 and t = 0.8.
  const double c = 0.2;
  const double v0 = 0.2;
  Frame f0 = Frame::constant(2, 2, v0, ExposureWindow{0.0, 0.0});
  Frame f1 =
      Frame::constant(2, 2, v0 * std::exp(2.5 * c), ExposureWindow{1.0, 0.0});
  EventStream s = generate_events(LatentVideo({f0, f1}), Threshold(c));

  REQUIRE(s.size() == 8);  // two events for each of the four pixels
  int per_pixel[4] = {0, 0, 0, 0};
  for (const Event& e : s.events()) {
    CHECK(e.p == 1);
    int idx = e.y * 2 + e.x;
    double expected = per_pixel[idx] == 0 ? 0.4 : 0.8;
    CHECK(e.t == doctest::Approx(expected).epsilon(1e-9));
    per_pixel[idx] += 1;
  }
}

TEST_CASE("symmetric rise and fall emit matching opposite events") {
  const double c = 0.25;
  const double v0 = 0.3;
  Frame f0 = Frame::constant(1, 1, v0, ExposureWindow{0.0, 0.0});
  Frame f1 =
      Frame::constant(1, 1, v0 * std::exp(1.2 * c), ExposureWindow{1.0, 0.0});
  Frame f2 = Frame::constant(1, 1, v0, ExposureWindow{2.0, 0.0});
  EventStream s = generate_events(LatentVideo({f0, f1, f2}), Threshold(c));

  REQUIRE(s.size() == 2);
  CHECK(s.events()[0].p == 1);
  CHECK(s.events()[0].t == doctest::Approx(1.0 / 1.2).epsilon(1e-9));
  CHECK(s.events()[1].p == -1);
  // The falling crossing sits exactly at the video end; it must be pulled
  // strictly inside the span.
  CHECK(s.events()[1].t < 2.0);
  CHECK(s.events()[1].t == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("generated events are sorted and strictly inside the span") {
  std::mt19937_64 rng = evtest::make_rng(601);
  std::uniform_real_distribution<double> jitter(-0.3, 0.3);
  std::vector<Frame> frames;
  const int w = 8, h = 8;
  std::vector<double> logs(static_cast<std::size_t>(w) * h);
  for (auto& v : logs) {
    v = std::log(0.3);
  }
  for (int k = 0; k < 12; ++k) {
    std::vector<double> vals(logs.size());
    for (std::size_t i = 0; i < logs.size(); ++i) {
      logs[i] += jitter(rng) * 0.2;
      logs[i] = std::clamp(logs[i], std::log(0.15), std::log(0.9));
      vals[i] = std::exp(logs[i]);
    }
    frames.emplace_back(w, h, std::move(vals),
                        ExposureWindow{0.1 * k, 0.0});
  }
  LatentVideo video(std::move(frames));
  EventStream s = generate_events(video, Threshold(0.07));
  // Enough events that the ordering checks below actually see traffic.
  CHECK(s.size() > 50);
  double prev = -1.0;
  for (const Event& e : s.events()) {
    CHECK(e.t > video.span().begin);
    CHECK(e.t < video.span().end);
    CHECK(e.t >= prev);
    prev = e.t;
  }
}

TEST_CASE("regenerated events preserve per-interval net counts") {
  // Dense model-exact sampling of a synthetic stream, pushed back through
  // the generator: per pixel and inter-sample interval the net count must
  // survive the round trip (individual events inside an interval may
  // legitimately cancel).
  evtest::SceneSpec spec;
  spec.width = 12;
  spec.height = 12;
  spec.events_first = 250;
  spec.events_gap = 60;
  spec.events_second = 250;
  spec.seed = 602;
  evtest::Scene scene = evtest::make_scene(spec);

  std::vector<double> samples;
  const double t0 = scene.stream.span().begin;
  const double t1 = scene.stream.span().end;
  const int n = 160;
  for (int k = 0; k <= n; ++k) {
    samples.push_back(t0 + (t1 - t0) * k / n);
  }
  ModelExactVideo exact =
      model_exact_video(scene.base, scene.stream, samples, scene.c);
  EventStream regen = generate_events(exact.video, scene.c);

  for (int y = 0; y < spec.height; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      REQUIRE(!exact.clamped_anywhere(x, y));
      for (int k = 0; k + 1 <= n; ++k) {
        long long want =
            signed_count(scene.stream, x, y, samples[k], samples[k + 1]);
        long long got = signed_count(regen, x, y, samples[k], samples[k + 1]);
        CHECK(want == got);
      }
    }
  }
}

TEST_CASE("synthesize_blur averages the frames inside the window") {
  LatentVideo video({still(0.2, 0.0), still(0.4, 0.5), still(0.6, 1.0)});
  Frame blur = synthesize_blur(video, ExposureWindow{0.0, 1.0});
  for (double v : blur.data()) {
    CHECK(v == doctest::Approx(0.4).epsilon(1e-15));
  }
  CHECK(blur.exposure().t_start == 0.0);
  CHECK(blur.exposure().duration == 1.0);

  Frame single = synthesize_blur(video, ExposureWindow{0.4, 0.2});
  for (double v : single.data()) {
    CHECK(v == 0.4);
  }

  CHECK_THROWS_AS(synthesize_blur(video, ExposureWindow{1.1, 0.2}), Error);
}

TEST_CASE("model_exact_video with no events repeats the base frame") {
  Frame base = Frame::constant(3, 3, 0.31, ExposureWindow{0.0, 0.0});
  EventStream s = EventStream::empty(3, 3, TimeSpan{0.0, 1.0});
  ModelExactVideo exact =
      model_exact_video(base, s, {0.25, 0.5, 1.0}, Threshold(0.2));
  REQUIRE(exact.video.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    for (double v : exact.video.frame(k).data()) {
      CHECK(v == 0.31);
    }
  }
  CHECK_FALSE(exact.clamped_anywhere(1, 1));
}

TEST_CASE("model_exact_video applies the exponential count factor") {
  Frame base = Frame::constant(1, 1, 0.5, ExposureWindow{0.0, 0.0});
  EventStream s(1, 1, {Event{0.3, 0, 0, 1}}, TimeSpan{0.0, 1.0});
  ModelExactVideo exact = model_exact_video(base, s, {0.5}, Threshold(0.2));
  CHECK(exact.video.frame(0).at(0, 0) ==
        doctest::Approx(0.5 * std::exp(0.2)).epsilon(1e-15));
  CHECK_FALSE(exact.clamped_anywhere(0, 0));
}

TEST_CASE("model_exact_video records clamping") {
  Frame base = Frame::constant(1, 1, 0.9, ExposureWindow{0.0, 0.0});
  std::vector<Event> events = {Event{0.2, 0, 0, 1}, Event{0.4, 0, 0, 1}};
  EventStream s(1, 1, std::move(events), TimeSpan{0.0, 1.0});
  ModelExactVideo exact =
      model_exact_video(base, s, {0.1, 0.5}, Threshold(0.5));
  CHECK(exact.video.frame(0).at(0, 0) == 0.9);
  CHECK(exact.video.frame(1).at(0, 0) == 1.0);  // 0.9 * e ≈ 2.45, clamped
  CHECK(exact.clamped[0][0] == 0);
  CHECK(exact.clamped[1][0] == 1);
  CHECK(exact.clamped_anywhere(0, 0));
}

TEST_CASE("model_exact_video samples may precede the base time") {
  Frame base = Frame::constant(1, 1, 0.5, ExposureWindow{0.6, 0.0});
  EventStream s(1, 1, {Event{0.3, 0, 0, 1}}, TimeSpan{0.0, 1.0});
  ModelExactVideo exact =
      model_exact_video(base, s, {0.1, 0.6, 0.9}, Threshold(0.2));
  CHECK(exact.video.frame(0).at(0, 0) ==
        doctest::Approx(0.5 * std::exp(-0.2)).epsilon(1e-15));
  CHECK(exact.video.frame(1).at(0, 0) == 0.5);
  CHECK(exact.video.frame(2).at(0, 0) == 0.5);
}

TEST_CASE("model_exact_video validates inputs") {
  Frame base = Frame::constant(2, 2, 0.5, ExposureWindow{0.0, 0.0});
  EventStream s = EventStream::empty(2, 2, TimeSpan{0.0, 1.0});
  CHECK_THROWS_AS(model_exact_video(base, s, {}, Threshold(0.2)), Error);
  CHECK_THROWS_AS(model_exact_video(base, s, {0.5, 0.5}, Threshold(0.2)),
                  Error);
  CHECK_THROWS_AS(model_exact_video(base, s, {2.0}, Threshold(0.2)), Error);
  Frame blurry = Frame::constant(2, 2, 0.5, ExposureWindow{0.0, 0.5});
  CHECK_THROWS_AS(model_exact_video(blurry, s, {0.5}, Threshold(0.2)), Error);
}

TEST_CASE("blur of a dense model-exact sampling divides back to the latent") {
  evtest::SceneSpec spec;
  spec.width = 16;
  spec.height = 16;
  spec.cells = 96;
  spec.seed = 603;
  evtest::Scene scene = evtest::make_scene(spec);

  IntegralMap e = double_integral(scene.stream, 0.13, scene.win_first, scene.c);
  Frame latent = reconstruct_latent(scene.blur_first, e);
  Frame truth = scene.latent_at(0.13);
  CHECK(evtest::max_abs_diff(latent, truth) < 1e-6);
}
