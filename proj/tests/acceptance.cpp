// Acceptance gate: one numbered check per contract the engine must honor,
// each printing a single [PASS]/[FAIL] line. The exit code is the number of
// failed criteria. Run with a criterion number (1-9) or "all".

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "evsharp/calibrate.hpp"
#include "evsharp/integral.hpp"
#include "evsharp/io.hpp"
#include "evsharp/metrics.hpp"
#include "evsharp/reconstruct.hpp"
#include "evsharp/simulate.hpp"
#include "test_support.hpp"

using namespace evsharp;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof(buf), pattern, args);
  va_end(args);
  return buf;
}

double mean_abs_diff(const Frame& a, const Frame& b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    sum += std::abs(a.data()[i] - b.data()[i]);
  }
  return sum / static_cast<double>(a.data().size());
}

bool same_bits(const Frame& a, const Frame& b) {
  return a.data().size() == b.data().size() &&
         std::memcmp(a.data().data(), b.data().data(),
                     a.data().size() * sizeof(double)) == 0;
}

bool any_clamped(const ModelExactVideo& exact, int width, int height) {
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (exact.clamped_anywhere(x, y)) {
        return true;
      }
    }
  }
  return false;
}

Frame pattern_frame(int pattern, int width, int height, std::uint64_t seed,
                    ExposureWindow exposure) {
  std::vector<double> values(static_cast<std::size_t>(width) * height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      values[static_cast<std::size_t>(y) * width + x] =
          evtest::pattern_value(pattern, x, y, width, height, seed);
    }
  }
  return Frame(width, height, std::move(values), exposure);
}

// Random stream whose per-pixel running count never leaves [-2, 2], so a
// base image in [0.15, 0.33] stays inside the intensity range for any
// threshold up to 0.5. Event times are arbitrary doubles, deliberately not
// aligned to any sampling grid.
EventStream balanced_stream(std::mt19937_64& rng, int width, int height,
                            int count, double t_lo, double t_hi,
                            TimeSpan span) {
  std::uniform_real_distribution<double> time_dist(t_lo, t_hi);
  std::uniform_int_distribution<int> x_dist(0, width - 1);
  std::uniform_int_distribution<int> y_dist(0, height - 1);
  std::uniform_int_distribution<int> p_dist(0, 1);
  std::vector<double> times(count);
  for (double& t : times) {
    t = time_dist(rng);
  }
  std::sort(times.begin(), times.end());
  std::vector<int> running(static_cast<std::size_t>(width) * height, 0);
  std::vector<Event> events;
  events.reserve(count);
  for (double t : times) {
    int x = x_dist(rng);
    int y = y_dist(rng);
    std::size_t i = static_cast<std::size_t>(y) * width + x;
    int pol = p_dist(rng) ? 1 : -1;
    if (std::abs(running[i] + pol) > 2) {
      pol = -pol;
    }
    running[i] += pol;
    events.push_back(Event{t, static_cast<std::uint16_t>(x),
                           static_cast<std::uint16_t>(y),
                           static_cast<std::int8_t>(pol)});
  }
  return EventStream(width, height, std::move(events), span);
}

// --- criterion 1: analytic evaluator vs the midpoint oracle -----------------

// Streams are snapped to the oracle's own cell grid inside the window, which
// makes the 1e6-step midpoint rule exact there; everything left is the
// analytic path's floating-point error.
bool criterion_1(std::string& detail) {
  auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng = evtest::make_rng(0xACC1);
  std::uniform_int_distribution<int> dim(1, 64);
  std::uniform_int_distribution<int> count_dist(50, 10000);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> c_dist(0.05, 0.6);
  const long long steps = 1000000;
  const int cases = 120;
  double worst = 0.0;
  for (int i = 0; i < cases; ++i) {
    int w = dim(rng);
    int h = dim(rng);
    double span_len = 0.8 + 1.2 * unit(rng);
    TimeSpan span{0.0, span_len};
    double duration = (0.1 + 0.35 * unit(rng)) * span_len;
    double t_s = unit(rng) * (span_len - duration);
    ExposureWindow win{t_s, duration};
    EventStream stream = evtest::random_grid_stream(rng, w, h, count_dist(rng),
                                                    span, win, steps);
    Threshold c(c_dist(rng));
    double m = 0.0;
    switch (i % 5) {
      case 0:
        m = t_s + unit(rng) * duration;
        break;
      case 1:
        m = t_s;
        break;
      case 2:
        m = win.t_end();
        break;
      case 3:
        m = unit(rng) * t_s;
        break;
      default:
        m = win.t_end() + unit(rng) * (span_len - win.t_end());
        break;
    }
    IntegralMap analytic = double_integral(stream, m, win, c);
    IntegralMap oracle = quadrature_oracle(stream, m, win, c, steps);
    worst = std::max(worst, evtest::max_rel_diff(analytic, oracle));
  }
  double elapsed = seconds_since(start);
  detail = fmt("decomposition vs 1e6-step oracle: worst rel %.3g over %d "
               "streams, %.1fs (tol 1e-6, 120s)",
               worst, cases, elapsed);
  return worst < 1e-6 && elapsed < 120.0;
}

// --- criterion 2: out-of-exposure window composition -------------------------

// T1*E1 + T0*E0 must reproduce T2*E2 when the two windows tile the third.
// All endpoints are multiples of 1/1024 so the weight arithmetic is exact
// and the 1e-12 bound measures only the integral sums themselves.
bool criterion_2(std::string& detail) {
  std::mt19937_64 rng = evtest::make_rng(0xACC2);
  std::uniform_int_distribution<int> dim(4, 32);
  std::uniform_int_distribution<int> count_dist(100, 3000);
  std::uniform_int_distribution<int> ka_dist(0, 1024);
  std::uniform_int_distribution<int> gap_dist(16, 512);
  std::uniform_int_distribution<int> km_dist(0, 2048);
  std::uniform_real_distribution<double> c_dist(0.1, 0.5);
  const int cases = 100;
  double worst = 0.0;
  for (int i = 0; i < cases; ++i) {
    int w = dim(rng);
    int h = dim(rng);
    TimeSpan span{0.0, 2.0};
    EventStream stream =
        evtest::random_stream(rng, w, h, count_dist(rng), span);
    Threshold c(c_dist(rng));
    double a = ka_dist(rng) / 1024.0;
    double s = a + gap_dist(rng) / 1024.0;
    double b = s + gap_dist(rng) / 1024.0;
    double m = km_dist(rng) / 1024.0;
    IntegralMap whole = double_integral(stream, m, ExposureWindow{a, b - a}, c);
    IntegralMap head = double_integral(stream, m, ExposureWindow{a, s - a}, c);
    IntegralMap tail = double_integral(stream, m, ExposureWindow{s, b - s}, c);
    for (std::size_t px = 0; px < whole.data().size(); ++px) {
      double lhs = (s - a) * head.data()[px] + (b - s) * tail.data()[px];
      double rhs = (b - a) * whole.data()[px];
      worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
    }
  }
  detail = fmt("window composition identity: worst rel %.3g over %d cases "
               "(tol 1e-12)",
               worst, cases);
  return worst < 1e-12;
}

// --- criterion 3: vanishing exposure matches the sharp limit ----------------

bool criterion_3(std::string& detail) {
  std::mt19937_64 rng = evtest::make_rng(0xACC3);
  std::uniform_int_distribution<int> dim(4, 32);
  std::uniform_int_distribution<int> count_dist(200, 4000);
  std::uniform_real_distribution<double> tr_dist(0.3, 1.7);
  std::uniform_real_distribution<double> offset_dist(0.0, 0.02);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  std::uniform_real_distribution<double> c_dist(0.1, 0.4);
  const int cases = 60;
  const double tiny = 1e-9;
  double worst = 0.0;
  for (int i = 0; i < cases; ++i) {
    int w = dim(rng);
    int h = dim(rng);
    TimeSpan span{0.0, 2.0};
    EventStream raw = evtest::random_stream(rng, w, h, count_dist(rng), span);
    double t_r = tr_dist(rng);
    // Keep a small guard band behind t_r event-free: the limit statement
    // assumes no event falls inside the shrinking window itself.
    std::vector<Event> kept;
    kept.reserve(raw.size());
    for (const Event& e : raw.events()) {
      if (!(e.t > t_r && e.t <= t_r + 1e-6)) {
        kept.push_back(e);
      }
    }
    EventStream stream(w, h, std::move(kept), span);
    Threshold c(c_dist(rng));
    // The head/tail weights grow like |m - t_r| / T, so at T = 1e-9 the
    // combination loses roughly |m - t_r| * 1e7 ulps to cancellation.
    // Queries stay within 0.02 s of the window, where that loss is still
    // two orders of magnitude below the tolerance; beyond it the check
    // would measure double-precision conditioning, not the sharp limit.
    double m;
    switch (i % 4) {
      case 0:
        m = t_r;
        break;
      case 1:
        m = t_r + tiny * frac(rng);
        break;
      case 2:
        m = t_r - offset_dist(rng);
        break;
      default:
        m = t_r + offset_dist(rng);
        break;
    }
    IntegralMap blur =
        double_integral(stream, m, ExposureWindow{t_r, tiny}, c);
    IntegralMap sharp = sharp_integral(stream, m, t_r, c);
    worst = std::max(worst, evtest::max_rel_diff(blur, sharp));
  }
  detail = fmt("T=1e-9 window vs sharp integral: worst rel %.3g over %d "
               "cases, |m - t_r| <= 0.02 (tol 1e-6)",
               worst, cases);
  return worst < 1e-6;
}

// --- criterion 4: model-exact end-to-end restoration -------------------------

bool criterion_4(std::string& detail) {
  auto start = std::chrono::steady_clock::now();
  evtest::SceneSpec spec;
  spec.width = 64;
  spec.height = 64;
  spec.events_first = 2500;
  spec.events_gap = 600;
  spec.events_second = 2500;
  spec.seed = 0xACC4;
  evtest::Scene scene = evtest::make_scene(spec);

  const double hull_begin = scene.win_first.t_start;
  const double hull_end = scene.win_second.t_end();
  std::vector<double> queries(15);
  for (int k = 0; k < 15; ++k) {
    queries[k] = hull_begin + (hull_end - hull_begin) * k / 14.0;
  }

  ModelExactVideo truth =
      model_exact_video(scene.base, scene.stream, queries, scene.c);
  if (any_clamped(truth, spec.width, spec.height)) {
    detail = "scene unexpectedly clamped; exactness oracle void";
    return false;
  }

  std::vector<Frame> restored = enhance(scene.blur_first, scene.blur_second,
                                        scene.stream, queries, scene.c);
  double worst_lib = 0.0;
  for (int k = 0; k < 15; ++k) {
    worst_lib = std::max(
        worst_lib, evtest::max_abs_diff(restored[k], truth.video.frame(k)));
  }

  bool cli_ok = true;
  double worst_cli = 0.0;
  const char* cli = std::getenv("EVSHARP_CLI");
  if (cli != nullptr) {
    evtest::TempDir dir;
    save_events(dir.str("events.evs"), scene.stream);
    save_frame(dir.str("b0.raw"), scene.blur_first);
    save_frame(dir.str("b1.raw"), scene.blur_second);
    std::string query_spec;
    char buf[40];
    for (int k = 0; k < 15; ++k) {
      std::snprintf(buf, sizeof(buf), "%.17g", queries[k]);
      query_spec += (k > 0 ? "," : "");
      query_spec += buf;
    }
    std::string cmd = std::string("'") + cli + "' enhance --events '" +
                      dir.str("events.evs") + "' --frames '" +
                      dir.str("b0.raw") + "," + dir.str("b1.raw") +
                      "' --windows '0,0.4;0.7,0.5' --c 0.2 --queries '" +
                      query_spec + "' --format raw --out '" + dir.str("out") +
                      "' > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    cli_ok = WIFEXITED(status) && WEXITSTATUS(status) == 0;
    if (cli_ok) {
      for (int k = 0; k < 15; ++k) {
        char name[40];
        std::snprintf(name, sizeof(name), "out/frame_%06d.raw", k);
        Frame got = load_frame(dir.str(name), ExposureWindow{queries[k], 0.0});
        worst_cli =
            std::max(worst_cli, evtest::max_abs_diff(got, truth.video.frame(k)));
      }
    }
  }

  double elapsed = seconds_since(start);
  bool pass = worst_lib < 1e-6 && cli_ok && worst_cli < 1e-6 && elapsed < 60.0;
  if (cli == nullptr) {
    detail = fmt("enhance vs model-exact truth: worst abs %.3g over 15 "
                 "queries, %.1fs; cli skipped, EVSHARP_CLI unset (tol 1e-6, 60s)",
                 worst_lib, elapsed);
  } else {
    detail = fmt("enhance vs model-exact truth: lib worst abs %.3g, cli %s "
                 "worst abs %.3g, %.1fs (tol 1e-6, 60s)",
                 worst_lib, cli_ok ? "ok" : "FAILED", worst_cli, elapsed);
  }
  return pass;
}

// --- criterion 5: loss nullity and separation at the true threshold ---------

bool criterion_5(std::string& detail) {
  evtest::SceneSpec spec;
  spec.width = 64;
  spec.height = 64;
  spec.events_first = 2500;
  spec.events_gap = 600;
  spec.events_second = 2500;
  spec.seed = 0xACC4;  // the criterion-4 scene, rebuilt
  evtest::Scene scene = evtest::make_scene(spec);
  std::vector<double> queries = default_calibration_queries(
      scene.blur_first.exposure(), scene.blur_second.exposure());
  LossWeights weights;
  double at_true = total_loss(scene.blur_first, scene.blur_second, scene.stream,
                              queries, Threshold(spec.c), weights)
                       .total;
  double at_double = total_loss(scene.blur_first, scene.blur_second,
                                scene.stream, queries, Threshold(2.0 * spec.c),
                                weights)
                         .total;
  detail = fmt("total loss %.3g at true c, %.3g at doubled c (need < 1e-6 "
               "and > 1e-3)",
               at_true, at_double);
  return at_true < 1e-6 && at_double > 1e-3;
}

// --- criterion 6: threshold recovery on distinct scenes ----------------------

bool criterion_6(std::string& detail) {
  struct Setup {
    double c;
    int pattern;
    std::uint64_t seed;
    ExposureWindow win_first;
    ExposureWindow win_second;
  };
  const Setup setups[] = {
      {0.1, 0, 0xACC6, ExposureWindow{0.0, 0.4}, ExposureWindow{0.7, 0.5}},
      {0.2, 1, 0xACC7, ExposureWindow{0.1, 0.5}, ExposureWindow{0.9, 0.4}},
      {0.5, 2, 0xACC8, ExposureWindow{0.0, 0.3}, ExposureWindow{0.55, 0.45}},
  };
  std::string parts;
  bool pass = true;
  for (const Setup& setup : setups) {
    evtest::SceneSpec spec;
    spec.width = 32;
    spec.height = 32;
    spec.c = setup.c;
    spec.pattern = setup.pattern;
    spec.seed = setup.seed;
    spec.win_first = setup.win_first;
    spec.win_second = setup.win_second;
    spec.events_first = 800;
    spec.events_gap = 200;
    spec.events_second = 800;
    evtest::Scene scene = evtest::make_scene(spec);
    std::vector<double> queries = default_calibration_queries(
        scene.blur_first.exposure(), scene.blur_second.exposure());
    LossWeights weights;
    Threshold first = estimate_threshold(scene.blur_first, scene.blur_second,
                                         scene.stream, queries, 0.05, 0.8,
                                         weights);
    Threshold second = estimate_threshold(scene.blur_first, scene.blur_second,
                                          scene.stream, queries, 0.05, 0.8,
                                          weights);
    double rel = std::abs(first.value() - setup.c) / setup.c;
    bool deterministic = first.value() == second.value();
    pass = pass && rel <= 0.05 && deterministic;
    parts += fmt(" c=%.1f:%.4f(rel %.2g%s)", setup.c, first.value(), rel,
                 deterministic ? "" : ", NONDETERMINISTIC");
  }
  detail = "recovered" + parts + " (tol 5%, bitwise rerun)";
  return pass;
}

// --- criterion 7: fusion weight and membership contract ----------------------

bool criterion_7(std::string& detail) {
  std::mt19937_64 rng = evtest::make_rng(0xACC9);
  std::uniform_real_distribution<double> log_dist(-1.5, 1.5);
  std::uniform_real_distribution<double> val_dist(0.1, 0.9);
  const ExposureWindow win_a{0.0, 0.25};
  const ExposureWindow win_b{0.75, 0.25};
  const int w = 16;
  const int h = 16;
  const std::size_t n = static_cast<std::size_t>(w) * h;

  double worst_sum = 0.0;
  bool nonneg = true;
  bool convex = true;
  for (int round = 0; round < 40; ++round) {
    std::vector<double> ea(n);
    std::vector<double> eb(n);
    std::vector<double> la(n);
    std::vector<double> lb(n);
    for (std::size_t i = 0; i < n; ++i) {
      ea[i] = std::exp(log_dist(rng));
      eb[i] = std::exp(log_dist(rng));
      la[i] = val_dist(rng);
      lb[i] = val_dist(rng);
    }
    IntegralMap map_a(w, h, ea, 0.5, win_a);
    IntegralMap map_b(w, h, eb, 0.5, win_b);
    FusionWeights weights = FusionWeights::from_integrals(map_a, map_b);
    for (std::size_t i = 0; i < n; ++i) {
      worst_sum = std::max(
          worst_sum, std::abs(weights.first()[i] + weights.second()[i] - 1.0));
      nonneg = nonneg && weights.first()[i] >= 0.0 && weights.second()[i] >= 0.0;
    }
    Frame lat_a(w, h, la, ExposureWindow{0.5, 0.0});
    Frame lat_b(w, h, lb, ExposureWindow{0.5, 0.0});
    Frame fused = apf_fuse(lat_a, lat_b, map_a, map_b, 0.5, win_a, win_b);
    for (std::size_t i = 0; i < n; ++i) {
      double lo = std::min(la[i], lb[i]);
      double hi = std::max(la[i], lb[i]);
      convex = convex && fused.data()[i] >= lo && fused.data()[i] <= hi;
    }
  }

  // Boundary queries must be bit-for-bit the single-sided reconstruction.
  evtest::SceneSpec spec;
  spec.width = 32;
  spec.height = 32;
  spec.events_first = 800;
  spec.events_gap = 200;
  spec.events_second = 800;
  spec.seed = 0xACCA;
  evtest::Scene scene = evtest::make_scene(spec);
  const double boundaries[] = {scene.win_first.t_start, scene.win_first.t_end(),
                               scene.win_second.t_start,
                               scene.win_second.t_end()};
  std::vector<double> queries(boundaries, boundaries + 4);
  std::vector<Frame> fused = enhance(scene.blur_first, scene.blur_second,
                                     scene.stream, queries, scene.c);
  bool boundary_ok = true;
  for (int k = 0; k < 4; ++k) {
    bool first_side = scene.win_first.contains(queries[k]);
    const Frame& ref = first_side ? scene.blur_first : scene.blur_second;
    ExposureWindow win = first_side ? scene.win_first : scene.win_second;
    Frame pure = reconstruct_latent(
        ref, integral_for(scene.stream, queries[k], win, scene.c));
    boundary_ok = boundary_ok && same_bits(fused[k], pure);
  }

  detail = fmt("weight sum off by %.3g, nonneg %s, convex bound %s, boundary "
               "bits %s (tol 1e-15)",
               worst_sum, nonneg ? "ok" : "VIOLATED",
               convex ? "ok" : "VIOLATED", boundary_ok ? "ok" : "DIFFER");
  return worst_sum <= 1e-15 && nonneg && convex && boundary_ok;
}

// --- criterion 8: reconstruction error shrinks linearly with sampling -------

bool criterion_8(std::string& detail) {
  std::mt19937_64 rng = evtest::make_rng(0xACCB);
  const int w = 32;
  const int h = 32;
  const Threshold c(0.2);
  const ExposureWindow win{0.0, 0.4};
  const TimeSpan span{0.0, 0.4};
  EventStream stream = balanced_stream(rng, w, h, 600, 0.004, 0.396, span);
  Frame base = pattern_frame(0, w, h, 0xACCB, ExposureWindow{0.0, 0.0});
  const double m = 0.17;

  ModelExactVideo truth = model_exact_video(base, stream, {m}, c);
  if (any_clamped(truth, w, h)) {
    detail = "scene unexpectedly clamped; exactness oracle void";
    return false;
  }
  IntegralMap integral = double_integral(stream, m, win, c);

  double errors[3];
  const int densities[3] = {256, 512, 1024};
  for (int d = 0; d < 3; ++d) {
    std::vector<double> mids(densities[d]);
    double step = win.duration / densities[d];
    for (int k = 0; k < densities[d]; ++k) {
      mids[k] = win.t_start + (k + 0.5) * step;
    }
    ModelExactVideo sampled = model_exact_video(base, stream, mids, c);
    if (any_clamped(sampled, w, h)) {
      detail = "sampled video unexpectedly clamped";
      return false;
    }
    Frame blur = synthesize_blur(sampled.video, win);
    Frame latent = reconstruct_latent(blur, integral);
    errors[d] = mean_abs_diff(latent, truth.video.frame(0));
  }

  double ratio_1 = errors[1] / errors[0];
  double ratio_2 = errors[2] / errors[1];
  detail = fmt("division error %.3g -> %.3g -> %.3g at 256/512/1024 samples, "
               "ratios %.2f, %.2f (need <= 0.6)",
               errors[0], errors[1], errors[2], ratio_1, ratio_2);
  return errors[0] > 1e-9 && ratio_1 <= 0.6 && ratio_2 <= 0.6;
}

// --- criterion 9: metric sanity ---------------------------------------------

bool criterion_9(std::string& detail) {
  Frame a = pattern_frame(2, 32, 32, 0xACCC, ExposureWindow{0.0, 0.0});
  std::vector<double> shifted = a.data();
  for (double& v : shifted) {
    v += 0.1;
  }
  Frame b(32, 32, std::move(shifted), a.exposure());

  double self = psnr(a, a);
  double offset_ab = psnr(a, b);
  double offset_ba = psnr(b, a);
  double structural = ssim(a, a);

  bool pass = std::isinf(self) && self > 0.0 &&
              std::abs(offset_ab - 20.0) <= 0.01 &&
              std::abs(offset_ba - 20.0) <= 0.01 &&
              std::abs(structural - 1.0) <= 1e-12;
  detail = fmt("psnr self %s, 0.1 offset %.4f dB, ssim self 1%+.3g (need inf, "
               "20 +- 0.01, 1 +- 1e-12)",
               std::isinf(self) ? "inf" : "FINITE", offset_ab,
               structural - 1.0);
  return pass;
}

using CriterionFn = bool (*)(std::string&);

const CriterionFn kCriteria[9] = {criterion_1, criterion_2, criterion_3,
                                  criterion_4, criterion_5, criterion_6,
                                  criterion_7, criterion_8, criterion_9};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  std::string which = argc > 1 ? argv[1] : "all";
  if (which == "all") {
    for (int n = 1; n <= 9; ++n) {
      selected.push_back(n);
    }
  } else {
    char* end = nullptr;
    long n = std::strtol(which.c_str(), &end, 10);
    if (end == nullptr || *end != '\0' || n < 1 || n > 9) {
      std::fprintf(stderr, "usage: %s [all|1..9]\n", argv[0]);
      return 64;
    }
    selected.push_back(static_cast<int>(n));
  }

  int failures = 0;
  for (int n : selected) {
    std::string detail;
    bool pass = false;
    try {
      pass = kCriteria[n - 1](detail);
    } catch (const std::exception& ex) {
      detail = std::string("threw: ") + ex.what();
    }
    std::printf("[%s] criterion-%d %s\n", pass ? "PASS" : "FAIL", n,
                detail.c_str());
    failures += pass ? 0 : 1;
  }
  return failures;
}
