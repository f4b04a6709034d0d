#include "evsharp/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "evsharp/errors.hpp"
#include "evsharp/numeric.hpp"

namespace evsharp {

LatentVideo::LatentVideo(std::vector<Frame> frames)
    : frames_(std::move(frames)) {
  if (frames_.empty()) {
    raise(ErrorKind::InvalidInput, "video needs at least one frame");
  }
  const int w = frames_.front().width();
  const int h = frames_.front().height();
  double prev = -std::numeric_limits<double>::infinity();
  for (const Frame& f : frames_) {
    if (f.width() != w || f.height() != h) {
      raise(ErrorKind::DimensionMismatch, "video frames differ in shape");
    }
    if (!f.exposure().is_sharp()) {
      raise(ErrorKind::InvalidInput, "video frames must be instantaneous");
    }
    if (!(f.exposure().t_start > prev)) {
      raise(ErrorKind::InvalidInput,
            "video timestamps must be strictly increasing");
    }
    prev = f.exposure().t_start;
  }
}

EventStream generate_events(const LatentVideo& video, Threshold c) {
  if (video.size() < 2) {
    raise(ErrorKind::InvalidInput, "event generation needs at least two frames");
  }
  const int w = video.width();
  const int h = video.height();
  const std::size_t pixels = static_cast<std::size_t>(w) * h;
  const double cv = c.value();
  // Tolerance for trajectories that end exactly on a level: counting the
  // crossing now instead of dropping it keeps analytically constructed
  // inputs from losing knife-edge events to rounding.
  const double slack = 1e-9 * cv;

  std::vector<double> log_a(pixels);
  std::vector<double> log_b(pixels);
  std::vector<double> log_base(pixels);
  std::vector<long long> level(pixels, 0);
  for (std::size_t i = 0; i < pixels; ++i) {
    log_base[i] = std::log(video.frame(0).data()[i]);
  }
  log_a = log_base;

  std::vector<Event> events;
  std::vector<Event> staging;
  for (std::size_t k = 0; k + 1 < video.size(); ++k) {
    const double t_a = video.timestamp(k);
    const double t_b = video.timestamp(k + 1);
    const double dt = t_b - t_a;
    const auto& next = video.frame(k + 1).data();
    for (std::size_t i = 0; i < pixels; ++i) {
      log_b[i] = std::log(next[i]);
    }
    staging.clear();
    for (std::size_t i = 0; i < pixels; ++i) {
      const double la = log_a[i];
      const double lb = log_b[i];
      if (la == lb) {
        continue;
      }
      const auto x = static_cast<std::uint16_t>(i % w);
      const auto y = static_cast<std::uint16_t>(i / w);
      if (lb > la) {
        while (true) {
          double target = log_base[i] + static_cast<double>(level[i] + 1) * cv;
          if (target > lb + slack) {
            break;
          }
          double tt = t_a + (target - la) / (lb - la) * dt;
          tt = std::min(tt, t_b);
          tt = std::max(tt, t_a + dt * 1e-12);
          staging.push_back(Event{tt, x, y, 1});
          level[i] += 1;
        }
      } else {
        while (true) {
          double target = log_base[i] + static_cast<double>(level[i] - 1) * cv;
          if (target < lb - slack) {
            break;
          }
          double tt = t_a + (target - la) / (lb - la) * dt;
          tt = std::min(tt, t_b);
          tt = std::max(tt, t_a + dt * 1e-12);
          staging.push_back(Event{tt, x, y, -1});
          level[i] -= 1;
        }
      }
    }
    std::stable_sort(staging.begin(), staging.end(),
                     [](const Event& a, const Event& b) { return a.t < b.t; });
    events.insert(events.end(), staging.begin(), staging.end());
    std::swap(log_a, log_b);
  }

  const double t_first = video.timestamp(0);
  const double t_last = video.timestamp(video.size() - 1);
  // Span endpoints are exclusive for generated events; pull crossings that
  // landed exactly on the final timestamp just inside.
  for (auto it = events.rbegin(); it != events.rend() && it->t >= t_last;
       ++it) {
    it->t = std::nextafter(t_last, t_first);
  }
  return EventStream(w, h, std::move(events), TimeSpan{t_first, t_last});
}

Frame synthesize_blur(const LatentVideo& video, ExposureWindow window) {
  if (!(window.duration >= 0.0)) {
    raise(ErrorKind::InvalidInput, "blur window duration must be >= 0");
  }
  const std::size_t pixels =
      static_cast<std::size_t>(video.width()) * video.height();
  std::vector<KahanSum> acc(pixels);
  std::size_t used = 0;
  for (std::size_t k = 0; k < video.size(); ++k) {
    if (!window.contains(video.timestamp(k))) {
      continue;
    }
    const auto& data = video.frame(k).data();
    for (std::size_t i = 0; i < pixels; ++i) {
      acc[i].add(data[i]);
    }
    ++used;
  }
  if (used == 0) {
    raise(ErrorKind::EmptyWindow, "no video frames inside the blur window");
  }
  std::vector<double> mean(pixels);
  for (std::size_t i = 0; i < pixels; ++i) {
    mean[i] = acc[i].value() / static_cast<double>(used);
  }
  return Frame::clamped(video.width(), video.height(), std::move(mean),
                        window);
}

bool ModelExactVideo::clamped_anywhere(int x, int y) const {
  if (video.size() == 0) {
    return false;
  }
  std::size_t i =
      static_cast<std::size_t>(y) * video.width() + static_cast<std::size_t>(x);
  for (const auto& mask : clamped) {
    if (mask[i]) {
      return true;
    }
  }
  return false;
}

ModelExactVideo model_exact_video(const Frame& base, const EventStream& stream,
                                  const std::vector<double>& samples,
                                  Threshold c) {
  if (!base.exposure().is_sharp()) {
    raise(ErrorKind::InvalidInput, "base frame must be instantaneous");
  }
  if (base.width() != stream.width() || base.height() != stream.height()) {
    raise(ErrorKind::DimensionMismatch, "base frame and stream differ in shape");
  }
  if (samples.empty()) {
    raise(ErrorKind::InvalidInput, "at least one sample time is required");
  }
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    if (!(samples[i] < samples[i + 1])) {
      raise(ErrorKind::InvalidInput, "sample times must be strictly increasing");
    }
  }
  const double t_ref = base.exposure().t_start;
  const double lo = std::min(t_ref, samples.front());
  const double hi = std::max(t_ref, samples.back());
  if (!stream.covers(lo, hi)) {
    raise(ErrorKind::Coverage, "stream span does not cover base and samples");
  }

  const int w = base.width();
  const int h = base.height();
  const std::size_t pixels = static_cast<std::size_t>(w) * h;
  const double cv = c.value();
  PixelEventIndex index(stream);

  std::vector<std::vector<double>> values(
      samples.size(), std::vector<double>(pixels));
  std::vector<std::vector<std::uint8_t>> clamped(
      samples.size(), std::vector<std::uint8_t>(pixels, 0));

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      auto bucket = index.at(x, y);
      long long base_count = 0;
      for (const Event& e : bucket) {
        if (e.t <= t_ref) {
          base_count += e.p;
        }
      }
      std::size_t cursor = 0;
      long long running = 0;
      for (std::size_t s = 0; s < samples.size(); ++s) {
        while (cursor < bucket.size() && bucket[cursor].t <= samples[s]) {
          running += bucket[cursor].p;
          ++cursor;
        }
        double raw = base.data()[i] *
                     std::exp(cv * static_cast<double>(running - base_count));
        if (raw < kIntensityFloor || raw > 1.0) {
          clamped[s][i] = 1;
        }
        values[s][i] = raw;
      }
    }
  }

  std::vector<Frame> frames;
  frames.reserve(samples.size());
  for (std::size_t s = 0; s < samples.size(); ++s) {
    frames.push_back(Frame::clamped(w, h, std::move(values[s]),
                                    ExposureWindow{samples[s], 0.0}));
  }
  return ModelExactVideo{LatentVideo(std::move(frames)), std::move(clamped)};
}

}  // namespace evsharp
