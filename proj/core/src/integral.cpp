#include "evsharp/integral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evsharp/errors.hpp"
#include "evsharp/numeric.hpp"

namespace evsharp {

Threshold::Threshold(double value) : value_(value) {
  if (!std::isfinite(value_) || value_ <= 0.0) {
    raise(ErrorKind::InvalidInput, "threshold must be finite and positive");
  }
}

IntegralMap::IntegralMap(int width, int height, std::vector<double> values,
                         double query_time, ExposureWindow window)
    : width_(width),
      height_(height),
      query_time_(query_time),
      window_(window),
      values_(std::move(values)) {
  if (width_ <= 0 || height_ <= 0 ||
      values_.size() != static_cast<std::size_t>(width_) * height_) {
    raise(ErrorKind::InvalidInput, "integral map buffer does not match geometry");
  }
  for (double v : values_) {
    if (!std::isfinite(v) || v <= 0.0) {
      raise(ErrorKind::InvalidInput,
            "integral map values must be positive and finite");
    }
  }
}

double IntegralMap::at(int x, int y) const {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) {
    raise(ErrorKind::Bounds, "pixel outside integral map");
  }
  return values_[static_cast<std::size_t>(y) * width_ + x];
}

IntegralMap canonical_integral(const EventStream& canonical, Threshold c) {
  if (canonical.span().begin != 0.0) {
    raise(ErrorKind::InvalidInput, "canonical stream must start at time 0");
  }
  const double length = canonical.span().end;
  const int w = canonical.width();
  const int h = canonical.height();
  std::vector<double> values(static_cast<std::size_t>(w) * h, 1.0);
  if (length == 0.0) {
    return IntegralMap(w, h, std::move(values), 0.0,
                       ExposureWindow{0.0, 0.0});
  }
  const double cv = c.value();
  PixelEventIndex index(canonical);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      auto bucket = index.at(x, y);
      if (bucket.empty()) {
        continue;
      }
      // Piecewise-constant integrand: between consecutive events the net
      // count k is fixed, so each segment contributes exp(c*k) * length.
      KahanSum acc;
      double prev = 0.0;
      long long k = 0;
      for (const Event& e : bucket) {
        if (e.t <= 0.0) {
          k += e.p;
          continue;
        }
        if (e.t > prev) {
          acc.add(std::exp(cv * static_cast<double>(k)) * (e.t - prev));
          prev = e.t;
        }
        k += e.p;
      }
      if (length > prev) {
        acc.add(std::exp(cv * static_cast<double>(k)) * (length - prev));
      }
      values[static_cast<std::size_t>(y) * w + x] = acc.value() / length;
    }
  }
  return IntegralMap(w, h, std::move(values), 0.0,
                     ExposureWindow{0.0, length});
}

IntegralMap double_integral(const EventStream& stream, double m,
                            ExposureWindow window, Threshold c) {
  if (!(window.duration > 0.0)) {
    raise(ErrorKind::InvalidInput,
          "double_integral needs a positive exposure duration");
  }
  const double t_s = window.t_start;
  const double t_e = window.t_end();
  if (!stream.covers(std::min(m, t_s), std::max(m, t_e))) {
    raise(ErrorKind::Coverage, "stream span does not cover query and window");
  }
  IntegralMap head = canonical_integral(preprocess(stream, m, t_s), c);
  IntegralMap tail = canonical_integral(preprocess(stream, m, t_e), c);
  const double w_head = (m - t_s) / window.duration;
  const double w_tail = (t_e - m) / window.duration;
  const auto& hv = head.data();
  const auto& tv = tail.data();
  std::vector<double> values(hv.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    double v = w_head * hv[i] + w_tail * tv[i];
    if (!std::isfinite(v) || v <= 0.0) {
      raise(ErrorKind::InternalConsistency,
            "double integral lost positivity at weight combination");
    }
    values[i] = v;
  }
  return IntegralMap(stream.width(), stream.height(), std::move(values), m,
                     window);
}

IntegralMap sharp_integral(const EventStream& stream, double m, double t_s,
                           Threshold c) {
  const double lo = std::min(m, t_s);
  const double hi = std::max(m, t_s);
  if (!stream.covers(lo, hi)) {
    raise(ErrorKind::Coverage, "stream span does not cover query segment");
  }
  const int w = stream.width();
  const int h = stream.height();
  std::vector<long long> net(static_cast<std::size_t>(w) * h, 0);
  const auto& ev = stream.events();
  auto first = std::upper_bound(
      ev.begin(), ev.end(), lo,
      [](double v, const Event& e) { return v < e.t; });
  auto last = std::upper_bound(
      ev.begin(), ev.end(), hi,
      [](double v, const Event& e) { return v < e.t; });
  for (auto it = first; it != last; ++it) {
    net[static_cast<std::size_t>(it->y) * w + it->x] += it->p;
  }
  const double sign = t_s >= m ? 1.0 : -1.0;
  const double cv = c.value();
  std::vector<double> values(net.size());
  for (std::size_t i = 0; i < net.size(); ++i) {
    values[i] = std::exp(cv * sign * static_cast<double>(net[i]));
  }
  return IntegralMap(w, h, std::move(values), m, ExposureWindow{t_s, 0.0});
}

IntegralMap quadrature_oracle(const EventStream& stream, double m,
                              ExposureWindow window, Threshold c,
                              long long steps) {
  if (steps < 1) {
    raise(ErrorKind::InvalidInput, "quadrature needs at least one step");
  }
  if (!(window.duration > 0.0)) {
    raise(ErrorKind::InvalidInput,
          "quadrature needs a positive exposure duration");
  }
  const double t_s = window.t_start;
  const double t_e = window.t_end();
  if (!stream.covers(std::min(m, t_s), std::max(m, t_e))) {
    raise(ErrorKind::Coverage, "stream span does not cover query and window");
  }
  const double step = window.duration / static_cast<double>(steps);
  const double cv = c.value();

  auto midpoint = [&](long long j) {
    return t_s + (static_cast<double>(j) + 0.5) * step;
  };
  // Number of midpoints strictly below x. Closed-form guess, then a local
  // fix-up so the boundary between groups agrees with the exact comparison.
  auto midpoints_below = [&](double x) {
    double guess = (x - t_s) / step - 0.5;
    long long n = 0;
    if (guess > 0.0) {
      n = static_cast<long long>(std::ceil(guess));
      n = std::min(n, steps);
    }
    while (n < steps && midpoint(n) < x) {
      ++n;
    }
    while (n > 0 && midpoint(n - 1) >= x) {
      --n;
    }
    return n;
  };

  const int w = stream.width();
  const int h = stream.height();
  std::vector<double> values(static_cast<std::size_t>(w) * h, 1.0);
  PixelEventIndex index(stream);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      auto bucket = index.at(x, y);
      if (bucket.empty()) {
        continue;
      }
      long long base = 0;
      for (const Event& e : bucket) {
        if (e.t <= m) {
          base += e.p;
        }
      }
      // Sample groups between consecutive event times share one integrand
      // value, so the midpoint sum collapses to one term per group.
      KahanSum acc;
      long long covered = 0;
      long long running = 0;
      for (const Event& e : bucket) {
        long long idx = midpoints_below(e.t);
        if (idx > covered) {
          acc.add(static_cast<double>(idx - covered) *
                  std::exp(cv * static_cast<double>(running - base)));
          covered = idx;
        }
        running += e.p;
      }
      if (covered < steps) {
        acc.add(static_cast<double>(steps - covered) *
                std::exp(cv * static_cast<double>(running - base)));
      }
      values[static_cast<std::size_t>(y) * w + x] =
          acc.value() / static_cast<double>(steps);
    }
  }
  return IntegralMap(w, h, std::move(values), m, window);
}

}  // namespace evsharp
