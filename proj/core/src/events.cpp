#include "evsharp/events.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evsharp/errors.hpp"

namespace evsharp {

namespace {

// First event with t > x, assuming time-sorted events.
std::vector<Event>::const_iterator upper(const std::vector<Event>& events,
                                         double x) {
  return std::upper_bound(
      events.begin(), events.end(), x,
      [](double v, const Event& e) { return v < e.t; });
}

}  // namespace

EventStream::EventStream(int width, int height, std::vector<Event> events,
                         TimeSpan span)
    : width_(width), height_(height), span_(span), events_(std::move(events)) {
  if (width_ <= 0 || height_ <= 0) {
    raise(ErrorKind::InvalidInput, "stream geometry must be positive");
  }
  if (!std::isfinite(span_.begin) || !std::isfinite(span_.end) ||
      span_.begin > span_.end) {
    raise(ErrorKind::InvalidInput, "stream span must be a finite interval");
  }
  double prev = span_.begin;
  for (const Event& e : events_) {
    if (!std::isfinite(e.t) || !span_.contains(e.t)) {
      raise(ErrorKind::InvalidInput,
            "event timestamp " + std::to_string(e.t) + " outside span");
    }
    if (e.t < prev) {
      raise(ErrorKind::InvalidInput, "events must be sorted by timestamp");
    }
    if (e.x >= width_ || e.y >= height_) {
      raise(ErrorKind::InvalidInput, "event coordinates outside geometry");
    }
    if (e.p != 1 && e.p != -1) {
      raise(ErrorKind::InvalidInput, "event polarity must be +1 or -1");
    }
    prev = e.t;
  }
}

EventStream EventStream::empty(int width, int height, TimeSpan span) {
  return EventStream(width, height, {}, span);
}

EventStream slice(const EventStream& stream, double a, double b) {
  if (!(a <= b)) {
    raise(ErrorKind::InvalidInterval, "slice interval has a > b");
  }
  const auto& ev = stream.events();
  auto lo = upper(ev, a);
  auto hi = upper(ev, b);
  return EventStream(stream.width(), stream.height(),
                     std::vector<Event>(lo, hi), TimeSpan{a, b});
}

long long signed_count(const EventStream& stream, int x, int y, double a,
                       double b) {
  if (x < 0 || y < 0 || x >= stream.width() || y >= stream.height()) {
    raise(ErrorKind::Bounds, "pixel outside stream geometry");
  }
  double lo = std::min(a, b);
  double hi = std::max(a, b);
  if (!stream.covers(lo, hi)) {
    raise(ErrorKind::Coverage, "count interval not covered by stream span");
  }
  const auto& ev = stream.events();
  auto first = upper(ev, lo);
  auto last = upper(ev, hi);
  long long sum = 0;
  for (auto it = first; it != last; ++it) {
    if (it->x == x && it->y == y) {
      sum += it->p;
    }
  }
  return a <= b ? sum : -sum;
}

EventStream preprocess(const EventStream& stream, double m, double t_r) {
  double lo = std::min(m, t_r);
  double hi = std::max(m, t_r);
  if (!stream.covers(lo, hi)) {
    raise(ErrorKind::Coverage, "query segment not covered by stream span");
  }
  double length = hi - lo;
  const auto& ev = stream.events();
  auto first = upper(ev, lo);
  auto last = upper(ev, hi);
  std::vector<Event> out;
  out.reserve(static_cast<std::size_t>(last - first));
  if (t_r >= m) {
    for (auto it = first; it != last; ++it) {
      out.push_back(Event{it->t - m, it->x, it->y, it->p});
    }
  } else {
    // Reversal maps an event at exactly m to timestamp 0; it acts from the
    // very start of the canonical segment.
    for (auto it = last; it != first;) {
      --it;
      out.push_back(
          Event{m - it->t, it->x, it->y, static_cast<std::int8_t>(-it->p)});
    }
  }
  return EventStream(stream.width(), stream.height(), std::move(out),
                     TimeSpan{0.0, length});
}

TemporalBinGrid::TemporalBinGrid(int bin_count, int width, int height,
                                 TimeSpan span)
    : bins_(bin_count), width_(width), height_(height), span_(span) {
  if (bins_ < 1) {
    raise(ErrorKind::InvalidInput, "bin count must be at least 1");
  }
  if (width_ <= 0 || height_ <= 0) {
    raise(ErrorKind::InvalidInput, "bin grid geometry must be positive");
  }
  counts_.assign(static_cast<std::size_t>(2) * bins_ * width_ * height_, 0);
}

std::int64_t TemporalBinGrid::at(int polarity_channel, int bin, int x,
                                 int y) const {
  return const_cast<TemporalBinGrid*>(this)->cell(polarity_channel, bin, x, y);
}

std::int64_t& TemporalBinGrid::cell(int polarity_channel, int bin, int x,
                                    int y) {
  if (polarity_channel < 0 || polarity_channel > 1 || bin < 0 ||
      bin >= bins_ || x < 0 || x >= width_ || y < 0 || y >= height_) {
    raise(ErrorKind::Bounds, "bin grid index out of range");
  }
  std::size_t idx =
      ((static_cast<std::size_t>(polarity_channel) * bins_ + bin) * height_ +
       y) *
          width_ +
      x;
  return counts_[idx];
}

std::int64_t TemporalBinGrid::channel_total(int polarity_channel) const {
  if (polarity_channel < 0 || polarity_channel > 1) {
    raise(ErrorKind::Bounds, "polarity channel out of range");
  }
  std::size_t per_channel =
      static_cast<std::size_t>(bins_) * width_ * height_;
  std::size_t base = static_cast<std::size_t>(polarity_channel) * per_channel;
  std::int64_t total = 0;
  for (std::size_t i = 0; i < per_channel; ++i) {
    total += counts_[base + i];
  }
  return total;
}

TemporalBinGrid to_bins(const EventStream& stream, int bin_count) {
  TemporalBinGrid grid(bin_count, stream.width(), stream.height(),
                       stream.span());
  double t0 = stream.span().begin;
  double length = stream.span().length();
  for (const Event& e : stream.events()) {
    int bin = 0;
    if (length > 0.0) {
      bin = static_cast<int>(std::floor((e.t - t0) / length * bin_count));
      bin = std::clamp(bin, 0, bin_count - 1);
    }
    grid.cell(e.p > 0 ? 0 : 1, bin, e.x, e.y) += 1;
  }
  return grid;
}

PixelEventIndex::PixelEventIndex(const EventStream& stream)
    : width_(stream.width()), height_(stream.height()) {
  std::size_t pixels = static_cast<std::size_t>(width_) * height_;
  std::vector<std::size_t> counts(pixels, 0);
  for (const Event& e : stream.events()) {
    counts[static_cast<std::size_t>(e.y) * width_ + e.x] += 1;
  }
  offsets_.assign(pixels + 1, 0);
  for (std::size_t i = 0; i < pixels; ++i) {
    offsets_[i + 1] = offsets_[i] + counts[i];
  }
  sorted_.resize(stream.size());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Event& e : stream.events()) {
    std::size_t pixel = static_cast<std::size_t>(e.y) * width_ + e.x;
    sorted_[cursor[pixel]++] = e;
  }
}

std::span<const Event> PixelEventIndex::at(int x, int y) const {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) {
    raise(ErrorKind::Bounds, "pixel outside index geometry");
  }
  std::size_t pixel = static_cast<std::size_t>(y) * width_ + x;
  return std::span<const Event>(sorted_.data() + offsets_[pixel],
                                offsets_[pixel + 1] - offsets_[pixel]);
}

}  // namespace evsharp
