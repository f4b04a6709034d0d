#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace evsharp {

// A single polarity event. Timestamps are seconds, polarity is +1 or -1.
struct Event {
  double t;
  std::uint16_t x;
  std::uint16_t y;
  std::int8_t p;
};

// Closed interval of time a stream claims knowledge of. Inside the span,
// absence of events means "nothing fired"; outside it means "unknown".
struct TimeSpan {
  double begin = 0.0;
  double end = 0.0;

  bool contains(double t) const { return begin <= t && t <= end; }
  double length() const { return end - begin; }
};

// Exposure interval of a frame: [t_start, t_start + duration].
// duration == 0 marks an instantaneous (sharp) frame.
struct ExposureWindow {
  double t_start = 0.0;
  double duration = 0.0;

  double t_end() const { return t_start + duration; }
  bool contains(double t) const { return t_start <= t && t <= t_end(); }
  bool is_sharp() const { return duration == 0.0; }
};

// Immutable, time-sorted event recording for a fixed sensor geometry.
class EventStream {
 public:
  EventStream(int width, int height, std::vector<Event> events, TimeSpan span);

  static EventStream empty(int width, int height, TimeSpan span);

  int width() const { return width_; }
  int height() const { return height_; }
  TimeSpan span() const { return span_; }
  const std::vector<Event>& events() const { return events_; }
  std::size_t size() const { return events_.size(); }
  bool is_empty() const { return events_.empty(); }

  // True when the closed interval [a, b] lies inside the recorded span.
  bool covers(double a, double b) const {
    return span_.begin <= a && b <= span_.end;
  }

 private:
  int width_;
  int height_;
  TimeSpan span_;
  std::vector<Event> events_;
};

// Events with t in (a, b], span set to [a, b]. Half-open slicing keeps
// adjacent slices disjoint: an event sitting exactly on a boundary belongs
// to the interval it terminates.
EventStream slice(const EventStream& stream, double a, double b);

// Net polarity sum at one pixel over the oriented interval from a to b,
// counting events with t in (min,max] and negating when b < a.
long long signed_count(const EventStream& stream, int x, int y, double a,
                       double b);

// Canonicalizes the segment between a query time m and a window endpoint t_r
// so downstream integration always runs forward from 0:
//   t_r >= m: shift events of (m, t_r] to t - m
//   t_r <  m: shift events of (t_r, m] to m - t, reversing polarity
// Result span is [0, |t_r - m|].
EventStream preprocess(const EventStream& stream, double m, double t_r);

// Dense per-polarity, per-bin event counts over a stream's span.
class TemporalBinGrid {
 public:
  TemporalBinGrid(int bin_count, int width, int height, TimeSpan span);

  int bin_count() const { return bins_; }
  int width() const { return width_; }
  int height() const { return height_; }
  TimeSpan span() const { return span_; }

  // polarity_channel: 0 counts +1 events, 1 counts -1 events.
  std::int64_t at(int polarity_channel, int bin, int x, int y) const;
  std::int64_t& cell(int polarity_channel, int bin, int x, int y);
  std::int64_t channel_total(int polarity_channel) const;
  const std::vector<std::int64_t>& data() const { return counts_; }

 private:
  int bins_;
  int width_;
  int height_;
  TimeSpan span_;
  std::vector<std::int64_t> counts_;
};

// Buckets a stream's span into bin_count equal bins and counts events per
// polarity. Events at the span start land in bin 0, at the span end in the
// last bin. A degenerate span maps everything to bin 0.
TemporalBinGrid to_bins(const EventStream& stream, int bin_count);

// Per-pixel view of a stream's events, time order preserved inside each
// pixel. Built once, then shared by the whole-image integral routines.
class PixelEventIndex {
 public:
  explicit PixelEventIndex(const EventStream& stream);

  std::span<const Event> at(int x, int y) const;
  int width() const { return width_; }
  int height() const { return height_; }

 private:
  int width_;
  int height_;
  std::vector<std::size_t> offsets_;
  std::vector<Event> sorted_;
};

}  // namespace evsharp
