#pragma once

#include <cstdint>
#include <vector>

#include "evsharp/frame.hpp"
#include "evsharp/integral.hpp"

namespace evsharp {

// Ordered sequence of instantaneous frames sharing one geometry. The frame
// exposures carry the timestamps; they must be strictly increasing.
class LatentVideo {
 public:
  explicit LatentVideo(std::vector<Frame> frames);

  std::size_t size() const { return frames_.size(); }
  const Frame& frame(std::size_t i) const { return frames_[i]; }
  double timestamp(std::size_t i) const { return frames_[i].exposure().t_start; }
  int width() const { return frames_.front().width(); }
  int height() const { return frames_.front().height(); }
  TimeSpan span() const {
    return TimeSpan{timestamp(0), timestamp(frames_.size() - 1)};
  }
  const std::vector<Frame>& frames() const { return frames_; }

 private:
  std::vector<Frame> frames_;
};

// Forward sensor model: linear interpolation of log intensity between
// consecutive frames, one event per crossed threshold level. A pixel's
// levels sit at log(first frame) + n*c; no refractory period. The returned
// stream spans the video's time range with all events strictly inside it.
EventStream generate_events(const LatentVideo& video, Threshold c);

// Pixel-wise mean of the frames whose timestamps fall inside the window
// (closed on both ends). The result carries the window as its exposure.
Frame synthesize_blur(const LatentVideo& video, ExposureWindow window);

// Latents propagated analytically from a sharp base frame: each sample is
// base * exp(c * net count from the base time). Clamping to the intensity
// range is recorded per sample and pixel so exactness checks can skip
// saturated pixels.
struct ModelExactVideo {
  LatentVideo video;
  std::vector<std::vector<std::uint8_t>> clamped;

  bool clamped_anywhere(int x, int y) const;
};

ModelExactVideo model_exact_video(const Frame& base, const EventStream& stream,
                                  const std::vector<double>& samples,
                                  Threshold c);

}  // namespace evsharp
