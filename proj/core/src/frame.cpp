#include "evsharp/frame.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evsharp/errors.hpp"

namespace evsharp {

double clamp_intensity(double v) {
  if (std::isnan(v)) {
    raise(ErrorKind::InternalConsistency, "intensity is NaN");
  }
  return std::clamp(v, kIntensityFloor, 1.0);
}

Frame::Frame(int width, int height, std::vector<double> intensity,
             ExposureWindow exposure)
    : width_(width),
      height_(height),
      exposure_(exposure),
      values_(std::move(intensity)) {
  if (width_ <= 0 || height_ <= 0) {
    raise(ErrorKind::InvalidInput, "frame geometry must be positive");
  }
  if (values_.size() != static_cast<std::size_t>(width_) * height_) {
    raise(ErrorKind::InvalidInput, "frame buffer size does not match geometry");
  }
  if (!std::isfinite(exposure_.t_start) || !std::isfinite(exposure_.duration) ||
      exposure_.duration < 0.0) {
    raise(ErrorKind::InvalidInput, "frame exposure must be finite, duration >= 0");
  }
  for (double v : values_) {
    if (!(v >= kIntensityFloor && v <= 1.0)) {
      raise(ErrorKind::InvalidInput,
            "intensity " + std::to_string(v) + " outside [1e-4, 1]");
    }
  }
}

Frame Frame::clamped(int width, int height, std::vector<double> raw,
                     ExposureWindow exposure) {
  for (double& v : raw) {
    v = clamp_intensity(v);
  }
  return Frame(width, height, std::move(raw), exposure);
}

Frame Frame::constant(int width, int height, double value,
                      ExposureWindow exposure) {
  return Frame(width, height,
               std::vector<double>(static_cast<std::size_t>(width) * height,
                                   value),
               exposure);
}

double Frame::at(int x, int y) const {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) {
    raise(ErrorKind::Bounds, "pixel outside frame");
  }
  return values_[static_cast<std::size_t>(y) * width_ + x];
}

Frame Frame::with_exposure(ExposureWindow exposure) const {
  return Frame(width_, height_, values_, exposure);
}

}  // namespace evsharp
