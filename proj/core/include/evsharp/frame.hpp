#pragma once

#include <vector>

#include "evsharp/events.hpp"

namespace evsharp {

// Smallest representable intensity. Frames live in linear intensity on
// [kIntensityFloor, 1]; the floor keeps logarithms finite everywhere.
inline constexpr double kIntensityFloor = 1e-4;

double clamp_intensity(double v);

// Linear-intensity image tagged with its exposure window.
class Frame {
 public:
  // Validates every value against [kIntensityFloor, 1].
  Frame(int width, int height, std::vector<double> intensity,
        ExposureWindow exposure);

  // Clamps raw values into range instead of rejecting them. Every operation
  // that produces intensities arithmetically goes through this path.
  static Frame clamped(int width, int height, std::vector<double> raw,
                       ExposureWindow exposure);

  static Frame constant(int width, int height, double value,
                        ExposureWindow exposure);

  int width() const { return width_; }
  int height() const { return height_; }
  ExposureWindow exposure() const { return exposure_; }
  const std::vector<double>& data() const { return values_; }

  double at(int x, int y) const;

  Frame with_exposure(ExposureWindow exposure) const;

 private:
  Frame() = default;

  int width_ = 0;
  int height_ = 0;
  ExposureWindow exposure_;
  std::vector<double> values_;
};

}  // namespace evsharp
