#pragma once

#include <vector>

#include "evsharp/events.hpp"

namespace evsharp {

// Contrast threshold of the sensor's log-intensity comparator.
class Threshold {
 public:
  explicit Threshold(double value);
  double value() const { return value_; }

 private:
  double value_;
};

// Per-pixel value of the exposure-averaged intensity ratio
//   E(m, window) = (1/T) * integral over the window of
//                  exp(c * net event count from m to t) dt,
// tagged with the query time and window it was evaluated for. Dividing the
// blurry frame by this map yields the latent frame at the query time.
class IntegralMap {
 public:
  IntegralMap(int width, int height, std::vector<double> values,
              double query_time, ExposureWindow window);

  int width() const { return width_; }
  int height() const { return height_; }
  double query_time() const { return query_time_; }
  ExposureWindow window() const { return window_; }
  const std::vector<double>& data() const { return values_; }

  double at(int x, int y) const;

 private:
  int width_;
  int height_;
  double query_time_;
  ExposureWindow window_;
  std::vector<double> values_;
};

// Average of exp(c * running count) over a canonical stream, i.e. one whose
// span is [0, D] as produced by preprocess. Events at timestamp 0 raise the
// baseline before integration starts. D == 0 yields an all-ones map.
IntegralMap canonical_integral(const EventStream& canonical, Threshold c);

// E(m, window) for a positive-duration window, by splitting at the window
// endpoints: weights (m - t_s)/T and (t_s + T - m)/T applied to the two
// canonical integrals from m to each endpoint. Either weight may be
// negative when m lies outside the window; values must stay positive.
IntegralMap double_integral(const EventStream& stream, double m,
                            ExposureWindow window, Threshold c);

// Zero-exposure limit: exp(c * signed_count(m -> t_s)) per pixel.
IntegralMap sharp_integral(const EventStream& stream, double m, double t_s,
                           Threshold c);

// Midpoint-rule evaluation of E(m, window) sampling the outer integrand at
// `steps` midpoints, each via an exact signed count. Slow path kept as an
// independent reference for the analytic evaluator.
IntegralMap quadrature_oracle(const EventStream& stream, double m,
                              ExposureWindow window, Threshold c,
                              long long steps);

}  // namespace evsharp
