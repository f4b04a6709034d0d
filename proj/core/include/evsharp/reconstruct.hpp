#pragma once

#include <vector>

#include "evsharp/frame.hpp"
#include "evsharp/integral.hpp"

namespace evsharp {

// Latent frame at the integral's query time: reference / integral, clamped.
Frame reconstruct_latent(const Frame& reference, const IntegralMap& integral);

// Forward direction: latent * integral, clamped, tagged with the integral's
// exposure window.
Frame reblur(const Frame& latent, const IntegralMap& integral);

// Per-pixel convex weights for fusing the two single-sided reconstructions
// of a query between two exposures. The side whose integral deviates less
// from 1 (in log magnitude) is considered more trustworthy and receives the
// larger weight.
class FusionWeights {
 public:
  static FusionWeights from_integrals(const IntegralMap& first,
                                      const IntegralMap& second);

  int width() const { return width_; }
  int height() const { return height_; }
  double first_at(int x, int y) const;
  double second_at(int x, int y) const;
  const std::vector<double>& first() const { return w_first_; }
  const std::vector<double>& second() const { return w_second_; }

 private:
  FusionWeights(int width, int height, std::vector<double> first,
                std::vector<double> second);

  int width_;
  int height_;
  std::vector<double> w_first_;
  std::vector<double> w_second_;
};

// Parameter-free fusion of two latent estimates of the same query time m.
// Inside either exposure window the corresponding estimate is returned
// verbatim; strictly between the windows the estimates are blended with
// FusionWeights; outside the hull of both windows the query is rejected.
Frame apf_fuse(const Frame& latent_first, const Frame& latent_second,
               const IntegralMap& integral_first,
               const IntegralMap& integral_second, double m,
               ExposureWindow win_first, ExposureWindow win_second);

// Full restoration pipeline over a pair of consecutive reference frames
// (blurry or sharp, by exposure duration) and the event stream spanning
// them. Produces one latent frame per query time, in query order.
std::vector<Frame> enhance(const Frame& ref_first, const Frame& ref_second,
                           const EventStream& stream,
                           const std::vector<double>& queries, Threshold c);

// E(m, window) dispatch: double_integral for positive-duration windows,
// sharp_integral for instantaneous ones.
IntegralMap integral_for(const EventStream& stream, double m,
                         ExposureWindow window, Threshold c);

}  // namespace evsharp
