#pragma once

#include <vector>

#include "evsharp/frame.hpp"
#include "evsharp/integral.hpp"

namespace evsharp {

// Relative importance of the three self-consistency terms.
struct LossWeights {
  double blur_event = 1.0;
  double sharp_blur = 0.5;
  double blur_blur = 1.0;
};

struct LossReport {
  double threshold = 0.0;
  double blur_event = 0.0;
  double sharp_blur = 0.0;
  double blur_blur = 0.0;
  double total = 0.0;
};

// Mean absolute difference between the two single-sided latent estimates of
// the same query time. Zero when the threshold matches the data exactly.
double loss_blur_event(const Frame& blur_first, const Frame& blur_second,
                       const EventStream& stream, double m, Threshold c);

// Mean absolute difference between latent and blurry frame, restricted to
// pixels with no events during the respective exposure. Static pixels must
// come out of the reconstruction unchanged.
double loss_sharp_blur(const Frame& latent_first, const Frame& latent_second,
                       const Frame& blur_first, const Frame& blur_second,
                       const EventStream& stream);

// Cross re-blur consistency: the latent reconstructed from one exposure is
// pushed through the other exposure's integral and compared against that
// exposure's blurry frame, in both directions.
double loss_blur_blur(const Frame& blur_first, const Frame& blur_second,
                      const EventStream& stream, double m, Threshold c);

// All three terms averaged over the query times, combined with the weights.
LossReport total_loss(const Frame& blur_first, const Frame& blur_second,
                      const EventStream& stream,
                      const std::vector<double>& queries, Threshold c,
                      LossWeights weights);

// Scalar threshold calibration: coarse log-spaced scan over [c_lo, c_hi]
// followed by golden-section refinement of the best bracket. Deterministic;
// an event-free stream cannot be calibrated.
Threshold estimate_threshold(const Frame& blur_first, const Frame& blur_second,
                             const EventStream& stream,
                             const std::vector<double>& queries, double c_lo,
                             double c_hi, LossWeights weights);

// Query times for calibration when the caller has no preference: `count`
// points across the hull of both exposures, spaced tighter near the start
// where the first exposure concentrates its information.
std::vector<double> default_calibration_queries(ExposureWindow win_first,
                                                ExposureWindow win_second,
                                                int count = 8);

}  // namespace evsharp
