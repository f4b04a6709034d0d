#include "evsharp/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "evsharp/errors.hpp"
#include "evsharp/numeric.hpp"
#include "evsharp/reconstruct.hpp"

namespace evsharp {

namespace {

void validate_weights(const LossWeights& w) {
  if (!std::isfinite(w.blur_event) || !std::isfinite(w.sharp_blur) ||
      !std::isfinite(w.blur_blur) || w.blur_event < 0.0 ||
      w.sharp_blur < 0.0 || w.blur_blur < 0.0) {
    raise(ErrorKind::InvalidInput, "loss weights must be finite and >= 0");
  }
}

void validate_pair(const Frame& first, const Frame& second,
                   const EventStream& stream) {
  if (first.width() != second.width() || first.height() != second.height() ||
      first.width() != stream.width() || first.height() != stream.height()) {
    raise(ErrorKind::DimensionMismatch,
          "frames and stream differ in shape");
  }
  if (first.exposure().t_start > second.exposure().t_start) {
    raise(ErrorKind::InvalidInput, "reference frames out of order");
  }
}

void validate_query(double m, ExposureWindow win_first,
                    ExposureWindow win_second) {
  if (!(win_first.t_start <= m && m <= win_second.t_end())) {
    raise(ErrorKind::OutOfRange,
          "query time " + std::to_string(m) + " outside the exposure hull");
  }
}

double mean_abs_diff(const Frame& a, const Frame& b) {
  KahanSum acc;
  const auto& da = a.data();
  const auto& db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    acc.add(std::abs(da[i] - db[i]));
  }
  return acc.value() / static_cast<double>(da.size());
}

// 1 at pixels with zero events during the window, 0 elsewhere.
std::vector<std::uint8_t> static_mask(const EventStream& stream,
                                      ExposureWindow window) {
  std::vector<std::uint8_t> mask(
      static_cast<std::size_t>(stream.width()) * stream.height(), 1);
  EventStream windowed = slice(stream, window.t_start, window.t_end());
  for (const Event& e : windowed.events()) {
    mask[static_cast<std::size_t>(e.y) * stream.width() + e.x] = 0;
  }
  return mask;
}

double masked_abs_sum(const Frame& a, const Frame& b,
                      const std::vector<std::uint8_t>& mask) {
  KahanSum acc;
  const auto& da = a.data();
  const auto& db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    if (mask[i]) {
      acc.add(std::abs(da[i] - db[i]));
    }
  }
  return acc.value();
}

struct QueryState {
  IntegralMap e_first;
  IntegralMap e_second;
  Frame l_first;
  Frame l_second;
};

QueryState latents_at(const Frame& blur_first, const Frame& blur_second,
                      const EventStream& stream, double m, Threshold c) {
  IntegralMap e1 = integral_for(stream, m, blur_first.exposure(), c);
  IntegralMap e2 = integral_for(stream, m, blur_second.exposure(), c);
  Frame l1 = reconstruct_latent(blur_first, e1);
  Frame l2 = reconstruct_latent(blur_second, e2);
  return QueryState{std::move(e1), std::move(e2), std::move(l1),
                    std::move(l2)};
}

double blur_blur_term(const QueryState& q, const Frame& blur_first,
                      const Frame& blur_second) {
  // Cross pairing: each latent is re-blurred through the OTHER exposure's
  // integral and compared against that exposure's frame.
  Frame re_first = reblur(q.l_second, q.e_first);
  Frame re_second = reblur(q.l_first, q.e_second);
  return mean_abs_diff(re_first, blur_first) +
         mean_abs_diff(re_second, blur_second);
}

}  // namespace

double loss_blur_event(const Frame& blur_first, const Frame& blur_second,
                       const EventStream& stream, double m, Threshold c) {
  validate_pair(blur_first, blur_second, stream);
  validate_query(m, blur_first.exposure(), blur_second.exposure());
  QueryState q = latents_at(blur_first, blur_second, stream, m, c);
  return mean_abs_diff(q.l_first, q.l_second);
}

double loss_sharp_blur(const Frame& latent_first, const Frame& latent_second,
                       const Frame& blur_first, const Frame& blur_second,
                       const EventStream& stream) {
  validate_pair(blur_first, blur_second, stream);
  if (latent_first.width() != blur_first.width() ||
      latent_first.height() != blur_first.height() ||
      latent_second.width() != blur_second.width() ||
      latent_second.height() != blur_second.height()) {
    raise(ErrorKind::DimensionMismatch, "latent and blurry frames differ in shape");
  }
  std::vector<std::uint8_t> mask_first =
      static_mask(stream, blur_first.exposure());
  std::vector<std::uint8_t> mask_second =
      static_mask(stream, blur_second.exposure());
  double sum = masked_abs_sum(latent_first, blur_first, mask_first) +
               masked_abs_sum(latent_second, blur_second, mask_second);
  return sum / (static_cast<double>(blur_first.width()) *
                static_cast<double>(blur_first.height()));
}

double loss_blur_blur(const Frame& blur_first, const Frame& blur_second,
                      const EventStream& stream, double m, Threshold c) {
  validate_pair(blur_first, blur_second, stream);
  validate_query(m, blur_first.exposure(), blur_second.exposure());
  QueryState q = latents_at(blur_first, blur_second, stream, m, c);
  return blur_blur_term(q, blur_first, blur_second);
}

LossReport total_loss(const Frame& blur_first, const Frame& blur_second,
                      const EventStream& stream,
                      const std::vector<double>& queries, Threshold c,
                      LossWeights weights) {
  validate_weights(weights);
  validate_pair(blur_first, blur_second, stream);
  if (queries.empty()) {
    raise(ErrorKind::InvalidInput, "at least one query time is required");
  }
  for (double m : queries) {
    validate_query(m, blur_first.exposure(), blur_second.exposure());
  }
  std::vector<std::uint8_t> mask_first =
      static_mask(stream, blur_first.exposure());
  std::vector<std::uint8_t> mask_second =
      static_mask(stream, blur_second.exposure());
  const double pixel_count = static_cast<double>(blur_first.width()) *
                             static_cast<double>(blur_first.height());

  KahanSum be;
  KahanSum sb;
  KahanSum bb;
  for (double m : queries) {
    QueryState q = latents_at(blur_first, blur_second, stream, m, c);
    be.add(mean_abs_diff(q.l_first, q.l_second));
    sb.add((masked_abs_sum(q.l_first, blur_first, mask_first) +
            masked_abs_sum(q.l_second, blur_second, mask_second)) /
           pixel_count);
    bb.add(blur_blur_term(q, blur_first, blur_second));
  }
  const double n = static_cast<double>(queries.size());
  LossReport report;
  report.threshold = c.value();
  report.blur_event = be.value() / n;
  report.sharp_blur = sb.value() / n;
  report.blur_blur = bb.value() / n;
  report.total = weights.blur_event * report.blur_event +
                 weights.sharp_blur * report.sharp_blur +
                 weights.blur_blur * report.blur_blur;
  return report;
}

Threshold estimate_threshold(const Frame& blur_first, const Frame& blur_second,
                             const EventStream& stream,
                             const std::vector<double>& queries, double c_lo,
                             double c_hi, LossWeights weights) {
  if (stream.is_empty()) {
    raise(ErrorKind::CalibrationImpossible,
          "event stream is empty; the loss does not depend on the threshold");
  }
  if (!(c_lo > 0.0) || !(c_lo < c_hi) || !std::isfinite(c_hi)) {
    raise(ErrorKind::InvalidInput, "threshold range must satisfy 0 < lo < hi");
  }
  auto objective = [&](double cv) {
    return total_loss(blur_first, blur_second, stream, queries, Threshold(cv),
                      weights)
        .total;
  };

  constexpr int kGridPoints = 32;
  const double ratio = c_hi / c_lo;
  int best = 0;
  double best_value = std::numeric_limits<double>::infinity();
  std::vector<double> grid(kGridPoints);
  for (int k = 0; k < kGridPoints; ++k) {
    grid[k] = c_lo * std::pow(ratio, static_cast<double>(k) /
                                         (kGridPoints - 1));
    double v = objective(grid[k]);
    if (v < best_value) {
      best_value = v;
      best = k;
    }
  }
  double a = grid[std::max(0, best - 1)];
  double b = grid[std::min(kGridPoints - 1, best + 1)];

  constexpr double kTolerance = 1e-4;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = objective(x1);
  double f2 = objective(x2);
  while (b - a > kTolerance) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = objective(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = objective(x2);
    }
  }
  return Threshold(0.5 * (a + b));
}

std::vector<double> default_calibration_queries(ExposureWindow win_first,
                                                ExposureWindow win_second,
                                                int count) {
  if (count < 1) {
    raise(ErrorKind::InvalidInput, "query count must be positive");
  }
  const double t0 = win_first.t_start;
  const double t1 = win_second.t_end();
  if (!(t0 <= t1)) {
    raise(ErrorKind::InvalidInput, "exposure windows out of order");
  }
  std::vector<double> queries(count);
  if (count == 1) {
    queries[0] = 0.5 * (t0 + t1);
    return queries;
  }
  // Doubling map sends the uniform grid to offsets that crowd the hull
  // start: u -> 2^u - 1 runs from 0 to 1 with increasing spacing.
  for (int k = 0; k < count; ++k) {
    double u = static_cast<double>(k) / (count - 1);
    queries[k] = t0 + (t1 - t0) * (std::exp2(u) - 1.0);
  }
  return queries;
}

}  // namespace evsharp
