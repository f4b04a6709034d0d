#include "evsharp/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evsharp/errors.hpp"

namespace evsharp {

namespace {

void require_same_shape(int wa, int ha, int wb, int hb, const char* what) {
  if (wa != wb || ha != hb) {
    raise(ErrorKind::DimensionMismatch, what);
  }
}

}  // namespace

Frame reconstruct_latent(const Frame& reference, const IntegralMap& integral) {
  require_same_shape(reference.width(), reference.height(), integral.width(),
                     integral.height(), "frame and integral map differ in shape");
  const auto& f = reference.data();
  const auto& e = integral.data();
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    out[i] = f[i] / e[i];
  }
  return Frame::clamped(reference.width(), reference.height(), std::move(out),
                        ExposureWindow{integral.query_time(), 0.0});
}

Frame reblur(const Frame& latent, const IntegralMap& integral) {
  require_same_shape(latent.width(), latent.height(), integral.width(),
                     integral.height(), "frame and integral map differ in shape");
  const auto& f = latent.data();
  const auto& e = integral.data();
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    out[i] = f[i] * e[i];
  }
  return Frame::clamped(latent.width(), latent.height(), std::move(out),
                        integral.window());
}

FusionWeights::FusionWeights(int width, int height, std::vector<double> first,
                             std::vector<double> second)
    : width_(width),
      height_(height),
      w_first_(std::move(first)),
      w_second_(std::move(second)) {}

FusionWeights FusionWeights::from_integrals(const IntegralMap& first,
                                            const IntegralMap& second) {
  require_same_shape(first.width(), first.height(), second.width(),
                     second.height(), "integral maps differ in shape");
  const auto& ef = first.data();
  const auto& es = second.data();
  std::vector<double> wf(ef.size());
  std::vector<double> ws(ef.size());
  for (std::size_t i = 0; i < ef.size(); ++i) {
    // Softmax over the OTHER side's log deviation: the first weight grows
    // with |log E_second|, shifted by the max for stability.
    double df = std::abs(std::log(es[i]));
    double ds = std::abs(std::log(ef[i]));
    double mx = std::max(df, ds);
    double a = std::exp(df - mx);
    double b = std::exp(ds - mx);
    wf[i] = a / (a + b);
    ws[i] = b / (a + b);
  }
  return FusionWeights(first.width(), first.height(), std::move(wf),
                       std::move(ws));
}

double FusionWeights::first_at(int x, int y) const {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) {
    raise(ErrorKind::Bounds, "pixel outside weight map");
  }
  return w_first_[static_cast<std::size_t>(y) * width_ + x];
}

double FusionWeights::second_at(int x, int y) const {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) {
    raise(ErrorKind::Bounds, "pixel outside weight map");
  }
  return w_second_[static_cast<std::size_t>(y) * width_ + x];
}

Frame apf_fuse(const Frame& latent_first, const Frame& latent_second,
               const IntegralMap& integral_first,
               const IntegralMap& integral_second, double m,
               ExposureWindow win_first, ExposureWindow win_second) {
  require_same_shape(latent_first.width(), latent_first.height(),
                     latent_second.width(), latent_second.height(),
                     "latent frames differ in shape");
  require_same_shape(latent_first.width(), latent_first.height(),
                     integral_first.width(), integral_first.height(),
                     "latent frame and integral map differ in shape");
  require_same_shape(integral_first.width(), integral_first.height(),
                     integral_second.width(), integral_second.height(),
                     "integral maps differ in shape");
  if (win_first.t_start > win_second.t_start) {
    raise(ErrorKind::InvalidInput, "exposure windows out of order");
  }
  if (win_first.contains(m)) {
    return latent_first;
  }
  if (win_second.contains(m)) {
    return latent_second;
  }
  if (!(m > win_first.t_end() && m < win_second.t_start)) {
    raise(ErrorKind::OutOfRange, "query time outside the exposure hull");
  }
  FusionWeights weights =
      FusionWeights::from_integrals(integral_first, integral_second);
  const auto& lf = latent_first.data();
  const auto& ls = latent_second.data();
  const auto& wf = weights.first();
  const auto& ws = weights.second();
  std::vector<double> out(lf.size());
  for (std::size_t i = 0; i < lf.size(); ++i) {
    double lo = std::min(lf[i], ls[i]);
    double hi = std::max(lf[i], ls[i]);
    // Clamping to the input envelope keeps the blend a true convex
    // combination even when rounding nudges it past an endpoint.
    out[i] = std::clamp(wf[i] * lf[i] + ws[i] * ls[i], lo, hi);
  }
  return Frame::clamped(latent_first.width(), latent_first.height(),
                        std::move(out), ExposureWindow{m, 0.0});
}

IntegralMap integral_for(const EventStream& stream, double m,
                         ExposureWindow window, Threshold c) {
  if (window.is_sharp()) {
    return sharp_integral(stream, m, window.t_start, c);
  }
  return double_integral(stream, m, window, c);
}

std::vector<Frame> enhance(const Frame& ref_first, const Frame& ref_second,
                           const EventStream& stream,
                           const std::vector<double>& queries, Threshold c) {
  require_same_shape(ref_first.width(), ref_first.height(),
                     ref_second.width(), ref_second.height(),
                     "reference frames differ in shape");
  require_same_shape(ref_first.width(), ref_first.height(), stream.width(),
                     stream.height(), "frames and stream differ in shape");
  const ExposureWindow win_first = ref_first.exposure();
  const ExposureWindow win_second = ref_second.exposure();
  if (win_first.t_start > win_second.t_start) {
    raise(ErrorKind::InvalidInput, "reference frames out of order");
  }
  const double hull_begin = win_first.t_start;
  const double hull_end = win_second.t_end();
  for (double m : queries) {
    if (!(hull_begin <= m && m <= hull_end)) {
      raise(ErrorKind::OutOfRange,
            "query time " + std::to_string(m) + " outside the exposure hull");
    }
  }
  std::vector<Frame> out;
  out.reserve(queries.size());
  for (double m : queries) {
    // Membership decides which side is computed at all: a query inside one
    // exposure must not depend on the other frame or on events beyond it.
    if (win_first.contains(m)) {
      IntegralMap e1 = integral_for(stream, m, win_first, c);
      out.push_back(reconstruct_latent(ref_first, e1));
    } else if (win_second.contains(m)) {
      IntegralMap e2 = integral_for(stream, m, win_second, c);
      out.push_back(reconstruct_latent(ref_second, e2));
    } else {
      IntegralMap e1 = integral_for(stream, m, win_first, c);
      IntegralMap e2 = integral_for(stream, m, win_second, c);
      Frame l1 = reconstruct_latent(ref_first, e1);
      Frame l2 = reconstruct_latent(ref_second, e2);
      out.push_back(apf_fuse(l1, l2, e1, e2, m, win_first, win_second));
    }
  }
  return out;
}

}  // namespace evsharp
