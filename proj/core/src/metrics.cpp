#include "evsharp/metrics.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "evsharp/errors.hpp"
#include "evsharp/numeric.hpp"

namespace evsharp {

namespace {

constexpr int kWindow = 11;
constexpr int kRadius = kWindow / 2;
constexpr double kSigma = 1.5;
constexpr double kC1 = 0.01 * 0.01;
constexpr double kC2 = 0.03 * 0.03;

void require_same_shape(const Frame& a, const Frame& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    raise(ErrorKind::DimensionMismatch, "metric frames differ in shape");
  }
}

std::array<double, kWindow> gaussian_taps() {
  std::array<double, kWindow> taps{};
  double sum = 0.0;
  for (int i = 0; i < kWindow; ++i) {
    double d = static_cast<double>(i - kRadius);
    taps[i] = std::exp(-(d * d) / (2.0 * kSigma * kSigma));
    sum += taps[i];
  }
  for (double& t : taps) {
    t /= sum;
  }
  return taps;
}

// Horizontal then vertical pass; only the fully interior rows and columns
// of the result are meaningful.
std::vector<double> separable_blur(const std::vector<double>& img, int w,
                                   int h, const std::array<double, kWindow>& taps) {
  std::vector<double> tmp(img.size(), 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = kRadius; x < w - kRadius; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kWindow; ++k) {
        acc += taps[k] * img[static_cast<std::size_t>(y) * w + x + k - kRadius];
      }
      tmp[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }
  std::vector<double> out(img.size(), 0.0);
  for (int y = kRadius; y < h - kRadius; ++y) {
    for (int x = kRadius; x < w - kRadius; ++x) {
      double acc = 0.0;
      for (int k = 0; k < kWindow; ++k) {
        acc += taps[k] * tmp[static_cast<std::size_t>(y + k - kRadius) * w + x];
      }
      out[static_cast<std::size_t>(y) * w + x] = acc;
    }
  }
  return out;
}

}  // namespace

double psnr(const Frame& reference, const Frame& test) {
  require_same_shape(reference, test);
  const auto& a = reference.data();
  const auto& b = test.data();
  KahanSum acc;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    acc.add(d * d);
  }
  double mse = acc.value() / static_cast<double>(a.size());
  if (mse == 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return 10.0 * std::log10(1.0 / mse);
}

double ssim(const Frame& reference, const Frame& test) {
  require_same_shape(reference, test);
  const int w = reference.width();
  const int h = reference.height();
  if (w < kWindow || h < kWindow) {
    raise(ErrorKind::InvalidInput,
          "frames smaller than the 11x11 similarity window");
  }
  const auto taps = gaussian_taps();
  const auto& a = reference.data();
  const auto& b = test.data();
  const std::size_t n = a.size();

  std::vector<double> aa(n);
  std::vector<double> bb(n);
  std::vector<double> ab(n);
  for (std::size_t i = 0; i < n; ++i) {
    aa[i] = a[i] * a[i];
    bb[i] = b[i] * b[i];
    ab[i] = a[i] * b[i];
  }
  std::vector<double> mu_a = separable_blur(a, w, h, taps);
  std::vector<double> mu_b = separable_blur(b, w, h, taps);
  std::vector<double> m_aa = separable_blur(aa, w, h, taps);
  std::vector<double> m_bb = separable_blur(bb, w, h, taps);
  std::vector<double> m_ab = separable_blur(ab, w, h, taps);

  KahanSum acc;
  std::size_t count = 0;
  for (int y = kRadius; y < h - kRadius; ++y) {
    for (int x = kRadius; x < w - kRadius; ++x) {
      std::size_t i = static_cast<std::size_t>(y) * w + x;
      double ma = mu_a[i];
      double mb = mu_b[i];
      double va = m_aa[i] - ma * ma;
      double vb = m_bb[i] - mb * mb;
      double cov = m_ab[i] - ma * mb;
      double score = ((2.0 * ma * mb + kC1) * (2.0 * cov + kC2)) /
                     ((ma * ma + mb * mb + kC1) * (va + vb + kC2));
      acc.add(score);
      ++count;
    }
  }
  return acc.value() / static_cast<double>(count);
}

}  // namespace evsharp
