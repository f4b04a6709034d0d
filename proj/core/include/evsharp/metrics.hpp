#pragma once

#include "evsharp/frame.hpp"

namespace evsharp {

// Peak signal-to-noise ratio in dB against a unit peak. Identical frames
// give +infinity.
double psnr(const Frame& reference, const Frame& test);

// Single-scale structural similarity: 11x11 Gaussian window with sigma 1.5,
// stabilizers C1 = 0.01^2 and C2 = 0.03^2, averaged over the positions where
// the window fits entirely inside the frames.
double ssim(const Frame& reference, const Frame& test);

}  // namespace evsharp
