#pragma once

#include <cmath>

namespace evsharp {

// Neumaier-compensated accumulator. Long segment sums and image means go
// through this so results stay reproducible and tolerances stay tight.
class KahanSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace evsharp
