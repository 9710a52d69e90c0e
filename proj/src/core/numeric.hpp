#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace lrs {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms_residual = 0.0;
};

/// Ordinary least squares y = intercept + slope * x (centred formulation).
/// Caller guarantees at least two distinct x values.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

}  // namespace lrs
