#pragma once
#include <cmath>
#include <cstddef>
#include <span>

namespace tryinfo {

// Neumaier compensated accumulator. Identity residuals over 512x512 tables
// must stay near machine scale, which naive summation does not guarantee.
class NeumaierSum {
public:
  void add(double x) {
    const double t = sum_ + x;
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

inline double neumaier_total(std::span<const double> xs) {
  NeumaierSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

} // namespace tryinfo
