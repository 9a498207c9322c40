#pragma once

#include <vector>

namespace fracneumann {

/// One-dimensional rule on [0, 1].
struct Rule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
  int size() const { return static_cast<int>(nodes.size()); }
};

/// Gauss-Legendre rule with `order` points on [0, 1] (exact to degree
/// 2*order - 1).  Rules are cached; the returned reference stays valid.
const Rule1D& gauss_legendre(int order);

/// Rule for the interval [lo, hi] of  int x^beta f(x) dx  with beta > -1.
///
/// Uses the substitution sigma = x^{beta+1}, so the weights absorb x^beta and
/// the rule is exact for constant f whatever the order.  Returned weights
/// include the x^beta factor divided out, i.e. sum w_k f(x_k) approximates
/// the weighted integral.
Rule1D power_rule(double beta, double lo, double hi, int order);

/// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if ((sum_ >= 0 ? sum_ : -sum_) >= (v >= 0 ? v : -v)) comp_ += (sum_ - t) + v;
    else comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace fracneumann
