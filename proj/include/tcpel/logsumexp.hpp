#ifndef TCPEL_LOGSUMEXP_HPP
#define TCPEL_LOGSUMEXP_HPP

#include <cmath>
#include <limits>

namespace tcpel {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)) without overflow.
inline double logAddExp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double hi = a > b ? a : b;
  double lo = a > b ? b : a;
  return hi + std::log1p(std::exp(lo - hi));
}

// Streaming log-sum-exp accumulator. Keeps the running maximum and the sum
// of exponentials shifted by it.
class LogAccumulator {
 public:
  void add(double logX) {
    if (logX == kNegInf) return;
    if (logX > max_) {
      sum_ = sum_ * std::exp(max_ - logX) + 1.0;
      max_ = logX;
    } else {
      sum_ += std::exp(logX - max_);
    }
  }

  bool empty() const { return sum_ == 0.0; }

  double logTotal() const { return sum_ == 0.0 ? kNegInf : max_ + std::log(sum_); }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

}  // namespace tcpel

#endif  // TCPEL_LOGSUMEXP_HPP
