#pragma once

#include <cstdint>
#include <string>

namespace paircorr {

// 128-bit accumulators for the correlation sums: phi(n)phi(n+k) <= (n+k)^2,
// so sums over n <= 1e7 overflow 64 bits.
using u128 = unsigned __int128;
using i128 = __int128;

std::string to_string(u128 v);

inline long double to_long_double(u128 v) { return static_cast<long double>(v); }

/// Compensated (Kahan) accumulator; deterministic given a fixed add order.
class KahanSum {
public:
  void add(double x) {
    double y = x - carry_;
    double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

} // namespace paircorr
