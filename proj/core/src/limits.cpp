#include "paircorr/limits.hpp"

#include <cmath>

#include "paircorr/errors.hpp"

namespace paircorr::limits {

double g_unscaled_trivial(double s) { return 0.5 * std::exp(-std::abs(s)); }

double limit_cdf_trivial(double s) {
  return s <= 0.0 ? 0.5 * std::exp(s) : 1.0 - 0.5 * std::exp(-s);
}

double g_sublinear_trivial(std::uint32_t b) {
  if (b < 1) throw ValidationError("b must be positive");
  return 0.5 / (static_cast<double>(b) * static_cast<double>(b));
}

double g_linear_trivial(double t, std::uint32_t b, double lambda) {
  if (b < 1 || !(lambda > 0.0)) throw ValidationError("need b >= 1 and lambda > 0");
  double x = std::abs(t) / (static_cast<double>(b) * lambda);
  if (x < 1.0) return 0.0;
  double fl = std::floor(x);
  return fl * (fl + 1.0) / (2.0 * t * t);
}

double theta_n(double t, std::uint64_t N, std::uint32_t b, double psi_of_n) {
  if (!(t > 0.0)) throw ValidationError("theta_N is defined for t > 0");
  if (b < 1 || N <= b) throw ValidationError("need N > b >= 1");
  double fl = std::floor(t * static_cast<double>(N) / (static_cast<double>(b) * (psi_of_n + t)));
  return fl * (fl + 1.0) / (2.0 * t * t);
}

double g_unscaled_euler(double s) { return std::exp(-2.0 * std::abs(s)); }

double limit_cdf_euler(double s) {
  return s <= 0.0 ? 0.5 * std::exp(2.0 * s) : 1.0 - 0.5 * std::exp(-2.0 * s);
}

LinearEulerDensity::LinearEulerDensity(std::shared_ptr<const arith::Sieve> sieve, std::uint32_t a,
                                       std::uint32_t b, std::uint32_t prime_cutoff)
    : sieve_(std::move(sieve)), a_(a), b_(b), prime_cutoff_(prime_cutoff) {
  if (!sieve_) throw ValidationError("linear euler density needs a sieve");
  if (a_ < 1 || b_ < 1) throw ValidationError("a and b must be positive");
  constants_.assign(1, 0.0);  // k = 0 unused in the sum
  cumulative_.assign(1, 0.0); // j = 0
}

double LinearEulerDensity::constant(std::uint32_t k) const {
  if (k >= constants_.size()) {
    for (std::uint32_t j = static_cast<std::uint32_t>(constants_.size()); j <= k; ++j)
      constants_.push_back(arith::c_abk_product(*sieve_, a_, b_, j, prime_cutoff_).value);
  }
  return constants_[k];
}

double LinearEulerDensity::cumulative(std::uint64_t j) const {
  if (j >= cumulative_.size()) {
    for (std::uint64_t i = cumulative_.size(); i <= j; ++i) {
      double prev = cumulative_[static_cast<std::size_t>(i - 1)];
      double term = 0.0;
      if (i % b_ == 0) {
        double kd = static_cast<double>(i);
        term = constant(static_cast<std::uint32_t>(i)) * kd * kd * kd;
      }
      cumulative_.push_back(prev + term);
    }
  }
  return cumulative_[static_cast<std::size_t>(j)];
}

void LinearEulerDensity::warm_up(double max_s) const {
  cumulative(static_cast<std::uint64_t>(std::floor(std::abs(max_s))));
}

double LinearEulerDensity::operator()(double s) const {
  double x = std::abs(s);
  if (x < static_cast<double>(b_)) return 0.0;
  auto j = static_cast<std::uint64_t>(std::floor(x));
  double s2 = s * s;
  return cumulative(j) / (s2 * s2);
}

double LinearEulerDensity::integral(double x, double y) const {
  if (!(y >= x) || x < 0.0) throw ValidationError("integral needs 0 <= x <= y");
  // piecewise S_j * s^{-4} with S_j constant on [j, j+1)
  double total = 0.0;
  double lo = x;
  while (lo < y) {
    double j = std::floor(lo);
    double hi = std::min(y, j + 1.0);
    double s_j = cumulative(static_cast<std::uint64_t>(j));
    if (s_j != 0.0 && lo > 0.0)
      total += s_j * (1.0 / (lo * lo * lo) - 1.0 / (hi * hi * hi)) / 3.0;
    if (hi == lo) break;
    lo = hi;
  }
  return total;
}

} // namespace paircorr::limits
