#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "paircorr/arith.hpp"
#include "paircorr/sieve.hpp"

namespace paircorr::limits {

enum class RegimeTag {
  unscaled_trivial,
  sublinear_trivial,
  linear_trivial,
  superlinear_zero,
  unscaled_euler,
  linear_euler,
};

/// g(s) = (1/2) e^{-|s|} (trivial weights, no scaling).
double g_unscaled_trivial(double s);

/// Limiting CDF D of the unscaled trivial-weight differences; D' = g.
double limit_cdf_trivial(double s);

/// Constant density 1/(2 b^2) (sublinear scaling, normalizer N^2/psi(N)).
double g_sublinear_trivial(std::uint32_t b);

/// theta_infinity: 0 on (-b lambda, b lambda), else the floor formula
/// (1/(2t^2)) floor(|t|/(b lambda)) (floor + 1); tends to 1/(2 b^2 lambda^2).
double g_linear_trivial(double t, std::uint32_t b, double lambda);

/// Finite-horizon density theta_N(t) = (1/(2t^2)) floor(tN/(b(psi+t))) (floor+1)
/// for t > 0; vanishes exactly for t <= b psi / (N - b).
double theta_n(double t, std::uint64_t N, std::uint32_t b, double psi_of_n);

/// g(s) = e^{-2|s|} (Euler weights, no scaling).
double g_unscaled_euler(double s);

/// Limiting CDF of the Euler-weight unscaled differences; derivative is
/// g_unscaled_euler.
double limit_cdf_euler(double s);

/// Pair correlation function for Euler weights at linear scaling:
///   g(s) = (1/s^4) sum_{1 <= k <= |s|, k = 0 mod b} c_{a,b,k} k^3,
/// zero on (-b, b). Constants are memoized per k at the configured prime
/// cutoff (single-writer warm-up; concurrent reads are safe afterwards).
class LinearEulerDensity {
public:
  LinearEulerDensity(std::shared_ptr<const arith::Sieve> sieve, std::uint32_t a, std::uint32_t b,
                     std::uint32_t prime_cutoff);

  double operator()(double s) const;

  /// Exact integral of the density over [x, y] (piecewise c/s^4 antiderivative).
  double integral(double x, double y) const;

  /// Memoized c_{a,b,k}.
  double constant(std::uint32_t k) const;

  /// Precompute constants for all k <= max_s.
  void warm_up(double max_s) const;

  std::uint32_t a() const { return a_; }
  std::uint32_t b() const { return b_; }

private:
  double cumulative(std::uint64_t j) const; // sum_{k <= j, b | k} c_{a,b,k} k^3

  std::shared_ptr<const arith::Sieve> sieve_;
  std::uint32_t a_;
  std::uint32_t b_;
  std::uint32_t prime_cutoff_;
  mutable std::vector<double> constants_;  // index k
  mutable std::vector<double> cumulative_; // index j
};

} // namespace paircorr::limits
