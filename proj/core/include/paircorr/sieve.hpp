#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "paircorr/errors.hpp"

namespace paircorr::arith {

/// Linear sieve holding the Euler function phi, the Moebius function mu and
/// the smallest prime factor for 1..limit. Built once, then shared read-only;
/// every arith operation is pure given a const Sieve.
class Sieve {
public:
  // 2e7 keeps the tables under ~200 MB and covers every suite in this
  // repository (the Mirsky/Mertens grids stop at x = 1e6, k <= 10).
  static constexpr std::uint32_t max_limit = 20'000'000;

  explicit Sieve(std::uint32_t limit);

  std::uint32_t limit() const { return limit_; }

  std::uint32_t phi(std::uint32_t n) const {
    check_range(n);
    return phi_[n];
  }

  /// mu(n) in {-1, 0, 1}; 0 exactly when n has a squared prime factor.
  std::int32_t mu(std::uint32_t n) const {
    check_range(n);
    return mu_[n];
  }

  bool is_squarefree(std::uint32_t n) const { return mu(n) != 0; }

  std::uint32_t smallest_prime_factor(std::uint32_t n) const {
    check_range(n);
    return spf_[n];
  }

  std::span<const std::uint32_t> primes() const { return primes_; }

  /// Calls fn(p) for each distinct prime factor of n, in increasing order.
  template <class F>
  void for_each_prime_factor(std::uint32_t n, F&& fn) const {
    check_range(n);
    while (n > 1) {
      std::uint32_t p = spf_[n];
      fn(p);
      while (n % p == 0) n /= p;
    }
  }

private:
  void check_range(std::uint32_t n) const {
    if (n < 1 || n > limit_) throw CapacityError("sieve index out of range");
  }

  std::uint32_t limit_;
  std::vector<std::uint32_t> phi_;
  std::vector<std::int8_t> mu_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

} // namespace paircorr::arith
