#pragma once

#include <cstdint>

#include "paircorr/numeric.hpp"
#include "paircorr/sieve.hpp"

namespace paircorr::arith {

/// A truncated arithmetic constant together with a certified bound on the
/// truncation error. tail_bound = 0 means the value is a finite product.
struct ArithmeticConstant {
  std::uint32_t a = 1;
  std::uint32_t b = 1;
  std::uint32_t k = 0;
  std::uint32_t prime_cutoff = 0;
  double value = 0.0;
  double tail_bound = 0.0;
};

struct Rational {
  std::int64_t num;
  std::int64_t den;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Exact Sum_{n <= x, n = a mod b} phi(n).
u128 mertens_congruence_sum(const Sieve& sieve, double x, std::uint32_t a, std::uint32_t b);

/// Exact Sum_{n <= x, n = a mod b} phi(n) phi(n+k), 128-bit accumulation.
/// Requires the sieve to cover x + k.
u128 mirsky_sum(const Sieve& sieve, double x, std::uint32_t a, std::uint32_t b, std::uint32_t k);

/// Main term c_{a,b,k} (x^3/3 + k x^2/2) of the Mirsky asymptotic.
double mirsky_asymptotic(double x, std::uint32_t k, const ArithmeticConstant& c_abk);

/// c_{a,b} = phi((a,b)) / (b (a,b)) * prod_{p | b} (1 - 1/p^2)^{-1}.
/// Finite product over the primes dividing b, so tail_bound = 0.
ArithmeticConstant c_ab(std::uint32_t a, std::uint32_t b);

/// Main term (3 c_{a,b} / pi^2) x^2 of the Mertens asymptotic.
double mertens_asymptotic(double x, const ArithmeticConstant& c_ab);

/// Euler product for c_{a,b,k}, truncated at prime_cutoff; primes dividing
/// b, k or k+a are always included exactly. The reported tail_bound covers
/// the omitted generic factors, which lie in [1 - 3/p^2, 1].
ArithmeticConstant c_abk_product(const Sieve& sieve, std::uint32_t a, std::uint32_t b,
                                 std::uint32_t k, std::uint32_t prime_cutoff);

/// Truncated double Moebius series for c_{a,b,k}: the sum of
///   mu(d) mu(delta) (delta(d,b), b(d,delta)) / (b d^2 delta^2)
/// over d, delta <= series_cutoff subject to (d,b)|a, (d,delta)|k and
/// (delta(d,b), b(d,delta)) | d(k+a). Independent oracle for c_abk_product;
/// the truncation tail is O(1/series_cutoff).
double c_abk_series(const Sieve& sieve, std::uint32_t a, std::uint32_t b, std::uint32_t k,
                    std::uint32_t series_cutoff);

/// The local factor Lambda(a,b,k) at p = 2, from the six-case parity table.
/// Always >= 1/4.
Rational lambda_abk(std::uint32_t a, std::uint32_t b, std::uint32_t k);

/// Lower bound side of the c_{a,b,k} bracket:
/// (1/b) Lambda * prod_{p>=3, (p,b)|a+k} (1-(p,b)/p^2) * prod_{p>=3, (p,b)|a} (1-2(p,b)/p^2),
/// truncated at prime_cutoff (a strict lower bound needs no tail correction
/// since every omitted factor is < 1).
double c_abk_lower_bound(const Sieve& sieve, std::uint32_t a, std::uint32_t b, std::uint32_t k,
                         std::uint32_t prime_cutoff);

/// f(n) = prod_{p | n} (1 + 1/(p(p^2-2))); multiplicative, f(1) = 1.
double mult_f(const Sieve& sieve, std::uint32_t n);

/// Sum_{n <= x} n^3 f(n), compensated summation in increasing n.
double sum_n3_f(const Sieve& sieve, double x);

/// C_1 = prod_p (1 + 1/(p^2(p^2-2))), truncated at prime_cutoff.
ArithmeticConstant euler_c1(const Sieve& sieve, std::uint32_t prime_cutoff);

/// (1/4) prod_p (1 - 2/p^2)(1 + 1/(p^2(p^2-2))) -- the horizontal asymptote
/// of the Euler-weight linear-scaling pair correlation function.
ArithmeticConstant asymptote_constant(const Sieve& sieve, std::uint32_t prime_cutoff);

/// Count of 1 <= m <= y with m = a0 mod alpha and m = b0 mod beta.
/// 0 when a0 and b0 are incompatible modulo (alpha, beta).
std::int64_t count_bi_congruence(double y, std::int64_t a0, std::int64_t alpha,
                                 std::int64_t b0, std::int64_t beta);

/// psi_d(delta) = (delta, b/(d,b) * (d,delta)); multiplicative in delta.
std::uint64_t psi_d(std::uint64_t d, std::uint64_t b, std::uint64_t delta);

/// chi_d(delta) = 1 iff (delta, d) | k.
bool chi_d(std::uint64_t d, std::uint64_t k, std::uint64_t delta);

/// chi*_d(delta) = 1 iff psi_d(delta) | (d/(d,b)) (k+a).
bool chi_star_d(std::uint64_t d, std::uint64_t b, std::uint64_t a, std::uint64_t k,
                std::uint64_t delta);

} // namespace paircorr::arith
