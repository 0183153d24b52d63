#include "paircorr/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace paircorr {

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

} // namespace paircorr

namespace paircorr::arith {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::uint32_t residue_start(std::uint32_t a, std::uint32_t b) {
  std::uint32_t r = a % b;
  return r == 0 ? b : r;
}

std::vector<std::uint64_t> prime_factors_trial(std::uint64_t n) {
  std::vector<std::uint64_t> ps;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      ps.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) ps.push_back(n);
  return ps;
}

/// Per-prime local factor of the c_{a,b,k} Euler product.
double local_factor(std::uint64_t p, std::uint32_t a, std::uint32_t b, std::uint32_t k) {
  double pd = static_cast<double>(p);
  std::uint64_t gpb = (b % p == 0) ? p : 1;
  double f = 1.0;
  std::uint64_t ka = static_cast<std::uint64_t>(k) + a;
  if (ka % gpb == 0) f *= 1.0 - static_cast<double>(gpb) / (pd * pd);
  if (a % gpb == 0) {
    double kappa = (ka % gpb == 0) ? 1.0 / (1.0 - static_cast<double>(gpb) / (pd * pd)) : 1.0;
    double kappa_prime = (k % p == 0) ? 1.0 - 1.0 / pd : 1.0;
    f *= 1.0 - static_cast<double>(gpb) * kappa * kappa_prime / (pd * pd);
  }
  return f;
}

} // namespace

u128 mertens_congruence_sum(const Sieve& sieve, double x, std::uint32_t a, std::uint32_t b) {
  if (a < 1 || b < 1) throw ValidationError("a and b must be positive");
  if (!(x >= 1.0)) return 0;
  auto xi = static_cast<std::uint64_t>(x);
  if (xi > sieve.limit()) throw CapacityError("mertens sum exceeds sieve range");
  u128 total = 0;
  for (std::uint64_t n = residue_start(a, b); n <= xi; n += b)
    total += sieve.phi(static_cast<std::uint32_t>(n));
  return total;
}

u128 mirsky_sum(const Sieve& sieve, double x, std::uint32_t a, std::uint32_t b, std::uint32_t k) {
  if (a < 1 || b < 1) throw ValidationError("a and b must be positive");
  if (!(x >= 1.0)) return 0;
  auto xi = static_cast<std::uint64_t>(x);
  if (xi + k > sieve.limit()) throw CapacityError("mirsky sum exceeds sieve range (needs x + k)");
  u128 total = 0;
  for (std::uint64_t n = residue_start(a, b); n <= xi; n += b) {
    std::uint64_t w = sieve.phi(static_cast<std::uint32_t>(n));
    total += w * static_cast<std::uint64_t>(sieve.phi(static_cast<std::uint32_t>(n + k)));
  }
  return total;
}

double mirsky_asymptotic(double x, std::uint32_t k, const ArithmeticConstant& c_abk) {
  return c_abk.value * (x * x * x / 3.0 + static_cast<double>(k) * x * x / 2.0);
}

ArithmeticConstant c_ab(std::uint32_t a, std::uint32_t b) {
  if (a < 1 || b < 1) throw ValidationError("a and b must be positive");
  std::uint64_t g = std::gcd<std::uint64_t>(a, b);
  double phi_g = static_cast<double>(g);
  for (std::uint64_t p : prime_factors_trial(g)) phi_g *= 1.0 - 1.0 / static_cast<double>(p);
  double value = phi_g / (static_cast<double>(b) * static_cast<double>(g));
  for (std::uint64_t p : prime_factors_trial(b)) {
    double pd = static_cast<double>(p);
    value /= 1.0 - 1.0 / (pd * pd);
  }
  return {a, b, 0, 0, value, 0.0};
}

double mertens_asymptotic(double x, const ArithmeticConstant& c) {
  return 3.0 * c.value / (kPi * kPi) * x * x;
}

ArithmeticConstant c_abk_product(const Sieve& sieve, std::uint32_t a, std::uint32_t b,
                                 std::uint32_t k, std::uint32_t prime_cutoff) {
  if (a < 1 || b < 1) throw ValidationError("a and b must be positive");
  if (prime_cutoff < 2) throw ValidationError("prime cutoff must be >= 2");
  if (prime_cutoff > sieve.limit()) throw CapacityError("prime cutoff exceeds sieve range");

  double value = 1.0 / static_cast<double>(b);
  for (std::uint32_t p : sieve.primes()) {
    if (p > prime_cutoff) break;
    value *= local_factor(p, a, b, k);
  }
  // Primes dividing b, k or k+a are handled exactly even beyond the cutoff.
  std::vector<std::uint64_t> beyond;
  for (std::uint64_t n : {static_cast<std::uint64_t>(b), static_cast<std::uint64_t>(k),
                          static_cast<std::uint64_t>(k) + a})
    if (n > 1)
      for (std::uint64_t p : prime_factors_trial(n))
        if (p > prime_cutoff) beyond.push_back(p);
  std::sort(beyond.begin(), beyond.end());
  beyond.erase(std::unique(beyond.begin(), beyond.end()), beyond.end());
  for (std::uint64_t p : beyond) value *= local_factor(p, a, b, k);

  // Omitted generic factors lie in [1 - 3/p^2, 1] and sum_{p>P} 1/p^2 < 1/(P-1).
  double tail = value * 3.0 / (static_cast<double>(prime_cutoff) - 1.0);
  return {a, b, k, prime_cutoff, value, tail};
}

Rational lambda_abk(std::uint32_t a, std::uint32_t b, std::uint32_t k) {
  bool b2 = b % 2 == 0, a2 = a % 2 == 0, k2 = k % 2 == 0;
  if (!b2) return k2 ? Rational{5, 8} : Rational{1, 2};
  if (!a2) return k2 ? Rational{1, 1} : Rational{1, 2};
  return k2 ? Rational{1, 4} : Rational{1, 2};
}

double c_abk_lower_bound(const Sieve& sieve, std::uint32_t a, std::uint32_t b, std::uint32_t k,
                         std::uint32_t prime_cutoff) {
  double value = lambda_abk(a, b, k).value() / static_cast<double>(b);
  std::uint64_t ka = static_cast<std::uint64_t>(k) + a;
  for (std::uint32_t p : sieve.primes()) {
    if (p > prime_cutoff) break;
    if (p < 3) continue;
    double pd = p;
    std::uint64_t gpb = (b % p == 0) ? p : 1;
    if (ka % gpb == 0) value *= 1.0 - static_cast<double>(gpb) / (pd * pd);
    if (a % gpb == 0) value *= 1.0 - 2.0 * static_cast<double>(gpb) / (pd * pd);
  }
  return value;
}

namespace {

/// Squarefree delta <= cutoff with dense prefix sums of mu(delta)/delta^2.
struct SquarefreeTable {
  std::vector<std::uint32_t> values;
  std::vector<double> prefix; // prefix[y] = sum over squarefree delta <= y

  SquarefreeTable(const Sieve& sieve, std::uint32_t cutoff) {
    values.reserve(static_cast<std::size_t>(cutoff * 0.61) + 8);
    prefix.resize(cutoff + 1);
    double run = 0.0;
    for (std::uint32_t n = 1; n <= cutoff; ++n) {
      int m = sieve.mu(n);
      if (m != 0) {
        run += static_cast<double>(m) / (static_cast<double>(n) * static_cast<double>(n));
        values.push_back(n);
      }
      prefix[n] = run;
    }
  }

  /// sum_{delta <= y, squarefree} mu(delta)/delta^2
  double m0(std::uint64_t y) const {
    return prefix[y < prefix.size() ? y : prefix.size() - 1];
  }
};

} // namespace

double c_abk_series(const Sieve& sieve, std::uint32_t a, std::uint32_t b, std::uint32_t k,
                    std::uint32_t series_cutoff) {
  if (a < 1 || b < 1) throw ValidationError("a and b must be positive");
  if (series_cutoff < 1) throw ValidationError("series cutoff must be >= 1");
  if (series_cutoff > sieve.limit()) throw CapacityError("series cutoff exceeds sieve range");

  const std::uint32_t D = series_cutoff;
  SquarefreeTable table(sieve, D);
  std::vector<std::uint64_t> b_primes = prime_factors_trial(b);

  KahanSum total;
  std::vector<std::uint32_t> special;
  std::vector<double> weight;
  for (std::uint32_t d : table.values) {
    std::uint64_t gdb = std::gcd<std::uint64_t>(d, b);
    if (a % gdb != 0) continue;

    // special primes: divisors of d or b (only p <= D can occur in delta)
    special.clear();
    sieve.for_each_prime_factor(d, [&](std::uint32_t p) { special.push_back(p); });
    for (std::uint64_t p : b_primes)
      if (p <= D && d % p != 0) special.push_back(static_cast<std::uint32_t>(p));
    std::sort(special.begin(), special.end());

    // h(p) = mu(p) chi_d(p) chi*_d(p) psi_d(p) for each special prime
    weight.assign(special.size(), 0.0);
    for (std::size_t i = 0; i < special.size(); ++i) {
      std::uint32_t p = special[i];
      if (chi_d(d, k, p) && chi_star_d(d, b, a, k, p))
        weight[i] = -static_cast<double>(psi_d(d, b, p));
    }

    // The truncated delta-sum S_d = sum_{delta <= D} mu chi chi* psi / delta^2
    // rearranges exactly into a sum over special-smooth u <= D:
    //   S_d = sum_u G(u) m0(D/u),  G(u) = prod_{p | u} (1 + h(p)) / u^2,
    // since the per-prime convolution of G with the plain Moebius prefix
    // reproduces h on squarefree arguments and cancels on the rest.
    double s_sum = 0.0;
    auto dfs = [&](auto&& self, std::size_t idx, std::uint64_t u, double coeff) -> void {
      s_sum += coeff * table.m0(D / u);
      for (std::size_t i = idx; i < special.size(); ++i) {
        std::uint64_t p = special[i];
        if (u > D / p) break; // specials ascend, so every later p overflows too
        double pd = static_cast<double>(p);
        std::uint64_t up = u * p;
        double c2 = coeff * (1.0 + weight[i]) / (pd * pd);
        while (true) {
          self(self, i + 1, up, c2);
          if (up > D / p) break;
          up *= p;
          c2 /= pd * pd;
        }
      }
    };
    dfs(dfs, 0, 1, 1.0);

    double dd = static_cast<double>(d);
    total.add(static_cast<double>(sieve.mu(d)) * static_cast<double>(gdb) /
              (static_cast<double>(b) * dd * dd) * s_sum);
  }
  return total.value();
}

double mult_f(const Sieve& sieve, std::uint32_t n) {
  if (n < 1) throw ValidationError("n must be positive");
  double v = 1.0;
  sieve.for_each_prime_factor(n, [&](std::uint32_t p) {
    double pd = p;
    v *= 1.0 + 1.0 / (pd * (pd * pd - 2.0));
  });
  return v;
}

double sum_n3_f(const Sieve& sieve, double x) {
  if (!(x >= 1.0)) return 0.0;
  auto xi = static_cast<std::uint64_t>(x);
  if (xi > sieve.limit()) throw CapacityError("sum_n3_f exceeds sieve range");
  KahanSum total;
  for (std::uint64_t n = 1; n <= xi; ++n) {
    double nd = static_cast<double>(n);
    total.add(nd * nd * nd * mult_f(sieve, static_cast<std::uint32_t>(n)));
  }
  return total.value();
}

ArithmeticConstant euler_c1(const Sieve& sieve, std::uint32_t prime_cutoff) {
  if (prime_cutoff < 2) throw ValidationError("prime cutoff must be >= 2");
  if (prime_cutoff > sieve.limit()) throw CapacityError("prime cutoff exceeds sieve range");
  double value = 1.0;
  for (std::uint32_t p : sieve.primes()) {
    if (p > prime_cutoff) break;
    double pd = p;
    value *= 1.0 + 1.0 / (pd * pd * (pd * pd - 2.0));
  }
  double tail = value * 2.0 / (static_cast<double>(prime_cutoff) - 1.0);
  return {1, 1, 0, prime_cutoff, value, tail};
}

ArithmeticConstant asymptote_constant(const Sieve& sieve, std::uint32_t prime_cutoff) {
  if (prime_cutoff < 2) throw ValidationError("prime cutoff must be >= 2");
  if (prime_cutoff > sieve.limit()) throw CapacityError("prime cutoff exceeds sieve range");
  double value = 0.25;
  for (std::uint32_t p : sieve.primes()) {
    if (p > prime_cutoff) break;
    double pd = p;
    value *= (1.0 - 2.0 / (pd * pd)) * (1.0 + 1.0 / (pd * pd * (pd * pd - 2.0)));
  }
  double tail = value * 3.0 / (static_cast<double>(prime_cutoff) - 1.0);
  return {1, 1, 0, prime_cutoff, value, tail};
}

std::int64_t count_bi_congruence(double y, std::int64_t a0, std::int64_t alpha, std::int64_t b0,
                                 std::int64_t beta) {
  if (alpha < 1 || beta < 1) throw ValidationError("moduli must be positive");
  if (!(y >= 1.0)) return 0;
  std::int64_t g = std::gcd(alpha, beta);
  std::int64_t diff = (b0 - a0) % g;
  if (diff != 0) return 0;

  // CRT: smallest positive m with m = a0 (alpha), m = b0 (beta)
  std::int64_t lcm = alpha / g * beta;
  auto mod = [](std::int64_t v, std::int64_t m) { return ((v % m) + m) % m; };
  // extended gcd for alpha/g inverse modulo beta/g
  std::int64_t m1 = alpha / g, m2 = beta / g;
  std::int64_t r0 = m1 % m2, r1 = m2, s0 = 1, s1 = 0;
  while (r0 != 0) {
    std::int64_t q = r1 / r0;
    std::int64_t r2 = r1 - q * r0;
    std::int64_t s2 = s1 - q * s0;
    r1 = r0; r0 = r2;
    s1 = s0; s0 = s2;
  }
  std::int64_t inv = mod(s1, m2); // (alpha/g)^{-1} mod beta/g
  std::int64_t t = mod((b0 - a0) / g % m2 * inv, m2);
  std::int64_t m = mod(a0, lcm) + t % m2 * alpha;
  m = mod(m, lcm);
  if (m == 0) m = lcm;

  auto yi = static_cast<std::int64_t>(y);
  if (m > yi) return 0;
  return (yi - m) / lcm + 1;
}

std::uint64_t psi_d(std::uint64_t d, std::uint64_t b, std::uint64_t delta) {
  if (d < 1 || b < 1 || delta < 1) throw ValidationError("arguments must be positive");
  std::uint64_t gdb = std::gcd(d, b);
  return std::gcd(delta, b / gdb * std::gcd(d, delta));
}

bool chi_d(std::uint64_t d, std::uint64_t k, std::uint64_t delta) {
  if (d < 1 || delta < 1) throw ValidationError("arguments must be positive");
  return k % std::gcd(delta, d) == 0;
}

bool chi_star_d(std::uint64_t d, std::uint64_t b, std::uint64_t a, std::uint64_t k,
                std::uint64_t delta) {
  if (a < 1) throw ValidationError("a must be positive");
  std::uint64_t gdb = std::gcd(d, b);
  return (d / gdb * (k + a)) % psi_d(d, b, delta) == 0;
}

} // namespace paircorr::arith
