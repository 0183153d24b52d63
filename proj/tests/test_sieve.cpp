#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "paircorr/sieve.hpp"

using paircorr::arith::Sieve;

namespace {
const Sieve& sieve() {
  static Sieve s(100'000);
  return s;
}

// independent oracle: totient by direct gcd counting
std::uint32_t phi_gcd(std::uint32_t n) {
  std::uint32_t c = 0;
  for (std::uint32_t i = 1; i <= n; ++i)
    if (std::gcd(i, n) == 1) ++c;
  return c;
}
} // namespace

TEST_CASE("base case limit = 1") {
  Sieve s(1);
  CHECK(s.phi(1) == 1);
  CHECK(s.mu(1) == 1);
}

TEST_CASE("spot values against the gcd-counting oracle") {
  CHECK(sieve().phi(12) == 4);
  CHECK(sieve().mu(12) == 0);
  CHECK(sieve().phi(10) == 4);
  CHECK(sieve().mu(10) == 1);
  for (std::uint32_t n : {1u, 2u, 7u, 36u, 97u, 360u, 1024u, 2310u})
    CHECK(sieve().phi(n) == phi_gcd(n));
}

TEST_CASE("primes have phi = p - 1 and mu = -1") {
  for (std::uint32_t p : sieve().primes()) {
    if (p > 10'000) break;
    CHECK(sieve().phi(p) == p - 1);
    CHECK(sieve().mu(p) == -1);
    CHECK(sieve().smallest_prime_factor(p) == p);
  }
}

TEST_CASE("mu vanishes exactly on non-squarefree integers") {
  for (std::uint32_t n = 1; n <= 5000; ++n) {
    bool squarefull = false;
    std::uint32_t m = n;
    for (std::uint32_t p = 2; p * p <= m; ++p)
      if (m % (p * p) == 0) squarefull = true;
    CHECK((sieve().mu(n) == 0) == squarefull);
  }
}

TEST_CASE("Gauss identity: sum of phi over divisors") {
  std::vector<std::uint64_t> acc(10'001, 0);
  for (std::uint32_t d = 1; d <= 10'000; ++d)
    for (std::uint32_t n = d; n <= 10'000; n += d) acc[n] += sieve().phi(d);
  for (std::uint32_t n = 1; n <= 10'000; ++n) REQUIRE(acc[n] == n);
}

TEST_CASE("range and capacity errors") {
  CHECK_THROWS_AS(Sieve(0), paircorr::ValidationError);
  CHECK_THROWS_AS(Sieve(Sieve::max_limit + 1), paircorr::CapacityError);
  CHECK_THROWS_AS(sieve().phi(0), paircorr::CapacityError);
  CHECK_THROWS_AS(sieve().phi(sieve().limit() + 1), paircorr::CapacityError);
}
