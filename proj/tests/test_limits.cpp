#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

#include "paircorr/limits.hpp"

using namespace paircorr;
using namespace paircorr::limits;

namespace {
std::shared_ptr<const arith::Sieve> sieve() {
  static auto s = std::make_shared<const arith::Sieve>(1'000'000);
  return s;
}
} // namespace

TEST_CASE("unscaled trivial density and CDF") {
  CHECK(g_unscaled_trivial(0.0) == 0.5);
  CHECK(g_unscaled_trivial(1.0) == doctest::Approx(std::exp(-1.0) / 2).epsilon(1e-15));
  CHECK(limit_cdf_trivial(0.0) == 0.5);
  CHECK(limit_cdf_trivial(1.0) == doctest::Approx(0.8160602794142788).epsilon(1e-15));
  for (double s : {-3.0, -0.5, 0.2, 2.0})
    CHECK(limit_cdf_trivial(-s) == doctest::Approx(1.0 - limit_cdf_trivial(s)).epsilon(1e-15));
}

TEST_CASE("unscaled euler density and CDF") {
  CHECK(g_unscaled_euler(0.0) == 1.0);
  CHECK(limit_cdf_euler(0.0) == 0.5);
  CHECK(limit_cdf_euler(0.7) == doctest::Approx(1.0 - 0.5 * std::exp(-1.4)).epsilon(1e-15));
}

TEST_CASE("derivative consistency of the CDFs") {
  double h = 1e-4;
  for (double s : {-2.0, -0.5, 0.5, 2.0}) {
    double d1 = (limit_cdf_trivial(s + h) - limit_cdf_trivial(s - h)) / (2 * h);
    CHECK(d1 == doctest::Approx(g_unscaled_trivial(s)).epsilon(1e-7));
    double d2 = (limit_cdf_euler(s + h) - limit_cdf_euler(s - h)) / (2 * h);
    CHECK(d2 == doctest::Approx(g_unscaled_euler(s)).epsilon(1e-7));
  }
}

TEST_CASE("probability densities integrate to one") {
  // trapezoid over a wide window is enough at these decay rates
  auto integral = [](auto g) {
    double acc = 0.0, h = 1e-3;
    for (double s = -20.0; s < 20.0; s += h) acc += 0.5 * (g(s) + g(s + h)) * h;
    return acc;
  };
  CHECK(integral(g_unscaled_trivial) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(integral(g_unscaled_euler) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("sublinear constant") {
  CHECK(g_sublinear_trivial(1) == 0.5);
  CHECK(g_sublinear_trivial(2) == 0.125);
}

TEST_CASE("linear trivial floor formula") {
  CHECK(g_linear_trivial(0.5, 1, 1.0) == 0.0);
  CHECK(g_linear_trivial(1.5, 1, 1.0) == doctest::Approx(4.0 / 9.0).epsilon(1e-15));
  CHECK(g_linear_trivial(1e9, 1, 1.0) == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(g_linear_trivial(1e9, 2, 0.5) == doctest::Approx(0.5).epsilon(1e-8)); // 1/(2 b^2 lam^2)
  // level repulsion window is exact
  for (double t : {0.0, 0.3, 0.999, -0.7})
    CHECK(g_linear_trivial(t, 1, 1.0) == 0.0);
  CHECK(g_linear_trivial(1.9999, 2, 1.0) == 0.0); // window (-2, 2) for b = 2
}

TEST_CASE("theta_N") {
  // vanishing threshold: t <= b psi / (N - b)
  std::uint64_t N = 1000;
  double psi = 1000.0;
  double thresh = psi / (N - 1.0);
  CHECK(theta_n(thresh * 0.999, N, 1, psi) == 0.0);
  CHECK(theta_n(thresh * 1.002, N, 1, psi) > 0.0);

  // pointwise convergence to theta_infinity off the integer lattice
  for (double t : {0.3, 1.5, 2.7, 9.9}) {
    double v = theta_n(t, 1'000'000, 1, 1'000'000.0);
    CHECK(std::abs(v - g_linear_trivial(t, 1, 1.0)) < 1e-3);
  }
  CHECK(theta_n(1.5, 1'000'000, 1, 1'000'000.0) == doctest::Approx(4.0 / 9.0).epsilon(1e-5));
}

TEST_CASE("linear euler density") {
  LinearEulerDensity g(sieve(), 1, 1, 1'000'000);
  CHECK(g(0.5) == 0.0);
  CHECK(g(-0.99) == 0.0);
  CHECK(g(1.5) == doctest::Approx(0.0637302).epsilon(1e-5)); // c_{1,1,1}/1.5^4
  CHECK(g(1.5) == doctest::Approx(g.constant(1) / std::pow(1.5, 4)).epsilon(1e-15));

  // window (-b, b) for congruence families
  LinearEulerDensity g3(sieve(), 3, 3, 10'000);
  CHECK(g3(2.9) == 0.0);
  CHECK(g3(3.5) > 0.0);

  // integral consistency with pointwise evaluation (midpoints stay clear of
  // the jump at s = 2)
  double fine = 0.0;
  int steps = 20'000;
  double h = 1.0 / steps;
  for (int i = 0; i < steps; ++i) fine += g(1.0 + (i + 0.5) * h) * h;
  CHECK(g.integral(1.0, 2.0) == doctest::Approx(fine).epsilon(1e-6));
  CHECK(g.integral(0.0, 1.0) == 0.0);
}

TEST_CASE("linear euler asymptote average") {
  LinearEulerDensity g(sieve(), 1, 1, 1'000'000);
  double avg = g.integral(50.0, 100.0) / 50.0;
  CHECK(avg == doctest::Approx(0.0923938528).epsilon(1e-4));
}

TEST_CASE("evenness of every regime") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> ts(0.01, 30.0);
  LinearEulerDensity g(sieve(), 1, 1, 10'000);
  g.warm_up(31.0);
  for (int i = 0; i < 1000; ++i) {
    double t = ts(rng);
    REQUIRE(g_unscaled_trivial(t) == g_unscaled_trivial(-t));
    REQUIRE(g_unscaled_euler(t) == g_unscaled_euler(-t));
    REQUIRE(g_linear_trivial(t, 2, 0.7) == g_linear_trivial(-t, 2, 0.7));
    REQUIRE(g(t) == g(-t));
  }
}
