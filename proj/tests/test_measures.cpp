#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <memory>

#include "paircorr/limits.hpp"
#include "paircorr/measures.hpp"

using namespace paircorr;
using namespace paircorr::measures;
using family::ScalingSpec;
using family::WeightedLogFamily;
using family::WeightMode;

namespace {
std::shared_ptr<const arith::Sieve> sieve() {
  static auto s = std::make_shared<const arith::Sieve>(5000);
  return s;
}
} // namespace

TEST_CASE("two-point family: atoms at +-ln 2") {
  WeightedLogFamily fam(1, 1, WeightMode::trivial);
  auto mu = build_pair_correlation(fam, 2, ScalingSpec::trivial());
  CHECK(mu.atom_count() == 2);
  auto pos = mu.positions();
  std::vector<double> got;
  mu.for_each_atom([&](const AtomEvent& e) {
    CHECK(e.mass == 1);
    got.push_back(pos(e.m, e.n));
  });
  REQUIRE(got.size() == 2);
  CHECK(std::abs(got[0] + got[1]) == 0.0); // exactly opposite
  CHECK(std::max(got[0], got[1]) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("euler masses are totient products") {
  WeightedLogFamily fam(1, 1, WeightMode::euler);
  auto mu = build_pair_correlation(fam, 3, ScalingSpec::trivial(), sieve());
  bool found = false;
  auto pos = mu.positions();
  mu.for_each_atom([&](const AtomEvent& e) {
    if (e.m == 3 && e.n == 2) {
      found = true;
      CHECK(e.mass == 2); // phi(3) phi(2)
      CHECK(pos(e.m, e.n) == doctest::Approx(std::log(1.5)).epsilon(1e-15));
    }
  });
  CHECK(found);
}

TEST_CASE("exact masses") {
  WeightedLogFamily triv(1, 1, WeightMode::trivial);
  auto mu = build_pair_correlation(triv, 10, ScalingSpec::trivial());
  CHECK(mu.total_mass_exact() == 90);

  // euler: (sum phi)^2 - sum phi^2, against direct accumulation
  WeightedLogFamily eu(2, 3, WeightMode::euler);
  auto nu = build_pair_correlation(eu, 200, ScalingSpec::trivial(), sieve());
  u128 direct = 0;
  nu.for_each_atom([&](const AtomEvent& e) { direct += e.mass; });
  CHECK(nu.total_mass_exact() == direct);
}

TEST_CASE("cdf basics") {
  WeightedLogFamily fam(1, 1, WeightMode::trivial);
  auto mu = build_pair_correlation(fam, 50, ScalingSpec::trivial());
  CHECK(cdf(mu, 100.0) == 1.0);
  CHECK(cdf(mu, -100.0) == 0.0);
  CHECK(cdf(mu, 0.0) == 0.5); // sign symmetry, no atom at zero
  // nondecreasing
  double prev = -1.0;
  for (double s : {-2.0, -1.0, -0.1, 0.0, 0.3, 1.0, 2.5}) {
    double v = cdf(mu, s);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("cdf approaches the closed form at N = 2000") {
  WeightedLogFamily fam(1, 1, WeightMode::trivial);
  auto mu = build_pair_correlation(fam, 2000, ScalingSpec::trivial());
  CHECK(cdf(mu, 1.0) == doctest::Approx(limits::limit_cdf_trivial(1.0)).epsilon(0.01));
}

TEST_CASE("empty measure signalling") {
  WeightedLogFamily fam(5, 7, WeightMode::trivial);
  auto mu = build_pair_correlation(fam, 6, ScalingSpec::trivial()); // one member, no pairs
  CHECK(mu.atom_count() == 0);
  CHECK_THROWS_AS(cdf(mu, 0.0), EmptyMeasureError);
}

TEST_CASE("pairing: closed-form hat against the unscaled limit") {
  WeightedLogFamily fam(1, 1, WeightMode::trivial);
  auto mu = build_pair_correlation(fam, 2000, ScalingSpec::trivial());
  auto hat = TestFunction::hat(0.0, 1.0);
  double emp = pair(mu, hat, static_cast<double>(mu.total_mass()));
  CHECK(emp == doctest::Approx(std::exp(-1.0)).epsilon(5e-3)); // int hat * e^{-|s|}/2
}

TEST_CASE("pairing is linear") {
  WeightedLogFamily fam(1, 1, WeightMode::trivial);
  auto mu = build_pair_correlation(fam, 100, ScalingSpec::trivial());
  auto f = TestFunction::hat(0.5, 0.5);
  auto g = TestFunction::smooth_bump(-0.3, 0.7);
  double vf = pair(mu, f, 1000.0);
  double vg = pair(mu, g, 1000.0);
  double vfg = pair(
      mu, [&](double s) { return f(s) + g(s); }, 1000.0);
  CHECK(vfg == doctest::Approx(vf + vg).epsilon(1e-12));
  CHECK(pair(mu, [](double) { return 0.0; }, 3.0) == 0.0);
}

TEST_CASE("binning") {
  WeightedLogFamily fam(1, 1, WeightMode::trivial);
  auto mu = build_pair_correlation(fam, 30, ScalingSpec::trivial());

  SUBCASE("symmetric support mirrors exactly") {
    auto h = bin(mu, -4.0, 4.0, 64, 1.0);
    for (std::uint32_t i = 0; i < 32; ++i) CHECK(h.counts[i] == h.counts[63 - i]);
    CHECK(h.overflow_mass == 0.0);
  }

  SUBCASE("overflow is reported") {
    auto h = bin(mu, -0.1, 0.1, 4, 1.0);
    double inside = 0.0;
    for (double c : h.counts) inside += c;
    CHECK(inside + h.overflow_mass == doctest::Approx(static_cast<double>(mu.total_mass())));
    CHECK(h.overflow_atoms > 0);
  }

  SUBCASE("single atom lands in its bin") {
    auto two = build_pair_correlation(fam, 2, ScalingSpec::trivial());
    // atoms at +-ln 2 ~ +-0.693: bins of width 0.5 over [-1, 1]
    auto h = bin(two, -1.0, 1.0, 4, 1.0);
    CHECK(h.counts[0] == 1.0);
    CHECK(h.counts[3] == 1.0);
    CHECK(h.counts[1] == 0.0);
    CHECK(h.counts[2] == 0.0);
  }
}

TEST_CASE("pairing consistency with the histogram") {
  WeightedLogFamily fam(1, 1, WeightMode::trivial);
  auto mu = build_pair_correlation(fam, 500, ScalingSpec::trivial());
  auto hat = TestFunction::hat(0.0, 2.0);
  double mass = static_cast<double>(mu.total_mass());
  double paired = pair(mu, hat, mass);
  auto h = bin(mu, -2.0, 2.0, 400, mass);
  double riemann = 0.0;
  for (std::uint32_t i = 0; i < h.bins; ++i)
    riemann += h.density(i) * hat(0.5 * (h.bin_lo(i) + h.bin_hi(i))) * h.bin_width();
  // off by at most one bin width of hat modulus of continuity
  CHECK(std::abs(paired - riemann) < h.bin_width());
}

TEST_CASE("linear-scaling histogram tracks the floor-formula density") {
  WeightedLogFamily fam(1, 1, WeightMode::trivial);
  const std::uint32_t N = 2000;
  auto mu = build_pair_correlation(fam, N, ScalingSpec::linear());
  auto h = bin(mu, -4.0, 4.0, 400, static_cast<double>(N));
  // bins strictly inside (1, 2): g(t) = 1/t^2, averaged in closed form
  for (std::uint32_t i : {270u, 280u, 290u}) { // [1.4,1.42), [1.6,1.62), [1.8,1.82)
    double lo = h.bin_lo(i), hi = h.bin_hi(i);
    REQUIRE(lo > 1.0);
    REQUIRE(hi < 2.0);
    double avg = (1.0 / lo - 1.0 / hi) / (hi - lo);
    CHECK(h.density(i) == doctest::Approx(avg).epsilon(0.05));
  }
  // and the repulsion window carries no mass at all
  for (std::uint32_t i = 0; i < h.bins; ++i)
    if (h.bin_hi(i) > -0.9 && h.bin_lo(i) < 0.9) CHECK(h.counts[i] == 0.0);
}

TEST_CASE("doubling pushforward is exact") {
  WeightedLogFamily fam(1, 1, WeightMode::euler);
  auto mu = build_pair_correlation(fam, 40, ScalingSpec::linear(), sieve());
  auto dbl = pushforward_double(mu);
  CHECK(dbl.total_mass_exact() == mu.total_mass_exact());
  CHECK(dbl.position_scale() == 2.0 * mu.position_scale());
  auto p1 = mu.positions();
  auto p2 = dbl.positions();
  mu.for_each_atom([&](const AtomEvent& e) {
    REQUIRE(p2(e.m, e.n) == 2.0 * p1(e.m, e.n));
  });
}

TEST_CASE("atom budget capacity error") {
  WeightedLogFamily fam(1, 1, WeightMode::trivial);
  BuildOptions opts;
  opts.atom_budget = 100;
  CHECK_THROWS_AS(build_pair_correlation(fam, 50, ScalingSpec::trivial(), nullptr, opts),
                  CapacityError);
}

TEST_CASE("test function shapes") {
  auto hat = TestFunction::hat(1.0, 0.5);
  CHECK(hat(1.0) == 1.0);
  CHECK(hat(0.75) == 0.5);
  CHECK(hat(0.4) == 0.0);
  CHECK(hat(1.6) == 0.0);

  auto bump = TestFunction::smooth_bump(0.0, 1.0);
  CHECK(bump(0.0) == 1.0);
  CHECK(bump(1.0) == 0.0);
  CHECK(bump(0.5) == doctest::Approx(0.5));
  // C^1: one-sided slopes vanish at the support edge
  double h = 1e-6;
  CHECK(std::abs(bump(1.0 - h) - bump(1.0)) / h < 1e-4);
}

TEST_CASE("quadrature against closed forms") {
  auto hat = TestFunction::hat(0.0, 1.0);
  double closed = hat_exp_integral(0.0, 1.0, 1.0);
  CHECK(closed == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-14)); // 2 int_0^1 (1-s)e^{-s}
  double quad = integrate_against(hat, [](double s) { return std::exp(-std::abs(s)); });
  CHECK(quad == doctest::Approx(closed).epsilon(1e-9));

  // asymmetric hat across zero, rate 2
  double c2 = hat_exp_integral(0.3, 1.0, 2.0);
  double q2 = integrate_against(TestFunction::hat(0.3, 1.0),
                                [](double s) { return std::exp(-2.0 * std::abs(s)); });
  CHECK(q2 == doctest::Approx(c2).epsilon(1e-9));

  // piecewise-discontinuous integrand with a breakpoint supplied
  std::vector<double> cuts = {1.0};
  double step = integrate_against(TestFunction::hat(1.0, 0.5),
                                  [](double s) { return s < 1.0 ? 0.0 : 1.0; }, cuts);
  CHECK(step == doctest::Approx(0.25).epsilon(1e-9)); // right half of the hat
}
