#include "paircorr/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>

#include "paircorr/arith.hpp"
#include "paircorr/errors.hpp"
#include "paircorr/family.hpp"
#include "paircorr/limits.hpp"
#include "paircorr/measures.hpp"
#include "paircorr/modular.hpp"
#include "paircorr/verify.hpp"

namespace paircorr::acceptance {

namespace {

constexpr double kPi = 3.14159265358979323846;

using arith::Sieve;
using family::ScalingSpec;
using family::WeightedLogFamily;
using family::WeightMode;

struct Context {
  Options options;
  std::shared_ptr<const Sieve> sieve; // covers 1e6 + 10
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// --- 1: exact constants ----------------------------------------------------

CriterionResult criterion_constants(const Context&) {
  CriterionResult r{1, "constants exact (c_{1,1} = 1, Lambda parity table)", false, ""};
  bool ok = arith::c_ab(1, 1).value == 1.0;

  struct Row {
    std::uint32_t a, b, k;
    std::int64_t num, den;
  };
  // one representative per parity case of (b, a, k)
  const Row table[] = {
      {1, 1, 2, 5, 8}, {1, 1, 1, 1, 2}, {1, 2, 2, 1, 1},
      {1, 2, 1, 1, 2}, {2, 2, 2, 1, 4}, {2, 2, 1, 1, 2},
  };
  for (const Row& row : table) {
    auto lam = arith::lambda_abk(row.a, row.b, row.k);
    ok = ok && lam.num == row.num && lam.den == row.den;
  }
  for (std::uint32_t a = 1; a <= 8; ++a)
    for (std::uint32_t b = 1; b <= 8; ++b)
      for (std::uint32_t k = 0; k <= 8; ++k)
        ok = ok && arith::lambda_abk(a, b, k).value() >= 0.25;

  r.passed = ok;
  r.detail = "c_{1,1} = " + fmt(arith::c_ab(1, 1).value) + ", 6 parity cases, Lambda >= 1/4";
  return r;
}

// --- 2: product vs series cross-oracle --------------------------------------

CriterionResult criterion_cross_oracle(const Context& ctx) {
  CriterionResult r{2, "c_abk product vs truncated double series", false, ""};
  double sup_d1 = 0.0, sup_d4 = 0.0;
  bool ok = true;
  for (std::uint32_t a = 1; a <= 5; ++a)
    for (std::uint32_t b = 1; b <= 5; ++b)
      for (std::uint32_t k = 0; k <= 10; ++k) {
        double prod = arith::c_abk_product(*ctx.sieve, a, b, k, ctx.options.prime_cutoff).value;
        double gap1 = std::abs(prod - arith::c_abk_series(*ctx.sieve, a, b, k, 10'000));
        double gap4 = std::abs(prod - arith::c_abk_series(*ctx.sieve, a, b, k, 40'000));
        sup_d1 = std::max(sup_d1, gap1);
        sup_d4 = std::max(sup_d4, gap4);
        ok = ok && gap1 < 1e-2;
      }
  ok = ok && sup_d4 < sup_d1;
  r.passed = ok;
  r.detail = "sup gap D=1e4: " + fmt(sup_d1) + ", D=4e4: " + fmt(sup_d4);
  return r;
}

// --- 3/4: Mirsky and Mertens brackets ---------------------------------------

const std::vector<std::uint64_t>& base_grid() {
  static const std::vector<std::uint64_t> g = {1'000, 10'000, 100'000, 1'000'000};
  return g;
}
const std::vector<std::uint64_t>& refined_grid() {
  static const std::vector<std::uint64_t> g = {1'000,   3'162,   10'000, 31'623,
                                               100'000, 316'228, 1'000'000};
  return g;
}

CriterionResult criterion_mirsky(const Context& ctx) {
  CriterionResult r{3, "Mirsky bracket stable under grid refinement", false, ""};
  double sup_base = 0.0, sup_refined = 0.0;
  for (std::uint32_t a = 1; a <= 5; ++a)
    for (std::uint32_t b = 1; b <= 5; ++b)
      for (std::uint32_t k = 0; k <= 10; ++k) {
        auto c = arith::c_abk_product(*ctx.sieve, a, b, k, ctx.options.prime_cutoff);
        for (std::uint64_t x : refined_grid()) {
          double xd = static_cast<double>(x);
          double sum = static_cast<double>(
              to_long_double(arith::mirsky_sum(*ctx.sieve, xd, a, b, k)));
          double resid = std::abs(sum - arith::mirsky_asymptotic(xd, k, c));
          double env = xd * (xd + k) * std::log(2.0 * xd) * std::log(2.0 * xd + k);
          double val = resid / env;
          sup_refined = std::max(sup_refined, val);
          if (std::find(base_grid().begin(), base_grid().end(), x) != base_grid().end())
            sup_base = std::max(sup_base, val);
        }
      }
  r.passed = sup_refined < 2.0 * sup_base;
  r.detail = "sup base grid: " + fmt(sup_base) + ", refined: " + fmt(sup_refined);
  return r;
}

CriterionResult criterion_mertens(const Context& ctx) {
  CriterionResult r{4, "Mertens bracket stable under grid refinement", false, ""};
  double sup_base = 0.0, sup_refined = 0.0;
  for (std::uint32_t a = 1; a <= 5; ++a)
    for (std::uint32_t b = 1; b <= 5; ++b) {
      auto c = arith::c_ab(a, b);
      for (std::uint64_t x : refined_grid()) {
        double xd = static_cast<double>(x);
        double sum = static_cast<double>(
            to_long_double(arith::mertens_congruence_sum(*ctx.sieve, xd, a, b)));
        double resid = std::abs(sum - arith::mertens_asymptotic(xd, c));
        double val = resid / (xd * std::log(2.0 * xd));
        sup_refined = std::max(sup_refined, val);
        if (std::find(base_grid().begin(), base_grid().end(), x) != base_grid().end())
          sup_base = std::max(sup_base, val);
      }
    }
  r.passed = sup_refined < 2.0 * sup_base;
  r.detail = "sup base grid: " + fmt(sup_base) + ", refined: " + fmt(sup_refined);
  return r;
}

// --- 5/6: CDF convergence at desk scale -------------------------------------

const std::vector<double>& cdf_s_grid() {
  static const std::vector<double> g = {-3.0, -2.0, -1.0, -0.5, 0.5, 1.0, 2.0, 3.0};
  return g;
}

double cdf_sup_error(const Context& ctx, WeightMode mode, std::uint32_t N) {
  WeightedLogFamily fam(1, 1, mode);
  auto mu = measures::build_pair_correlation(fam, N, ScalingSpec::trivial(), ctx.sieve);
  auto values = measures::cdf_grid(mu, cdf_s_grid());
  double sup = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    double s = cdf_s_grid()[i];
    double limit = mode == WeightMode::trivial ? limits::limit_cdf_trivial(s)
                                               : limits::limit_cdf_euler(s);
    sup = std::max(sup, std::abs(values[i] - limit));
  }
  return sup;
}

CriterionResult criterion_cdf_trivial(const Context& ctx) {
  CriterionResult r{5, "trivial-weight CDF D_N -> D at N = 2000", false, ""};
  double sup2000 = cdf_sup_error(ctx, WeightMode::trivial, 2000);
  double sup500 = cdf_sup_error(ctx, WeightMode::trivial, 500);
  r.passed = sup2000 < 0.01 && sup2000 < sup500;
  r.detail = "sup|D_N - D|: N=2000: " + fmt(sup2000) + ", N=500: " + fmt(sup500);
  return r;
}

CriterionResult criterion_cdf_euler(const Context& ctx) {
  CriterionResult r{6, "Euler-weight CDF at N = 2000", false, ""};
  double sup2000 = cdf_sup_error(ctx, WeightMode::euler, 2000);
  r.passed = sup2000 < 0.01;
  r.detail = "sup|D~_N - D~| at N=2000: " + fmt(sup2000);
  return r;
}

// --- 7/8/9: the three scaling regimes ---------------------------------------

CriterionResult criterion_linear_trivial(const Context& ctx) {
  CriterionResult r{7, "linear regime: level repulsion + hat pairings", false, ""};
  const std::uint32_t N = 2000;
  WeightedLogFamily fam(1, 1, WeightMode::trivial);
  auto scaling = ScalingSpec::linear();
  auto mu = measures::build_pair_correlation(fam, N, scaling, ctx.sieve);

  auto hist = measures::bin(mu, -4.0, 4.0, 400, static_cast<double>(N));
  bool window_zero = true;
  for (std::uint32_t i = 0; i < hist.bins; ++i)
    if (hist.bin_hi(i) > -0.9 && hist.bin_lo(i) < 0.9 && hist.counts[i] != 0.0)
      window_zero = false;

  double min_pos = N * std::log(static_cast<double>(N) / (N - 1));
  bool repulsion = window_zero && min_pos > 0.999;

  double worst_pairing = 0.0;
  for (double c : {1.5, 2.5}) {
    auto hat = measures::TestFunction::hat(c, 0.25);
    double emp = measures::pair(mu, hat, static_cast<double>(N));
    std::vector<double> cuts = {1.0, 2.0, 3.0};
    double lim = measures::integrate_against(
        hat, [](double t) { return limits::g_linear_trivial(t, 1, 1.0); }, cuts);
    worst_pairing = std::max(worst_pairing, std::abs(emp - lim));
  }

  r.passed = repulsion && worst_pairing < 0.02;
  r.detail = "zero on (-0.9,0.9): " + std::string(window_zero ? "yes" : "no") +
             ", min atom position " + fmt(min_pos) + ", worst hat error " + fmt(worst_pairing);
  return r;
}

CriterionResult criterion_sublinear(const Context& ctx) {
  CriterionResult r{8, "sublinear regime: Poissonian pairing", false, ""};
  const std::uint32_t N = 2000;
  WeightedLogFamily fam(1, 1, WeightMode::trivial);
  auto hat = measures::TestFunction::hat(2.0, 1.0);
  double target = 0.5 * 1.0; // (1/(2b^2)) * integral of the hat (area w = 1)
  double worst = 0.0;
  for (auto scaling : {ScalingSpec::power(0.5), ScalingSpec::inverse_average_gap()}) {
    auto mu = measures::build_pair_correlation(fam, N, scaling, ctx.sieve);
    double norm = static_cast<double>(N) * N / scaling.psi(N);
    double emp = measures::pair(mu, hat, norm);
    worst = std::max(worst, std::abs(emp - target));
  }
  r.passed = worst < 0.05;
  r.detail = "worst |pairing - 0.5| over {sqrt, N/ln N}: " + fmt(worst);
  return r;
}

CriterionResult criterion_superlinear(const Context& ctx) {
  CriterionResult r{9, "superlinear regime: total loss of mass", false, ""};
  const std::uint32_t N = 2000;
  WeightedLogFamily fam(1, 1, WeightMode::trivial);
  auto mu = measures::build_pair_correlation(fam, N, ScalingSpec::power(1.5), ctx.sieve);
  auto hist = measures::bin(mu, -5.0, 5.0, 1, 1.0);
  r.passed = hist.counts[0] == 0.0 && hist.overflow_atoms == mu.atom_count();
  r.detail = "mass on [-5,5]: " + fmt(hist.counts[0]) +
             ", support minimum ~ " + fmt(std::pow(N, 1.5) * std::log(N / (N - 1.0)));
  return r;
}

// --- 10/11/12: Euler weights at linear scaling -------------------------------

CriterionResult criterion_linear_euler(const Context& ctx) {
  CriterionResult r{10, "Euler linear-scaling density on [1,4]", false, ""};
  const std::uint32_t N = 2000;
  WeightedLogFamily fam(1, 1, WeightMode::euler);
  auto mu = measures::build_pair_correlation(fam, N, ScalingSpec::linear(), ctx.sieve);
  double n3 = static_cast<double>(N) * N * N;

  auto hist = measures::bin(mu, 1.0, 4.0, 100, n3);
  limits::LinearEulerDensity density(ctx.sieve, 1, 1, ctx.options.prime_cutoff);
  double l1 = 0.0;
  for (std::uint32_t i = 0; i < hist.bins; ++i) {
    double avg = density.integral(hist.bin_lo(i), hist.bin_hi(i)) / hist.bin_width();
    l1 += std::abs(hist.density(i) - avg) * hist.bin_width();
  }

  auto window = measures::bin(mu, -1.0, 1.0, 50, 1.0);
  bool zero_window = std::all_of(window.counts.begin(), window.counts.end(),
                                 [](double c) { return c == 0.0; });

  r.passed = l1 < 0.05 && zero_window;
  r.detail = "L1 error " + fmt(l1) + ", zero on (-1,1): " + (zero_window ? "yes" : "no");
  return r;
}

CriterionResult criterion_asymptote(const Context& ctx) {
  CriterionResult r{11, "horizontal asymptote of the Euler linear density", false, ""};
  limits::LinearEulerDensity density(ctx.sieve, 1, 1, ctx.options.prime_cutoff);
  double avg = density.integral(50.0, 100.0) / 50.0;
  double limit = arith::asymptote_constant(*ctx.sieve, ctx.options.prime_cutoff).value;
  double rel = std::abs(avg - limit) / limit;
  r.passed = rel < 0.01;
  r.detail = "average over [50,100]: " + fmt(avg) + ", asymptote " + fmt(limit) +
             ", rel err " + fmt(rel);
  return r;
}

CriterionResult criterion_cubic_sum(const Context& ctx) {
  CriterionResult r{12, "cubic-weighted sum of f matches (C1/4) x^4", false, ""};
  double c1 = arith::euler_c1(*ctx.sieve, ctx.options.prime_cutoff).value;
  auto resid = [&](double x) {
    return std::abs(arith::sum_n3_f(*ctx.sieve, x) - c1 / 4.0 * x * x * x * x) / (x * x * x);
  };
  double r1 = resid(1e4), r2 = resid(2e4);
  double ratio = r2 / r1;
  r.passed = ratio < 2.0 && ratio > 0.5;
  r.detail = "normalized residuals " + fmt(r1) + " (x=1e4), " + fmt(r2) +
             " (x=2e4), ratio " + fmt(ratio);
  return r;
}

// --- 13: Prop 6.1 exact identity ---------------------------------------------

CriterionResult criterion_spectrum_identity(const Context& ctx) {
  CriterionResult r{13, "perpendicular spectrum measure = doubled log measure", false, ""};
  bool ok = true;
  std::uint64_t atoms = 0;
  for (std::uint32_t b : {1u, 2u, 3u, 4u, 6u})
    for (std::uint32_t N : {50u, 200u, 1000u})
      for (auto scaling : {ScalingSpec::trivial(), ScalingSpec::linear()}) {
        auto report = modular::spectrum_identity_check(ctx.sieve, b, N, scaling);
        atoms += report.atoms_compared;
        if (!report.equal) {
          ok = false;
          r.detail = "mismatch at b=" + std::to_string(b) + ", N=" + std::to_string(N) + ": " +
                     report.mismatch;
        }
      }
  r.passed = ok;
  if (ok) r.detail = "atom-exact over 30 configurations, " + std::to_string(atoms) + " atoms";
  return r;
}

// --- 14: mass asymptotics -----------------------------------------------------

CriterionResult criterion_mass(const Context& ctx) {
  CriterionResult r{14, "one-sided mass asymptotics at N = 2000", false, ""};
  const std::uint32_t horizon[] = {2000};
  bool ok = true;
  std::ostringstream detail;
  for (std::uint32_t b : {1u, 2u, 3u}) {
    WeightedLogFamily fam(b, b, WeightMode::trivial);
    auto rows = verify::mass_asymptotics(fam, horizon, ctx.sieve);
    double ratio = std::stod(rows[0].exact_mass) / (2000.0 * 2000.0);
    double target = 0.5 / (static_cast<double>(b) * b);
    ok = ok && std::abs(ratio - target) < 1e-3;
    if (b == 1) detail << "trivial mass/N^2 = " << fmt(ratio);
  }
  WeightedLogFamily fam(1, 1, WeightMode::euler);
  auto rows = verify::mass_asymptotics(fam, horizon, ctx.sieve);
  ok = ok && rows[0].relative_error < 0.01;
  detail << ", euler rel err = " << fmt(rows[0].relative_error);
  r.passed = ok;
  r.detail = detail.str();
  return r;
}

// --- 15: property suites -------------------------------------------------------

CriterionResult criterion_properties(const Context& ctx) {
  CriterionResult r{15, "property suites (multiplicativity, bounds, symmetry)", false, ""};
  const Sieve& sv = *ctx.sieve;
  std::mt19937 rng(0x5eed);
  std::ostringstream fail;
  bool ok = true;

  // multiplicativity of psi_d, chi_d, chi*_d over 1e4 random coprime pairs
  std::uniform_int_distribution<std::uint64_t> small(1, 1000), tiny(1, 50);
  int found = 0;
  while (found < 10'000) {
    std::uint64_t d1 = small(rng), d2 = small(rng);
    if (std::gcd(d1, d2) != 1) continue;
    ++found;
    std::uint64_t d = tiny(rng), b = tiny(rng), k = tiny(rng) - 1, a = tiny(rng);
    if (arith::psi_d(d, b, d1 * d2) != arith::psi_d(d, b, d1) * arith::psi_d(d, b, d2) ||
        arith::chi_d(d, k, d1 * d2) != (arith::chi_d(d, k, d1) && arith::chi_d(d, k, d2)) ||
        arith::chi_star_d(d, b, a, k, d1 * d2) !=
            (arith::chi_star_d(d, b, a, k, d1) && arith::chi_star_d(d, b, a, k, d2))) {
      ok = false;
      fail << "multiplicativity fails at delta=(" << d1 << "," << d2 << "); ";
      break;
    }
  }

  // prime formulas: psi_d(p) = p if p | d else (p, b)
  for (std::uint32_t p : sv.primes()) {
    if (p > 1000) break;
    for (std::uint64_t d : {1ull, 2ull, 6ull, 15ull, 49ull, static_cast<unsigned long long>(p)})
      for (std::uint64_t b = 1; b <= 12; ++b) {
        std::uint64_t expected = (d % p == 0) ? p : std::gcd<std::uint64_t>(p, b);
        if (arith::psi_d(d, b, p) != expected) {
          ok = false;
          fail << "psi_d prime formula fails at p=" << p << " d=" << d << " b=" << b << "; ";
        }
      }
  }

  // squarefree bound: m^3 g(m) <= prod (1 - 2/p^2)^{-1}
  double bound = 1.0 / arith::c_abk_product(sv, 1, 1, 1, ctx.options.prime_cutoff).value;
  for (std::uint32_t m = 1; m <= 100'000 && ok; ++m) {
    if (sv.mu(m) == 0) continue;
    double g = 1.0;
    sv.for_each_prime_factor(m, [&](std::uint32_t p) {
      double pd = p;
      g /= pd * (pd * pd - 2.0);
    });
    double md = m;
    if (!(g >= 0.0 && g * md * md * md <= bound)) {
      ok = false;
      fail << "squarefree bound fails at m=" << m << "; ";
    }
  }

  // Gauss identity sum_{d | n} phi(d) = n for n <= 1e4
  {
    std::vector<std::uint64_t> acc(10'001, 0);
    for (std::uint32_t d = 1; d <= 10'000; ++d)
      for (std::uint32_t n = d; n <= 10'000; n += d) acc[n] += sv.phi(d);
    for (std::uint32_t n = 1; n <= 10'000; ++n)
      if (acc[n] != n) {
        ok = false;
        fail << "Gauss identity fails at n=" << n << "; ";
        break;
      }
  }

  // sign symmetry of built measures: (m,n) <-> (n,m) with equal mass and
  // exactly negated positions
  for (WeightMode mode : {WeightMode::trivial, WeightMode::euler})
    for (std::uint32_t b : {1u, 3u})
      for (std::uint32_t a : {1u, b}) {
        WeightedLogFamily fam(a, b, mode);
        auto mu = measures::build_pair_correlation(fam, 150, ScalingSpec::linear(), ctx.sieve);
        auto pos = mu.positions();
        std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint64_t> seen;
        mu.for_each_atom([&](const measures::AtomEvent& e) {
          seen[{e.m, e.n}] = e.mass;
        });
        for (const auto& [key, mass] : seen) {
          auto sym = seen.find({key.second, key.first});
          if (sym == seen.end() || sym->second != mass ||
              pos(key.first, key.second) != -pos(key.second, key.first)) {
            ok = false;
            fail << "sg-symmetry fails; ";
            break;
          }
        }
      }

  // evenness of the limit densities
  std::uniform_real_distribution<double> ts(0.01, 25.0);
  limits::LinearEulerDensity density(ctx.sieve, 1, 1, ctx.options.prime_cutoff);
  density.warm_up(26.0);
  for (int i = 0; i < 1000; ++i) {
    double t = ts(rng);
    bool even = limits::g_unscaled_trivial(t) == limits::g_unscaled_trivial(-t) &&
                limits::g_unscaled_euler(t) == limits::g_unscaled_euler(-t) &&
                limits::g_linear_trivial(t, 1, 1.0) == limits::g_linear_trivial(-t, 1, 1.0) &&
                density(t) == density(-t);
    if (!even) {
      ok = false;
      fail << "evenness fails at t=" << t << "; ";
      break;
    }
  }

  r.passed = ok;
  r.detail = ok ? "multiplicativity 1e4 pairs, primes to 1e3, squarefree bound to 1e5, "
                  "Gauss to 1e4, sg-symmetry, evenness"
                : fail.str();
  return r;
}

} // namespace

std::vector<int> suite_criteria(const std::string& suite) {
  static const std::map<std::string, std::vector<int>> suites = {
      {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15}},
      {"constants", {1, 2}},
      {"mirsky", {3}},
      {"mertens", {4}},
      {"cdf", {5, 6}},
      {"scaling", {7, 8, 9}},
      {"euler-linear", {10, 11, 12}},
      {"modular", {13}},
      {"mass", {14}},
      {"properties", {15}},
  };
  auto it = suites.find(suite);
  if (it == suites.end()) throw ValidationError("unknown suite: " + suite);
  return it->second;
}

std::vector<CriterionResult> run(const Options& options) {
  Context ctx;
  ctx.options = options;
  ctx.sieve = std::make_shared<Sieve>(1'000'010);

  using Fn = CriterionResult (*)(const Context&);
  static const Fn criteria[] = {
      criterion_constants, criterion_cross_oracle, criterion_mirsky,  criterion_mertens,
      criterion_cdf_trivial, criterion_cdf_euler,  criterion_linear_trivial,
      criterion_sublinear, criterion_superlinear,  criterion_linear_euler,
      criterion_asymptote, criterion_cubic_sum,         criterion_spectrum_identity,
      criterion_mass,      criterion_properties,
  };

  std::vector<int> ids = options.criteria;
  if (ids.empty()) ids = suite_criteria("all");

  std::vector<CriterionResult> results;
  for (int id : ids) {
    if (id < 1 || id > 15) throw ValidationError("criterion id out of range");
    results.push_back(criteria[id - 1](ctx));
  }
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CriterionResult& r) { return r.passed; });
}

} // namespace paircorr::acceptance
