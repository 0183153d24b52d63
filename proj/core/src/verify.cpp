#include "paircorr/verify.hpp"

#include <cmath>
#include <sstream>

#include "paircorr/arith.hpp"
#include "paircorr/errors.hpp"

namespace paircorr::verify {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require(bool cond, const char* msg) {
  if (!cond) throw ValidationError(msg);
}

void check_configuration(limits::RegimeTag regime, const family::WeightedLogFamily& fam,
                         const family::ScalingSpec& scaling) {
  using limits::RegimeTag;
  bool euler = fam.weight_mode() == family::WeightMode::euler;
  auto cls = scaling.classify();
  switch (regime) {
    case RegimeTag::unscaled_trivial:
      require(!euler && scaling.kind() == family::ScalingKind::trivial,
              "unscaled_trivial needs trivial weights and trivial scaling");
      break;
    case RegimeTag::unscaled_euler:
      require(euler && scaling.kind() == family::ScalingKind::trivial,
              "unscaled_euler needs euler weights and trivial scaling");
      break;
    case RegimeTag::sublinear_trivial:
      require(!euler && scaling.kind() != family::ScalingKind::trivial &&
                  cls.regime == family::Regime::zero,
              "sublinear_trivial needs trivial weights and a sublinear scaling");
      break;
    case RegimeTag::linear_trivial:
      require(!euler && cls.regime == family::Regime::finite,
              "linear_trivial needs trivial weights and a linear-regime scaling");
      break;
    case RegimeTag::superlinear_zero:
      require(!euler && cls.regime == family::Regime::infinite,
              "superlinear_zero needs trivial weights and a superlinear scaling");
      break;
    case RegimeTag::linear_euler:
      require(euler && cls.regime == family::Regime::finite,
              "linear_euler needs euler weights and a linear-regime scaling");
      break;
  }
}

} // namespace

std::pair<double, double> log_log_fit(std::span<const double> x, std::span<const double> y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(y[i] > 0.0)) continue;
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return {0.0, 0.0};
  double nd = static_cast<double>(n);
  double slope = (nd * sxy - sx * sy) / (nd * sxx - sx * sx);
  double intercept = (sy - slope * sx) / nd;
  return {slope, std::exp(intercept)};
}

ConvergenceReport run_convergence(limits::RegimeTag regime, const family::WeightedLogFamily& fam,
                                  const family::ScalingSpec& scaling,
                                  std::span<const std::uint32_t> horizons,
                                  std::span<const measures::TestFunction> test_functions,
                                  std::shared_ptr<const arith::Sieve> sieve) {
  check_configuration(regime, fam, scaling);
  require(!horizons.empty() && !test_functions.empty(), "need horizons and test functions");
  for (std::size_t i = 1; i < horizons.size(); ++i)
    require(horizons[i] > horizons[i - 1], "horizons must be strictly increasing");

  using limits::RegimeTag;
  ConvergenceReport report;
  report.regime = regime;
  report.horizons.assign(horizons.begin(), horizons.end());
  report.errors_per_function.assign(test_functions.size(), {});

  std::shared_ptr<limits::LinearEulerDensity> euler_density;
  if (regime == RegimeTag::linear_euler) {
    euler_density = std::make_shared<limits::LinearEulerDensity>(sieve, fam.a(), fam.b(),
                                                                 std::min<std::uint32_t>(
                                                                     sieve->limit(), 1'000'000));
  }

  for (std::uint32_t N : horizons) {
    auto mu = measures::build_pair_correlation(fam, N, scaling, sieve);
    double psiN = scaling.psi(N);
    for (std::size_t fi = 0; fi < test_functions.size(); ++fi) {
      const auto& f = test_functions[fi];
      double normalizer = 0.0, limit_side = 0.0;
      switch (regime) {
        case RegimeTag::unscaled_trivial:
          normalizer = static_cast<double>(mu.total_mass());
          limit_side = measures::integrate_against(f, limits::g_unscaled_trivial);
          break;
        case RegimeTag::unscaled_euler:
          normalizer = static_cast<double>(mu.total_mass());
          limit_side = measures::integrate_against(f, limits::g_unscaled_euler);
          break;
        case RegimeTag::sublinear_trivial:
          normalizer = static_cast<double>(N) * static_cast<double>(N) / psiN;
          limit_side = measures::integrate_against(
              f, [&](double) { return limits::g_sublinear_trivial(fam.b()); });
          break;
        case RegimeTag::linear_trivial: {
          normalizer = psiN;
          double lambda = scaling.classify().lambda;
          double blam = fam.b() * lambda;
          std::vector<double> cuts;
          for (double t = blam; t <= f.support_hi() + blam; t += blam) {
            cuts.push_back(t);
            cuts.push_back(-t);
          }
          limit_side = measures::integrate_against(
              f, [&](double t) { return limits::g_linear_trivial(t, fam.b(), lambda); }, cuts);
          break;
        }
        case RegimeTag::superlinear_zero:
          normalizer = psiN;
          limit_side = 0.0;
          break;
        case RegimeTag::linear_euler: {
          double Nd = N;
          normalizer = Nd * Nd * Nd;
          euler_density->warm_up(std::abs(f.support_hi()) + std::abs(f.support_lo()) + 1.0);
          std::vector<double> cuts;
          for (double t = fam.b(); t <= std::max(std::abs(f.support_hi()),
                                                 std::abs(f.support_lo())) + 1.0; t += 1.0) {
            cuts.push_back(t);
            cuts.push_back(-t);
          }
          limit_side = measures::integrate_against(
              f, [&](double s) { return (*euler_density)(s); }, cuts);
          break;
        }
      }
      double empirical = measures::pair(mu, f, normalizer);
      report.errors_per_function[fi].push_back(std::abs(empirical - limit_side));
    }
  }

  report.errors.resize(horizons.size(), 0.0);
  for (std::size_t h = 0; h < horizons.size(); ++h)
    for (const auto& row : report.errors_per_function)
      report.errors[h] = std::max(report.errors[h], row[h]);

  std::vector<double> ns(horizons.begin(), horizons.end());
  auto [rate, constant] = log_log_fit(ns, report.errors);
  report.fitted_rate = rate;
  report.fitted_constant = constant;

  if (regime == RegimeTag::sublinear_trivial) {
    // record which term of the sublinear error bound dominates at the
    // largest horizon: psi ln(A)/N, A^2/psi, or -(psi/N) ln(psi/N)
    std::uint32_t N = horizons.back();
    double psiN = scaling.psi(N);
    double A = 1.0;
    for (const auto& f : test_functions)
      A = std::max({A, std::abs(f.support_lo()), std::abs(f.support_hi())});
    double t1 = psiN * std::log(A) / N;
    double t2 = A * A / psiN;
    double t3 = -(psiN / N) * std::log(psiN / N);
    std::ostringstream os;
    os << "dominant sublinear error term: ";
    if (t2 >= t1 && t2 >= t3) os << "A^2/psi(N)";
    else if (t3 >= t1) os << "(psi/N) ln(N/psi)";
    else os << "psi(N) ln(A)/N";
    os << " (" << t1 << ", " << t2 << ", " << t3 << ")";
    report.note = os.str();
  }
  return report;
}

double fit_error_constant(std::span<const double> residuals, std::span<const double> envelope) {
  require(residuals.size() == envelope.size(), "residuals and envelope must align");
  double sup = 0.0;
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    require(envelope[i] > 0.0, "envelope must be positive");
    sup = std::max(sup, std::abs(residuals[i]) / envelope[i]);
  }
  return sup;
}

std::vector<MassRow> mass_asymptotics(const family::WeightedLogFamily& fam,
                                      std::span<const std::uint32_t> horizons,
                                      std::shared_ptr<const arith::Sieve> sieve) {
  std::vector<MassRow> rows;
  bool euler = fam.weight_mode() == family::WeightMode::euler;
  double cab = euler ? arith::c_ab(fam.a(), fam.b()).value : 0.0;
  for (std::uint32_t N : horizons) {
    measures::BuildOptions opts;
    opts.variant = family::IndexVariant::lower;
    auto mu = measures::AtomicMeasure(fam, N, family::ScalingSpec::trivial(), sieve, opts);
    double Nd = N;
    double main = euler ? 9.0 * cab * cab * Nd * Nd * Nd * Nd / (2.0 * kPi * kPi * kPi * kPi)
                        : Nd * Nd / (2.0 * fam.b() * fam.b());
    double exact = static_cast<double>(mu.total_mass());
    rows.push_back({N, to_string(mu.total_mass_exact()), main,
                    std::abs(exact - main) / main});
  }
  return rows;
}

} // namespace paircorr::verify
