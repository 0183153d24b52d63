#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "paircorr/family.hpp"
#include "paircorr/limits.hpp"
#include "paircorr/measures.hpp"

namespace paircorr::verify {

/// Errors of empirical pairings against the limit-side integrals over a
/// ladder of horizons, with a least-squares log-log rate fit.
struct ConvergenceReport {
  limits::RegimeTag regime;
  std::vector<std::uint32_t> horizons;
  std::vector<std::vector<double>> errors_per_function; // [function][horizon]
  std::vector<double> errors;                           // max over functions
  double fitted_rate = 0.0;                             // slope of ln err vs ln N
  double fitted_constant = 0.0;                         // exp(intercept)
  std::string note;
};

ConvergenceReport run_convergence(limits::RegimeTag regime, const family::WeightedLogFamily& fam,
                                  const family::ScalingSpec& scaling,
                                  std::span<const std::uint32_t> horizons,
                                  std::span<const measures::TestFunction> test_functions,
                                  std::shared_ptr<const arith::Sieve> sieve);

/// sup |residual_i| / envelope_i; asserts nothing by itself -- suites check
/// that the fitted value is stable under grid refinement.
double fit_error_constant(std::span<const double> residuals, std::span<const double> envelope);

struct MassRow {
  std::uint32_t horizon;
  std::string exact_mass; // decimal, exact
  double main_term;
  double relative_error;
};

/// Exact one-sided masses ||nu_N^-|| against their asymptotic main terms:
/// N^2/(2b^2) for trivial weights, 9 c_{a,b}^2 N^4 / (2 pi^4) for Euler.
std::vector<MassRow> mass_asymptotics(const family::WeightedLogFamily& fam,
                                      std::span<const std::uint32_t> horizons,
                                      std::shared_ptr<const arith::Sieve> sieve);

/// Least-squares slope and exp(intercept) of ln y against ln x.
std::pair<double, double> log_log_fit(std::span<const double> x, std::span<const double> y);

} // namespace paircorr::verify
