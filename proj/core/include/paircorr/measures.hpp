#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "paircorr/family.hpp"
#include "paircorr/numeric.hpp"
#include "paircorr/sieve.hpp"

namespace paircorr::measures {

/// One Dirac event: exact integer pair plus its integer mass
/// (1 for trivial weights, phi(m)phi(n) for Euler weights).
struct AtomEvent {
  std::uint32_t m;
  std::uint32_t n;
  std::uint64_t mass;
};

enum class PositionRule {
  log_diff_scaled, // event -> factor * psi(N) (ln m - ln n)
  ratio,           // event -> m / n
};

struct BuildOptions {
  family::IndexVariant variant = family::IndexVariant::full;
  std::uint32_t min_value = 1;
  std::uint32_t q = 0; // j_q variant
  std::uint32_t p = 0; // j_p_n variant
  PositionRule rule = PositionRule::log_diff_scaled;
  std::uint64_t atom_budget = 100'000'000;
};

class AtomicMeasure;

/// Snapshot used to evaluate atom positions; holds the shared log table so a
/// streaming pass costs two loads and one multiply per atom.
class PositionEvaluator {
public:
  double operator()(std::uint32_t m, std::uint32_t n) const {
    if (logs_) return factor_ * ((*logs_)[m] - (*logs_)[n]);
    return static_cast<double>(m) / static_cast<double>(n);
  }

private:
  friend class AtomicMeasure;
  PositionEvaluator(std::shared_ptr<const std::vector<double>> logs, double factor)
      : logs_(std::move(logs)), factor_(factor) {}
  std::shared_ptr<const std::vector<double>> logs_; // null for ratio rule
  double factor_;
};

/// Empirical pair correlation measure: a finite weighted sum of Dirac masses
/// indexed by exact integer events (m, n). Atoms are streamed in a fixed
/// deterministic (n-major) order and never need materializing; positions are
/// derived on demand from the integers, so the sign swap (m,n) <-> (n,m) and
/// the doubling pushforward are exact identities.
class AtomicMeasure {
public:
  AtomicMeasure(family::WeightedLogFamily fam, std::uint32_t horizon,
                family::ScalingSpec scaling, std::shared_ptr<const arith::Sieve> sieve,
                BuildOptions options = {});

  const family::WeightedLogFamily& fam() const { return fam_; }
  std::uint32_t horizon() const { return horizon_; }
  const family::ScalingSpec& scaling() const { return scaling_; }
  const family::IndexSet& index_set() const { return index_; }
  PositionRule rule() const { return rule_; }

  /// psi(N) times the accumulated doubling factor.
  double position_scale() const { return scale_; }

  std::uint64_t atom_count() const { return atom_count_; }
  u128 total_mass_exact() const { return total_mass_; }
  long double total_mass() const { return to_long_double(total_mass_); }

  /// Pushforward under t -> 2t: identical integer events and masses, doubled
  /// position scale.
  AtomicMeasure doubled() const {
    AtomicMeasure copy(*this);
    copy.scale_ *= 2.0;
    return copy;
  }

  template <class F>
  void for_each_atom(F&& fn) const {
    const arith::Sieve* sv = sieve_.get();
    if (fam_.weight_mode() == family::WeightMode::trivial) {
      index_.for_each([&](std::uint32_t m, std::uint32_t n) { fn(AtomEvent{m, n, 1}); });
    } else {
      index_.for_each([&](std::uint32_t m, std::uint32_t n) {
        fn(AtomEvent{m, n, static_cast<std::uint64_t>(sv->phi(m)) * sv->phi(n)});
      });
    }
  }

  PositionEvaluator positions() const;

  void check_budget() const;

private:
  family::WeightedLogFamily fam_;
  std::uint32_t horizon_;
  family::ScalingSpec scaling_;
  std::shared_ptr<const arith::Sieve> sieve_;
  family::IndexSet index_;
  PositionRule rule_;
  double scale_;
  std::uint64_t atom_budget_;
  std::uint64_t atom_count_ = 0;
  u128 total_mass_ = 0;
  mutable std::shared_ptr<const std::vector<double>> logs_;
};

AtomicMeasure build_pair_correlation(const family::WeightedLogFamily& fam, std::uint32_t horizon,
                                     const family::ScalingSpec& scaling,
                                     std::shared_ptr<const arith::Sieve> sieve = nullptr,
                                     BuildOptions options = {});

/// (sum of mass at positions <= s) / total mass; exact integer arithmetic on
/// the mass side. Throws EmptyMeasureError when the measure has no mass.
double cdf(const AtomicMeasure& mu, double s);

/// One streaming pass evaluating the CDF at every point of an ascending grid.
std::vector<double> cdf_grid(const AtomicMeasure& mu, std::span<const double> grid);

/// (sum of mass * f(position)) / normalizer, compensated summation in
/// enumeration order.
double pair(const AtomicMeasure& mu, const std::function<double(double)>& f, double normalizer);

struct Histogram {
  double lo = 0.0;
  double hi = 1.0;
  std::uint32_t bins = 1;
  std::vector<double> counts; // accumulated mass, left-closed right-open bins
  double normalization = 1.0;
  double overflow_mass = 0.0; // mass outside [lo, hi), reported not dropped
  std::uint64_t overflow_atoms = 0;

  double bin_width() const { return (hi - lo) / bins; }
  double bin_lo(std::uint32_t i) const { return lo + i * bin_width(); }
  double bin_hi(std::uint32_t i) const { return lo + (i + 1) * bin_width(); }
  double density(std::uint32_t i) const { return counts[i] / (normalization * bin_width()); }
};

Histogram bin(const AtomicMeasure& mu, double lo, double hi, std::uint32_t bins,
              double normalization);

AtomicMeasure pushforward_double(const AtomicMeasure& mu);

/// Compactly supported test functions paired against the measures.
class TestFunction {
public:
  enum class Kind { hat, smooth_bump };

  static TestFunction hat(double center, double half_width) {
    return TestFunction(Kind::hat, center, half_width);
  }
  static TestFunction smooth_bump(double center, double half_width) {
    return TestFunction(Kind::smooth_bump, center, half_width);
  }

  double operator()(double s) const;

  Kind kind() const { return kind_; }
  double center() const { return center_; }
  double half_width() const { return half_width_; }
  double support_lo() const { return center_ - half_width_; }
  double support_hi() const { return center_ + half_width_; }
  double norm_inf() const { return 1.0; }
  double variation() const { return 2.0; }

private:
  TestFunction(Kind k, double c, double w);
  Kind kind_;
  double center_;
  double half_width_;
};

double pair(const AtomicMeasure& mu, const TestFunction& f, double normalizer);

/// Closed form of integral hat_{c,w}(s) e^{-rate |s|} ds.
double hat_exp_integral(double center, double half_width, double rate);

/// integral f(s) g(s) ds over the support of f by adaptive Simpson
/// quadrature, subdividing at the kinks of f and at the given breakpoints
/// of g (discontinuities of the piecewise densities).
double integrate_against(const TestFunction& f, const std::function<double(double)>& g,
                         std::span<const double> breakpoints = {}, double tol = 1e-9);

} // namespace paircorr::measures
