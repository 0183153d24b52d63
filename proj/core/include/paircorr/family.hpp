#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "paircorr/errors.hpp"
#include "paircorr/sieve.hpp"

namespace paircorr::family {

enum class WeightMode { trivial, euler };

/// The congruence class a mod b of integers whose logarithms form the family,
/// together with the weight mode (1 or phi). a is normalized into [1, b]
/// (a = b represents the residue 0 mod b).
class WeightedLogFamily {
public:
  WeightedLogFamily(std::uint32_t a, std::uint32_t b, WeightMode mode)
      : b_(b), mode_(mode) {
    if (a < 1 || b < 1) throw ValidationError("a and b must be positive");
    std::uint32_t r = a % b;
    a_ = (r == 0) ? b : r;
  }

  std::uint32_t a() const { return a_; }
  std::uint32_t b() const { return b_; }
  WeightMode weight_mode() const { return mode_; }

  std::uint64_t weight(std::uint32_t n, const arith::Sieve* sieve) const {
    if (mode_ == WeightMode::trivial) return 1;
    if (sieve == nullptr) throw ValidationError("euler weights need a sieve");
    return sieve->phi(n);
  }

  /// #{n : lo <= n <= N, n = a mod b}
  std::uint64_t member_count(std::uint64_t N, std::uint64_t lo = 1) const {
    auto upto = [&](std::uint64_t x) -> std::uint64_t {
      return x >= a_ ? (x - a_) / b_ + 1 : 0;
    };
    std::uint64_t hi = upto(N);
    std::uint64_t below = lo > 1 ? upto(lo - 1) : 0;
    return hi - below;
  }

private:
  std::uint32_t a_;
  std::uint32_t b_;
  WeightMode mode_;
};

enum class ScalingKind { trivial, power, linear, inverse_average_gap, custom };
enum class NormalizerKind { probability_mass, n2_over_psi, psi, explicit_value };
enum class Regime { zero, finite, infinite, unclassified };

struct RegimeClassification {
  Regime regime = Regime::unclassified;
  double lambda = 0.0; // meaningful for Regime::finite
  bool heuristic = false;
};

/// Scaling function psi applied to differences of logarithms, with the
/// normalizer psi' used when renormalizing the measures.
class ScalingSpec {
public:
  static ScalingSpec trivial() { return ScalingSpec(ScalingKind::trivial, 0.0); }
  static ScalingSpec power(double alpha) {
    if (alpha < 0.0) throw ValidationError("power scaling needs alpha >= 0");
    return ScalingSpec(ScalingKind::power, alpha);
  }
  static ScalingSpec linear() { return ScalingSpec(ScalingKind::linear, 1.0); }
  static ScalingSpec inverse_average_gap() {
    return ScalingSpec(ScalingKind::inverse_average_gap, 0.0);
  }
  static ScalingSpec custom(std::vector<std::pair<std::uint32_t, double>> table);

  double psi(std::uint32_t N) const;
  ScalingKind kind() const { return kind_; }
  double alpha() const { return alpha_; }

  ScalingSpec& with_normalizer(NormalizerKind k, double value = 0.0) {
    normalizer_ = k;
    explicit_value_ = value;
    return *this;
  }
  NormalizerKind normalizer_kind() const { return normalizer_; }

  /// psi'(N); total_mass is consulted only for probability normalization.
  double normalizer(std::uint32_t N, long double total_mass) const;

  /// lambda_psi = lim psi(N)/N trichotomy. Exact for the built-in kinds;
  /// for custom tables estimated from the tabulated tail and flagged.
  RegimeClassification classify() const;

private:
  ScalingSpec(ScalingKind k, double alpha) : kind_(k), alpha_(alpha) {}

  ScalingKind kind_;
  double alpha_ = 0.0;
  std::vector<std::pair<std::uint32_t, double>> table_;
  NormalizerKind normalizer_ = NormalizerKind::probability_mass;
  double explicit_value_ = 0.0;
};

enum class IndexVariant { full, lower, upper, j_q, j_p_n };

/// Index sets of the pair correlation sums. All variants enumerate pairs
/// (m, n) of distinct integers = a mod b in [min_value, N]:
///   full   all ordered pairs; lower m < n; upper m > n;
///   j_q    pairs (p, q) with p in J_q = {a + kb : 0 <= k < q'} for fixed q;
///   j_p_n  pairs (q + p, q) with q in J_{p,N} = {a + kb : 0 <= k <= N_p}
///          for a fixed gap p = 0 mod b.
struct IndexSet {
  std::uint32_t N = 1;
  std::uint32_t a = 1;
  std::uint32_t b = 1;
  IndexVariant variant = IndexVariant::full;
  std::uint32_t q = 0;         // j_q only
  std::uint32_t p = 0;         // j_p_n only
  std::uint32_t min_value = 1; // smallest admissible member

  void validate() const {
    if (N < 1 || a < 1 || b < 1 || min_value < 1) throw ValidationError("bad index set");
    if (variant == IndexVariant::j_q && (q < 1 || q % b != a % b))
      throw ValidationError("j_q needs q = a mod b");
    if (variant == IndexVariant::j_p_n && (p < 1 || p % b != 0))
      throw ValidationError("j_p_n needs p = 0 mod b, p >= 1");
  }

  std::uint64_t size() const;

  /// Yields each pair exactly once as fn(m, n); n-major ascending order for
  /// the full/lower/upper variants.
  template <class F>
  void for_each(F&& fn) const {
    validate();
    std::uint32_t first = a % b == 0 ? b : a % b;
    while (first < min_value) first += b;
    switch (variant) {
      case IndexVariant::full:
        for (std::uint64_t n = first; n <= N; n += b)
          for (std::uint64_t m = first; m <= N; m += b)
            if (m != n) fn(static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(n));
        break;
      case IndexVariant::lower:
        for (std::uint64_t n = first; n <= N; n += b)
          for (std::uint64_t m = first; m < n; m += b)
            fn(static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(n));
        break;
      case IndexVariant::upper:
        for (std::uint64_t n = first; n <= N; n += b)
          for (std::uint64_t m = n + b; m <= N; m += b)
            fn(static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(n));
        break;
      case IndexVariant::j_q:
        for (std::uint64_t m = first; m < q; m += b)
          fn(static_cast<std::uint32_t>(m), q);
        break;
      case IndexVariant::j_p_n:
        for (std::uint64_t n = first; n + p <= N; n += b)
          fn(static_cast<std::uint32_t>(n + p), static_cast<std::uint32_t>(n));
        break;
    }
  }
};

} // namespace paircorr::family
