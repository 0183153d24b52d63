#include "paircorr/family.hpp"

#include <algorithm>
#include <cmath>

namespace paircorr::family {

ScalingSpec ScalingSpec::custom(std::vector<std::pair<std::uint32_t, double>> table) {
  if (table.empty()) throw ValidationError("custom scaling table is empty");
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i].second <= 0.0) throw ValidationError("custom scaling must be positive");
    if (i > 0 && (table[i].first <= table[i - 1].first || table[i].second < table[i - 1].second))
      throw ValidationError("custom scaling table must be strictly increasing in N and nondecreasing in psi");
  }
  ScalingSpec spec(ScalingKind::custom, 0.0);
  spec.table_ = std::move(table);
  return spec;
}

double ScalingSpec::psi(std::uint32_t N) const {
  if (N < 1) throw ValidationError("horizon must be positive");
  double Nd = static_cast<double>(N);
  switch (kind_) {
    case ScalingKind::trivial:
      return 1.0;
    case ScalingKind::power:
      return std::pow(Nd, alpha_);
    case ScalingKind::linear:
      return Nd;
    case ScalingKind::inverse_average_gap:
      // N / ln N, clamped below N = 3 to keep psi positive nondecreasing
      return Nd / std::log(std::max(Nd, 3.0));
    case ScalingKind::custom: {
      auto it = std::lower_bound(table_.begin(), table_.end(), N,
                                 [](const auto& row, std::uint32_t key) { return row.first < key; });
      if (it == table_.end() || it->first != N)
        throw ValidationError("custom scaling is only defined at tabulated horizons");
      return it->second;
    }
  }
  throw ValidationError("unknown scaling kind");
}

double ScalingSpec::normalizer(std::uint32_t N, long double total_mass) const {
  switch (normalizer_) {
    case NormalizerKind::probability_mass:
      return static_cast<double>(total_mass);
    case NormalizerKind::n2_over_psi:
      return static_cast<double>(N) * static_cast<double>(N) / psi(N);
    case NormalizerKind::psi:
      return psi(N);
    case NormalizerKind::explicit_value:
      if (explicit_value_ <= 0.0) throw ValidationError("explicit normalizer must be positive");
      return explicit_value_;
  }
  throw ValidationError("unknown normalizer kind");
}

RegimeClassification ScalingSpec::classify() const {
  switch (kind_) {
    case ScalingKind::trivial:
      return {Regime::zero, 0.0, false};
    case ScalingKind::power:
      if (alpha_ < 1.0) return {Regime::zero, 0.0, false};
      if (alpha_ == 1.0) return {Regime::finite, 1.0, false};
      return {Regime::infinite, 0.0, false};
    case ScalingKind::linear:
      return {Regime::finite, 1.0, false};
    case ScalingKind::inverse_average_gap:
      return {Regime::zero, 0.0, false};
    case ScalingKind::custom:
      break;
  }

  // Custom tables: estimate lambda = lim psi(N)/N from the tabulated tail.
  std::size_t len = table_.size();
  if (len < 2) return {Regime::unclassified, 0.0, true};
  double r_prev = table_[len - 2].second / table_[len - 2].first;
  double r_last = table_[len - 1].second / table_[len - 1].first;
  double rel = std::abs(r_last - r_prev) / std::max(r_last, r_prev);
  if (rel < 0.05) return {Regime::finite, r_last, true};
  if (r_last < r_prev) {
    // decreasing ratio: call it zero only once it is already small
    if (r_last < 0.1 * table_[0].second / table_[0].first || r_last < 1e-3)
      return {Regime::zero, 0.0, true};
    return {Regime::unclassified, 0.0, true};
  }
  if (r_last > 2.0 * table_[0].second / table_[0].first) return {Regime::infinite, 0.0, true};
  return {Regime::unclassified, 0.0, true};
}

std::uint64_t IndexSet::size() const {
  validate();
  WeightedLogFamily fam(a, b, WeightMode::trivial);
  switch (variant) {
    case IndexVariant::full: {
      std::uint64_t M = fam.member_count(N, min_value);
      return M * (M - (M > 0 ? 1 : 0));
    }
    case IndexVariant::lower:
    case IndexVariant::upper: {
      std::uint64_t M = fam.member_count(N, min_value);
      return M * (M - (M > 0 ? 1 : 0)) / 2;
    }
    case IndexVariant::j_q:
      return q >= 1 ? fam.member_count(q - 1, min_value) : 0;
    case IndexVariant::j_p_n:
      return N >= p ? fam.member_count(N - p, min_value) : 0;
  }
  return 0;
}

} // namespace paircorr::family
