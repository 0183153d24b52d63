#include "paircorr/measures.hpp"

#include <algorithm>
#include <cmath>

#include "paircorr/errors.hpp"

namespace paircorr::measures {

AtomicMeasure::AtomicMeasure(family::WeightedLogFamily fam, std::uint32_t horizon,
                             family::ScalingSpec scaling,
                             std::shared_ptr<const arith::Sieve> sieve, BuildOptions options)
    : fam_(std::move(fam)),
      horizon_(horizon),
      scaling_(std::move(scaling)),
      sieve_(std::move(sieve)),
      rule_(options.rule),
      atom_budget_(options.atom_budget) {
  if (horizon_ < 1) throw ValidationError("horizon must be positive");
  if (fam_.weight_mode() == family::WeightMode::euler) {
    if (!sieve_) throw ValidationError("euler weights need a sieve");
    if (sieve_->limit() < horizon_) throw CapacityError("sieve does not cover the horizon");
  }
  index_ = family::IndexSet{horizon_, fam_.a(), fam_.b(), options.variant,
                            options.q, options.p, options.min_value};
  index_.validate();
  scale_ = rule_ == PositionRule::log_diff_scaled ? scaling_.psi(horizon_) : 1.0;
  atom_count_ = index_.size();

  // Exact total mass. Trivial weights: the index-set cardinality. Euler
  // weights over the full/half sets: (sum phi)^2 - sum phi^2 halved for the
  // one-sided variants; the single-row variants are summed directly.
  if (fam_.weight_mode() == family::WeightMode::trivial) {
    total_mass_ = atom_count_;
  } else {
    const arith::Sieve& sv = *sieve_;
    std::uint32_t first = fam_.a() % fam_.b() == 0 ? fam_.b() : fam_.a() % fam_.b();
    while (first < options.min_value) first += fam_.b();
    switch (index_.variant) {
      case family::IndexVariant::full:
      case family::IndexVariant::lower:
      case family::IndexVariant::upper: {
        u128 s1 = 0, s2 = 0;
        for (std::uint64_t n = first; n <= horizon_; n += fam_.b()) {
          std::uint64_t w = sv.phi(static_cast<std::uint32_t>(n));
          s1 += w;
          s2 += w * w;
        }
        u128 full = s1 * s1 - s2;
        total_mass_ = index_.variant == family::IndexVariant::full ? full : full / 2;
        break;
      }
      default: {
        u128 acc = 0;
        index_.for_each([&](std::uint32_t m, std::uint32_t n) {
          acc += static_cast<std::uint64_t>(sv.phi(m)) * sv.phi(n);
        });
        total_mass_ = acc;
      }
    }
  }
}

void AtomicMeasure::check_budget() const {
  if (atom_count_ > atom_budget_) throw CapacityError("atom count exceeds the event budget");
}

PositionEvaluator AtomicMeasure::positions() const {
  if (rule_ == PositionRule::ratio) return PositionEvaluator(nullptr, 1.0);
  if (!logs_) {
    auto tab = std::make_shared<std::vector<double>>(horizon_ + 1, 0.0);
    for (std::uint32_t i = 1; i <= horizon_; ++i) (*tab)[i] = std::log(static_cast<double>(i));
    logs_ = std::move(tab);
  }
  return PositionEvaluator(logs_, scale_);
}

AtomicMeasure build_pair_correlation(const family::WeightedLogFamily& fam, std::uint32_t horizon,
                                     const family::ScalingSpec& scaling,
                                     std::shared_ptr<const arith::Sieve> sieve,
                                     BuildOptions options) {
  AtomicMeasure mu(fam, horizon, scaling, std::move(sieve), options);
  mu.check_budget();
  return mu;
}

double cdf(const AtomicMeasure& mu, double s) {
  double v[1] = {s};
  return cdf_grid(mu, v)[0];
}

std::vector<double> cdf_grid(const AtomicMeasure& mu, std::span<const double> grid) {
  if (mu.total_mass_exact() == 0) throw EmptyMeasureError("cdf of an empty measure");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (grid[i] < grid[i - 1]) throw ValidationError("cdf grid must be ascending");
  mu.check_budget();

  auto pos = mu.positions();
  std::vector<u128> bucket(grid.size(), 0);
  mu.for_each_atom([&](const AtomEvent& e) {
    double x = pos(e.m, e.n);
    // first grid index with grid[i] >= x gains the mass
    auto it = std::lower_bound(grid.begin(), grid.end(), x);
    if (it != grid.end()) bucket[static_cast<std::size_t>(it - grid.begin())] += e.mass;
  });
  std::vector<double> out(grid.size());
  long double total = mu.total_mass();
  u128 run = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    run += bucket[i];
    out[i] = static_cast<double>(to_long_double(run) / total);
  }
  return out;
}

double pair(const AtomicMeasure& mu, const std::function<double(double)>& f, double normalizer) {
  if (!(normalizer > 0.0)) throw ValidationError("normalizer must be positive");
  mu.check_budget();
  auto pos = mu.positions();
  KahanSum acc;
  mu.for_each_atom([&](const AtomEvent& e) {
    double y = f(pos(e.m, e.n));
    if (y != 0.0) acc.add(static_cast<double>(e.mass) * y);
  });
  return acc.value() / normalizer;
}

double pair(const AtomicMeasure& mu, const TestFunction& f, double normalizer) {
  if (!(normalizer > 0.0)) throw ValidationError("normalizer must be positive");
  mu.check_budget();
  auto pos = mu.positions();
  double lo = f.support_lo(), hi = f.support_hi();
  KahanSum acc;
  mu.for_each_atom([&](const AtomEvent& e) {
    double x = pos(e.m, e.n);
    if (x < lo || x > hi) return;
    acc.add(static_cast<double>(e.mass) * f(x));
  });
  return acc.value() / normalizer;
}

Histogram bin(const AtomicMeasure& mu, double lo, double hi, std::uint32_t bins,
              double normalization) {
  if (!(lo < hi) || bins < 1) throw ValidationError("bad histogram support");
  if (!(normalization > 0.0)) throw ValidationError("normalization must be positive");
  mu.check_budget();

  auto pos = mu.positions();
  double width = (hi - lo) / bins;
  std::vector<KahanSum> acc(bins);
  KahanSum overflow;
  std::uint64_t overflow_atoms = 0;
  mu.for_each_atom([&](const AtomEvent& e) {
    double x = pos(e.m, e.n);
    double t = (x - lo) / width;
    if (t < 0.0 || t >= static_cast<double>(bins)) {
      overflow.add(static_cast<double>(e.mass));
      ++overflow_atoms;
      return;
    }
    acc[static_cast<std::uint32_t>(t)].add(static_cast<double>(e.mass));
  });

  Histogram h;
  h.lo = lo;
  h.hi = hi;
  h.bins = bins;
  h.normalization = normalization;
  h.counts.resize(bins);
  for (std::uint32_t i = 0; i < bins; ++i) h.counts[i] = acc[i].value();
  h.overflow_mass = overflow.value();
  h.overflow_atoms = overflow_atoms;
  return h;
}

AtomicMeasure pushforward_double(const AtomicMeasure& mu) {
  if (mu.rule() != PositionRule::log_diff_scaled)
    throw ValidationError("doubling pushforward is defined for log positions");
  return mu.doubled();
}

TestFunction::TestFunction(Kind k, double c, double w) : kind_(k), center_(c), half_width_(w) {
  if (!(w > 0.0)) throw ValidationError("test function needs positive half-width");
}

double TestFunction::operator()(double s) const {
  double u = std::abs(s - center_) / half_width_;
  if (u >= 1.0) return 0.0;
  if (kind_ == Kind::hat) return 1.0 - u;
  return 1.0 - u * u * (3.0 - 2.0 * u);
}

namespace {

/// integral_{x0}^{x1} (alpha + beta t) e^{s t} dt, exact primitive.
double linear_exp_integral(double alpha, double beta, double s, double x0, double x1) {
  if (s == 0.0) return alpha * (x1 - x0) + beta * (x1 * x1 - x0 * x0) / 2.0;
  auto prim = [&](double x) { return std::exp(s * x) * ((alpha + beta * x) / s - beta / (s * s)); };
  return prim(x1) - prim(x0);
}

double adaptive_simpson(const std::function<double(double)>& h, double a2, double b2, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a2 + b2);
  double lm = 0.5 * (a2 + m), rm = 0.5 * (m + b2);
  double flm = h(lm), frm = h(rm);
  double left = (m - a2) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b2 - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(h, a2, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson(h, m, b2, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double simpson(const std::function<double(double)>& h, double a2, double b2, double tol) {
  double fa = h(a2), fb = h(b2), fm = h(0.5 * (a2 + b2));
  double whole = (b2 - a2) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(h, a2, b2, fa, fm, fb, whole, tol, 48);
}

} // namespace

double hat_exp_integral(double center, double half_width, double rate) {
  double lo = center - half_width, hi = center + half_width;
  // split at the kink (center) and at 0 where |t| changes sign
  std::vector<double> cuts = {lo, hi, center};
  if (lo < 0.0 && hi > 0.0) cuts.push_back(0.0);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double x0 = cuts[i], x1 = cuts[i + 1];
    if (!(x1 > x0)) continue;
    double mid = 0.5 * (x0 + x1);
    // hat(t) = 1 - |t - c|/w written as alpha + beta t on each side of c
    double beta = mid < center ? 1.0 / half_width : -1.0 / half_width;
    double alpha = mid < center ? 1.0 - center / half_width : 1.0 + center / half_width;
    double s = mid < 0.0 ? rate : -rate;
    total += linear_exp_integral(alpha, beta, s, x0, x1);
  }
  return total;
}

double integrate_against(const TestFunction& f, const std::function<double(double)>& g,
                         std::span<const double> breakpoints, double tol) {
  std::vector<double> cuts = {f.support_lo(), f.support_hi(), f.center()};
  if (f.support_lo() < 0.0 && f.support_hi() > 0.0) cuts.push_back(0.0);
  for (double b2 : breakpoints)
    if (b2 > f.support_lo() && b2 < f.support_hi()) cuts.push_back(b2);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto h = [&](double s) { return f(s) * g(s); };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double x0 = cuts[i], x1 = cuts[i + 1];
    if (!(x1 > x0)) continue;
    total += simpson(h, x0, x1, tol);
  }
  return total;
}

} // namespace paircorr::measures
