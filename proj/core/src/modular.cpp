#include "paircorr/modular.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "paircorr/errors.hpp"

namespace paircorr::modular {

PerpSpectrum ortholength_spectrum(const arith::Sieve& sieve, std::uint32_t b, std::uint32_t N) {
  if (b < 1) throw ValidationError("b must be positive");
  if (N < 2) throw ValidationError("spectrum horizon must be >= 2");
  if (N > sieve.limit()) throw CapacityError("spectrum horizon exceeds sieve range");
  PerpSpectrum spec;
  spec.b = b;
  spec.horizon = N;
  // q = 1 would be a tangency (length 0), not a perpendicular, so q >= 2.
  std::uint32_t q0 = std::max<std::uint32_t>(2, b);
  for (std::uint64_t q = q0; q <= N; q += b)
    spec.entries.push_back({static_cast<std::uint32_t>(q),
                            2.0 * std::log(static_cast<double>(q)),
                            sieve.phi(static_cast<std::uint32_t>(q))});
  return spec;
}

std::vector<Tangency> tangency_census(std::uint32_t b, std::uint32_t Q) {
  if (b < 1 || Q < 2) throw ValidationError("need b >= 1 and Q >= 2");
  std::vector<Tangency> out;
  for (std::uint64_t q = b; q <= Q; q += b) {
    double r = 0.5 / (static_cast<double>(q) * static_cast<double>(q));
    for (std::uint64_t p = 0; p < q; ++p)
      if (std::gcd(p, q) == 1)
        out.push_back({static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(q), r});
  }
  return out;
}

SpectrumIdentityReport spectrum_identity_check(std::shared_ptr<const arith::Sieve> sieve, std::uint32_t b,
                          std::uint32_t N, const family::ScalingSpec& scaling) {
  if (!sieve) throw ValidationError("spectrum_identity_check needs a sieve");
  PerpSpectrum spec = ortholength_spectrum(*sieve, b, N);
  const auto& entries = spec.entries;
  const std::size_t M = entries.size();

  family::WeightedLogFamily fam(b, b, family::WeightMode::euler);
  measures::BuildOptions opts;
  opts.min_value = 2; // ln 1 = 0 is not an ortholength; only matters for b = 1
  auto family_side =
      measures::pushforward_double(measures::build_pair_correlation(fam, N, scaling, sieve, opts));

  SpectrumIdentityReport report;
  double perp_scale = 2.0 * scaling.psi(N);
  if (family_side.position_scale() != perp_scale) {
    std::ostringstream os;
    os << "position scale " << family_side.position_scale() << " vs " << perp_scale;
    report.mismatch = os.str();
    return report;
  }

  // walk the spectrum pairs (i, j), i != j, in the same n-major order the
  // family measure streams its atoms
  std::size_t i = 0, j = 0;
  if (i == j) ++i;
  bool ok = true;
  std::uint64_t compared = 0;
  family_side.for_each_atom([&](const measures::AtomEvent& e) {
    if (!ok) return;
    if (j >= M || i >= M) {
      report.mismatch = "family measure has more atoms than the spectrum pairs";
      ok = false;
      return;
    }
    const PerpEntry& ei = entries[i];
    const PerpEntry& ej = entries[j];
    if (e.m != ei.q || e.n != ej.q || e.mass != ei.multiplicity * ej.multiplicity) {
      std::ostringstream os;
      os << "atom (" << e.m << "," << e.n << ") mass " << e.mass << " vs spectrum pair ("
         << ei.q << "," << ej.q << ") mass " << ei.multiplicity * ej.multiplicity;
      report.mismatch = os.str();
      ok = false;
      return;
    }
    ++compared;
    ++i;
    if (i == j) ++i;
    if (i >= M) {
      i = 0;
      ++j;
      if (i == j) ++i;
    }
  });

  if (ok && j < M && M > 1) {
    report.mismatch = "spectrum has more pairs than the family measure";
    ok = false;
  }
  report.equal = ok;
  report.atoms_compared = compared;
  return report;
}

} // namespace paircorr::modular
