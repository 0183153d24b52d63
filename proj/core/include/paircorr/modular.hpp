#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "paircorr/family.hpp"
#include "paircorr/measures.hpp"
#include "paircorr/sieve.hpp"

namespace paircorr::modular {

/// One ortholength entry: the common perpendiculars from the cusp
/// neighbourhood of Gamma_0[b] \ H^2 to itself of hyperbolic length 2 ln q
/// carry multiplicity phi(q).
struct PerpEntry {
  std::uint32_t q;
  double length; // 2 ln q
  std::uint64_t multiplicity;
};

struct PerpSpectrum {
  std::uint32_t b = 1;
  std::uint32_t horizon = 2;
  std::vector<PerpEntry> entries; // strictly increasing in q, hence in length
};

/// Lengths 2 ln q for q = 0 mod b, 2 <= q <= N, with multiplicity phi(q).
PerpSpectrum ortholength_spectrum(const arith::Sieve& sieve, std::uint32_t b, std::uint32_t N);

/// Tangency point p/q of the horoball orbit, disk radius 1/(2q^2).
struct Tangency {
  std::uint32_t p;
  std::uint32_t q;
  double radius;
};

/// All reduced fractions p/q in [0, 1) with q <= Q and q = 0 mod b; the
/// count for fixed q is phi(q).
std::vector<Tangency> tangency_census(std::uint32_t b, std::uint32_t Q);

struct SpectrumIdentityReport {
  bool equal = false;
  std::uint64_t atoms_compared = 0;
  std::string mismatch; // first differing atom, empty when equal
};

/// Builds the perpendicular pair correlation measure from the ortholength
/// spectrum and the doubled pushforward of the Euler-weighted log family on
/// the residue 0 mod b (a = b convention), and compares them atom by atom:
/// integer events, exact masses and the position scale must agree.
SpectrumIdentityReport spectrum_identity_check(std::shared_ptr<const arith::Sieve> sieve, std::uint32_t b,
                          std::uint32_t N, const family::ScalingSpec& scaling);

} // namespace paircorr::modular
