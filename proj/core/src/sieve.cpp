#include "paircorr/sieve.hpp"

namespace paircorr::arith {

Sieve::Sieve(std::uint32_t limit) : limit_(limit) {
  if (limit < 1) throw ValidationError("sieve limit must be >= 1");
  if (limit > max_limit) throw CapacityError("sieve limit exceeds the 2e7 hard cap");

  phi_.assign(limit + 1, 0);
  mu_.assign(limit + 1, 0);
  spf_.assign(limit + 1, 0);
  phi_[1] = 1;
  mu_[1] = 1;
  spf_[1] = 1;

  for (std::uint32_t i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = i;
      phi_[i] = i - 1;
      mu_[i] = -1;
      primes_.push_back(i);
    }
    for (std::uint32_t p : primes_) {
      if (p > limit / i) break;
      std::uint32_t ip = i * p;
      spf_[ip] = p;
      if (i % p == 0) {
        phi_[ip] = phi_[i] * p;
        mu_[ip] = 0;
        break;
      }
      phi_[ip] = phi_[i] * (p - 1);
      mu_[ip] = -mu_[i];
    }
  }
}

} // namespace paircorr::arith
