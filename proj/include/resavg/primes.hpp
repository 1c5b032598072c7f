#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "resavg/rational.hpp"

namespace resavg {

/// All primes <= bound, strictly increasing.
struct PrimeSeq {
  std::uint64_t bound = 0;
  std::vector<std::uint64_t> primes;
};

/// Segmented sieve of Eratosthenes. Requires N >= 2.
PrimeSeq primes_upto(std::uint64_t N);

/// The first `count` primes.
std::vector<std::uint64_t> first_primes(std::size_t count);

/// Primes in the closed interval [lo, hi].
std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// If q = p^k with p prime and k >= 1, returns (p, k); otherwise (0, 0).
std::pair<std::uint64_t, unsigned> prime_power_decompose(std::uint64_t q);

struct BertrandReport {
  Rational max_ratio;
  std::pair<std::uint64_t, std::uint64_t> witness;  // first pair attaining the max
  bool holds = false;                               // max_ratio <= 2
  std::size_t pairs_checked = 0;
};

/// Maximum of p_{j+1}/p_j over consecutive primes <= N. Requires N >= 3.
BertrandReport bertrand_verify(std::uint64_t N);

/// lcm(1, ..., j); lcm_upto(0) == 1.
Integer lcm_upto(std::uint64_t j);

/// lcm(1..k) for k = 0..j in one pass.
std::vector<Integer> lcm_prefix(std::uint64_t j);

}  // namespace resavg
