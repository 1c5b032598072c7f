#pragma once

// Divisibility functions and residual averages for the integers.
//
// A finite-index subgroup of Z is nZ, and m lies outside nZ exactly when
// n does not divide m. So the divisibility function of a family of such
// subgroups is "the least index in the family not dividing m".

#include <cstdint>
#include <vector>

#include "resavg/rational.hpp"
#include "resavg/tower.hpp"

namespace resavg::integers {

/// Least n >= 2 with n not dividing |m|. Throws ZeroInput for m == 0.
std::uint64_t d_full(std::int64_t m);

/// Least prime not dividing |m|.
std::uint64_t d_prime(std::int64_t m);

/// Least power of p not dividing m, i.e. p^(v_p(m) + 1).
Integer d_p(std::int64_t m, std::uint64_t p);

/// {x : D(x) = n} in the profinite completion and its Haar measure,
/// 1/lcm(1..n-1) - 1/lcm(1..n).
struct ZLevelSet {
  std::uint64_t n = 0;
  Rational measure;
};

ZLevelSet level_set_measure(std::uint64_t n);

/// Partial sum through j = J of j (1 - L_{j-1}/L_j) / L_{j-1}, L_k = lcm(1..k).
Rational ave_z_partial(std::uint64_t J);

/// Partial sum through J of (p_j - 1) / prod_{l<j} p_l.
Rational ave_prime_partial(std::size_t J);

/// Partial sums of the p-power average for J' = 1..J. Each term is
/// p^j * (1/p^(j-1) - 1/p^j), so the sums grow as J'(p - 1).
std::vector<Rational> ave_p_partial_sums(std::uint64_t p, std::size_t J);
Rational ave_p_partial(std::uint64_t p, std::size_t J);

/// #{1 <= m <= N : d_full(m) = n} / N.
double empirical_density(std::uint64_t n, std::uint64_t N);
/// Exact numerator/denominator version of empirical_density.
Rational empirical_density_exact(std::uint64_t n, std::uint64_t N);

/// (1/N) sum_{m <= N} d_full(m), accumulated exactly.
double empirical_average(std::uint64_t N);
Rational empirical_average_exact(std::uint64_t N);

/// d = [2, ..., J+1], l[j] = lcm(1..j+1): every subgroup of Z in index order.
IndexTower tower_all_subgroups(std::size_t J);
/// d = first J primes, l = running product.
IndexTower tower_primes(std::size_t J);
/// d = l = [p, p^2, ..., p^J].
IndexTower tower_prime_powers(std::uint64_t p, std::size_t J);

}  // namespace resavg::integers
