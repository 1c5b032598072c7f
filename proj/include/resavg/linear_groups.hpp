#pragma once

// Congruence towers for SL(n,Z) and GL(n,Z), group orders over finite
// fields and Z/p^k, multiplicative-order exponent tables, and the power
// selection that keeps consecutive indices within [x, x^(1+delta)].

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "resavg/rational.hpp"
#include "resavg/tower.hpp"

namespace resavg::linear {

/// Square matrix of arbitrary-precision integers, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n);
  IntMatrix(std::size_t n, std::vector<Integer> entries);

  static IntMatrix identity(std::size_t n);
  /// Parses "a,b;c,d" (rows separated by ';', entries by ',').
  static IntMatrix parse(std::string_view text);

  std::size_t dim() const noexcept { return n_; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  Integer& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }

  /// Exact determinant (Bareiss fraction-free elimination).
  Integer determinant() const;
  bool is_identity() const;

  std::string to_string() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Integer> a_;
};

/// |GL(n, F_q)| = prod_{l<n} (q^n - q^l); q must be a prime power.
Integer gl_order(unsigned n, std::uint64_t q);
/// |SL(n, F_q)| = |GL(n, F_q)| / (q - 1).
Integer sl_order(unsigned n, std::uint64_t q);

/// Counts n x n matrices over Z/p^k that are invertible (det a unit) or, with
/// det_one, have det == 1. Direct enumeration of all p^(k n^2) matrices;
/// requires that count to be at most 1e8.
Integer brute_force_order(unsigned n, std::uint64_t p, bool det_one, unsigned k = 1);

/// |GL(n, Z/p^k)| = p^(n^2 (k-1)) |GL(n, F_p)|; SL uses exponent (n^2-1)(k-1).
Integer order_mod_pk(unsigned n, std::uint64_t p, unsigned k, bool det_one);

/// Kernels of reduction SL(n,Z) -> SL(n,F_p) over the first J primes:
/// d[j] = |SL(n, F_{p_j})|, l = running product.
IndexTower sl_prime_tower(unsigned n, std::size_t J);

/// |SL(n,F_q)|/|SL(n,F_p)| for consecutive primes p < q in `primes`,
/// together with the pair.
struct OrderRatio {
  std::uint64_t p = 0, q = 0;
  Rational ratio;
};
std::vector<OrderRatio> sl_order_ratios(unsigned n, std::span<const std::uint64_t> primes);

/// Reference constant 2^(n^2 - 1) bounding the limit of consecutive ratios.
Integer sl_ratio_limit(unsigned n);

/// True iff every ratio for j in the second half of the first J primes is
/// at most bound (1 + slack); bound defaults to 2^(n^2-1). Requires J >= 10.
bool gap_ratio_limit_check(unsigned n, std::size_t J, const Rational& slack,
                           const std::optional<Rational>& bound = std::nullopt);

struct MatrixDivisibility {
  std::uint64_t p = 0;
  Integer index;  // |SL(n, F_p)|
};

/// Least prime p <= pmax with gamma != I mod p, paired with |SL(n,F_p)|.
MatrixDivisibility divisibility_matrix(const IntMatrix& gamma, std::uint64_t pmax);

/// Exponents l(j,k) with |image mod p_j^k| = O_j p_j^l(j,k), k = 1..depth.
/// O_j is the order of the image mod p_j, so l(j,1) = 0 for real tables.
class EllTable {
 public:
  /// Throws InvalidTable unless every row is non-decreasing, steps by at most
  /// n^2, grows somewhere within its depth (when depth >= 2), and
  /// 1 <= O_j < p_j^(n^2).
  EllTable(unsigned n, std::vector<std::uint64_t> primes,
           std::vector<std::vector<std::uint64_t>> ell, std::vector<Integer> O);

  unsigned n() const noexcept { return n_; }
  std::size_t rows() const noexcept { return primes_.size(); }
  std::size_t depth(std::size_t j) const;
  std::uint64_t prime(std::size_t j) const;
  const Integer& O(std::size_t j) const;
  /// l(j, k) with 1-based j and k.
  std::uint64_t ell(std::size_t j, std::size_t k) const;

  std::span<const std::uint64_t> primes() const noexcept { return primes_; }
  const std::vector<std::vector<std::uint64_t>>& rows_ell() const noexcept { return ell_; }
  std::span<const Integer> orders() const noexcept { return O_; }

 private:
  unsigned n_;
  std::vector<std::uint64_t> primes_;
  std::vector<std::vector<std::uint64_t>> ell_;
  std::vector<Integer> O_;
};

/// GL(1) table of the cyclic group generated by a: l(j,k) = v_p(ord_{p^k}(a)),
/// O_j = ord_p(a). Throws CoprimalityViolation if some p divides a.
EllTable mult_order_ell_table(std::uint64_t a, std::span<const std::uint64_t> primes,
                              std::size_t K);

/// Congruence table of SL(n,Z) (reduction surjective onto SL(n, Z/p^k)):
/// l(j,k) = (n^2 - 1)(k - 1), O_j = |SL(n, F_p)|.
EllTable sl_ell_table(unsigned n, std::span<const std::uint64_t> primes, std::size_t K);

/// Multiplicative order of a modulo m (gcd(a, m) = 1).
Integer multiplicative_order(const Integer& a, const Integer& m);

/// a^(p-1) == 1 mod p^2.
bool wieferich_test(std::uint64_t p, std::uint64_t a);

/// N > (n^2)!, C > 4, 0 < delta < 1/2, 0 < epsilon < delta.
class PowerSelectionParams {
 public:
  PowerSelectionParams(unsigned n, Integer N, Integer C, Rational delta, Rational epsilon);

  unsigned n() const noexcept { return n_; }
  const Integer& N() const noexcept { return N_; }
  const Integer& C() const noexcept { return C_; }
  const Rational& delta() const noexcept { return delta_; }
  const Rational& epsilon() const noexcept { return epsilon_; }

 private:
  unsigned n_;
  Integer N_, C_;
  Rational delta_, epsilon_;
};

/// k_1 is the least k with l(1,k) > N + C n^2; then k_{j+1} = i + 1 for the
/// largest i with l(j+1, i) <= l(j, k_j) + C n^2. Throws TableExhausted when a
/// row is too shallow to realize the next choice.
std::vector<std::size_t> select_powers(const EllTable& table, const PowerSelectionParams& params,
                                       std::size_t J);

struct WindowCheck {
  bool ok = true;
  std::vector<std::string> failures;
};

/// Independent check of l(j,k_j) + C n^2 < l(j+1,k_{j+1}) <= l(j,k_j) + (C+1) n^2
/// and l(j,k_j) > N + C j n^2 for every j.
WindowCheck verify_power_windows(const EllTable& table, const PowerSelectionParams& params,
                                 std::span<const std::size_t> ks);

/// First level j0 from which the growth argument applies:
/// (delta - eps)(N + C j n^2) - (1 + eps)(C + 2) n^2 > 1 and p_j^eps > d, with
/// d the largest consecutive ratio among the table's primes.
std::size_t power_j0(const EllTable& table, const PowerSelectionParams& params);

/// How intersections of the selected kernels are indexed.
enum class LatticeModel {
  /// Reduction onto the product of the level quotients is surjective
  /// (congruence kernels of SL(n,Z) at distinct primes): l = running product.
  CongruenceProduct,
  /// Subgroups of a cyclic group: kernels are d_j Z, l = running lcm.
  Cyclic,
};

/// d[j] = O_j p_j^l(j, k_j), l from `model`.
IndexTower power_tower(const EllTable& table, std::span<const std::size_t> ks,
                       LatticeModel model, std::string name = "power tower");

}  // namespace resavg::linear
