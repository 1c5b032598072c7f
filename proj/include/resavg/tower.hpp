#pragma once

// Residual systems encoded as index towers.
//
// A tower stores d[j] = [G : D_j] and l[j] = [G : L_j] for j = 1..J, where
// L_j is the intersection of the first j subgroups. Levels are 1-indexed in
// the public API; l[0] = 1 is implicit. Every quantity in the sum formulas
// for the residual average is a function of these two sequences.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "resavg/rational.hpp"

namespace resavg {

class IndexTower {
 public:
  IndexTower() = default;

  /// Requires equal lengths and strictly positive entries; lattice
  /// consistency is checked lazily by decompose() and by validate().
  IndexTower(std::string name, std::vector<Integer> d, std::vector<Integer> l);

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return d_.size(); }
  bool empty() const noexcept { return d_.empty(); }

  /// [G : D_j], 1 <= j <= size().
  const Integer& index(std::size_t j) const;
  /// [G : L_j], 0 <= j <= size(); intersection_index(0) == 1.
  const Integer& intersection_index(std::size_t j) const;

  std::span<const Integer> d() const noexcept { return d_; }
  std::span<const Integer> l() const noexcept { return l_; }

  /// First J levels as a new tower.
  IndexTower prefix(std::size_t J) const;

  friend bool operator==(const IndexTower&, const IndexTower&) = default;

 private:
  std::string name_;
  std::vector<Integer> d_;
  std::vector<Integer> l_;
};

/// Every structural invariant a tower built from a genuine subgroup lattice
/// satisfies, with human-readable violations.
struct TowerDiagnostics {
  std::vector<std::string> violations;
  bool ok() const noexcept { return violations.empty(); }
};

TowerDiagnostics diagnose(const IndexTower& tower);

/// Throws InconsistentTower with the first violation reported by diagnose().
void validate(const IndexTower& tower);

/// Lattice coefficients at one level: r = [G : G_j], s = [L_{j-1} : L_j],
/// t = [G_j : L_{j-1}] with G_j = L_{j-1} D_j.
struct LevelDecomposition {
  Integer r;
  Integer s;
  Integer t;
  friend bool operator==(const LevelDecomposition&, const LevelDecomposition&) = default;
};

LevelDecomposition decompose(const IndexTower& tower, std::size_t j);

/// Haar measure of the coset difference at level j, (s-1)/(r s t).
Rational measure_term(const IndexTower& tower, std::size_t j);

/// Sum over j <= J of (s_j - 1)/t_j.
Rational ave_partial(const IndexTower& tower, std::size_t J);

/// Sum over j <= J of r_j (s_j - 1) / prod_{l<j} s_l. Same series as
/// ave_partial, reached through the recursion for t_j instead.
Rational ave_partial_product_form(const IndexTower& tower, std::size_t J);

/// Partial sums of ave_partial for J = 1..size() in one pass.
std::vector<Rational> ave_partial_sums(const IndexTower& tower);

/// Checks t_{j+1} r_{j+1} == prod_{l<=j} s_l at every level.
bool recursion_check(const IndexTower& tower);

/// r_{j+1}(s_{j+1}-1) / (r_j s_j (s_j-1)); needs j+1 <= size() and s_j >= 2.
Rational alpha(const IndexTower& tower, std::size_t j);

enum class GrowthClass { SubQuadratic, SuperQuadratic, Indeterminate };

std::string to_string(GrowthClass g);

struct Classification {
  GrowthClass growth = GrowthClass::Indeterminate;
  /// alpha values used, paired with their level j.
  std::vector<std::pair<std::size_t, Rational>> window_alphas;
  /// Levels skipped because s_j == 1 leaves alpha undefined.
  std::vector<std::size_t> skipped_levels;
};

inline constexpr std::size_t kDefaultClassifyWindow = 10;

/// Ratio-test classification over the trailing `window` defined alpha values.
/// A finite window only approximates "for all sufficiently large j".
Classification classify(const IndexTower& tower, std::size_t window = kDefaultClassifyWindow);

bool is_prime_system(const IndexTower& tower);
bool is_nested(const IndexTower& tower);

/// d[j] < d[j+1] <= c d[j] for every consecutive pair.
bool gap_check_linear(const IndexTower& tower, const Rational& c);
/// d[j] < d[j+1] < d[j]^(1+delta) for every consecutive pair.
bool gap_check_power(const IndexTower& tower, const Rational& delta);

/// Smallest level j such that the pair condition holds for every pair
/// (i, i+1) with i >= j; nullopt when even the last pair fails.
std::optional<std::size_t> gap_linear_holds_from(const IndexTower& tower, const Rational& c);
std::optional<std::size_t> gap_power_holds_from(const IndexTower& tower, const Rational& delta);

/// Exact test of d_next < d^(1+delta) for rational delta > 0.
bool below_power(const Integer& d_next, const Integer& d, const Rational& delta);

/// Sum of measure_term over j <= J; equals 1 - 1/l[J].
Rational measure_telescope(const IndexTower& tower, std::size_t J);

/// sum of i^(-s) over the J smallest of the given distinct indices, in
/// double precision with smallest terms accumulated first. Relative
/// rounding error is bounded by roughly J * 2^-52.
double zeta_partial(std::span<const Integer> indices, double s, std::size_t J);

}  // namespace resavg
