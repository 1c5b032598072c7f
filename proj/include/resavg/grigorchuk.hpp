#pragma once

// The first Grigorchuk group acting on the rooted binary tree.
//
// Generators follow the standard wreath recursion: a swaps the two subtrees
// at the root; b = (a, c), c = (a, d), d = (1, b) act on the left and right
// subtrees without swapping. Level-n vertices are indexed 0..2^n-1 with the
// first letter of the address as the most significant bit.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "resavg/rational.hpp"
#include "resavg/tower.hpp"

namespace resavg::grigorchuk {

/// Image of a vertex index under the automorphism: perm[x] = g(x).
using Permutation = std::vector<std::uint32_t>;

inline constexpr unsigned kMaxLevel = 5;

/// A word over {a, b, c, d}, read left to right: "ab" applies a, then b.
class TreeAutomorphism {
 public:
  TreeAutomorphism() = default;
  /// Throws InvalidArgument on letters outside {a,b,c,d}.
  explicit TreeAutomorphism(std::string_view word);

  const std::string& word() const noexcept { return word_; }
  TreeAutomorphism operator*(const TreeAutomorphism& rhs) const;
  TreeAutomorphism pow(unsigned k) const;

 private:
  std::string word_;
};

/// Permutation of the 2^n level-n vertices induced by the word.
Permutation level_action(const TreeAutomorphism& g, unsigned n);

/// Permutation of a single generator, computed from the wreath recursion.
const Permutation& generator_action(char gen, unsigned n);

bool is_identity(const Permutation& p);

/// The level-n quotient G/St(n).
struct LevelQuotient {
  unsigned level = 0;
  Integer order;
};

/// Order of the group generated by the level-n images of a, b, c, d,
/// by breadth-first closure. Throws LevelTooDeep above max_level (at most 5).
LevelQuotient level_quotient_order(unsigned n, unsigned max_level = kMaxLevel);

/// Level-stabilizer tower: d = l = orders of the first J level quotients.
IndexTower grig_tower(unsigned J, unsigned max_level = kMaxLevel);

/// Direction of a term sequence.
enum class Trend { Increasing, Decreasing, Constant, Mixed };
std::string to_string(Trend t);

/// Terms of the lower-bound series for the normal residual average. With
/// o_j = [G : St(j)], the leading term is (o_3 - 1)/o_3 and term j (1..J) is
/// (o_j / o_{j+2}) (1 - o_{j+2}/o_{j+3}). `orders` starts at level 1 and must
/// reach level J+3.
struct D1Series {
  Rational leading;
  std::vector<Rational> terms;
  Trend trend = Trend::Constant;
};

D1Series d1_series_terms(std::span<const Integer> orders, std::size_t J);

/// Congruence tower of SL(n, Z_p): d = l = |SL(n, Z/p^j)|, j = 1..J.
IndexTower slnzp_tower(unsigned n, std::uint64_t p, std::size_t J);

}  // namespace resavg::grigorchuk
