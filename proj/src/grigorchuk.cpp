#include "resavg/grigorchuk.hpp"

#include <array>
#include <algorithm>
#include <numeric>

#include "resavg/errors.hpp"
#include "resavg/linear_groups.hpp"

namespace resavg::grigorchuk {

namespace {

int generator_slot(char g) {
  switch (g) {
    case 'a': return 0;
    case 'b': return 1;
    case 'c': return 2;
    case 'd': return 3;
    default: return -1;
  }
}

// Sections of b, c, d on the left and right subtree ('1' = identity).
constexpr std::array<std::array<char, 2>, 4> kSections = {{
    {'1', '1'},  // a (unused; a swaps)
    {'a', 'c'},
    {'a', 'd'},
    {'1', 'b'},
}};

Permutation identity_perm(unsigned n) {
  Permutation p(std::size_t{1} << n);
  std::iota(p.begin(), p.end(), 0u);
  return p;
}

using GeneratorCache = std::array<std::array<Permutation, kMaxLevel + 1>, 4>;

GeneratorCache build_cache() {
  GeneratorCache cache;
  for (int g = 0; g < 4; ++g) cache[g][0] = Permutation{0};
  for (unsigned n = 1; n <= kMaxLevel; ++n) {
    const std::uint32_t half = 1u << (n - 1);
    for (int g = 0; g < 4; ++g) {
      Permutation p(std::size_t{1} << n);
      for (std::uint32_t x = 0; x < half; ++x) {
        if (g == 0) {
          p[x] = x + half;
          p[x + half] = x;
          continue;
        }
        auto section = [&](char s, std::uint32_t v) -> std::uint32_t {
          return s == '1' ? v : cache[generator_slot(s)][n - 1][v];
        };
        p[x] = section(kSections[g][0], x);
        p[x + half] = half + section(kSections[g][1], x);
      }
      cache[g][n] = std::move(p);
    }
  }
  return cache;
}

const GeneratorCache& cache() {
  static const GeneratorCache c = build_cache();
  return c;
}

void require_level(unsigned n) {
  if (n > kMaxLevel) {
    throw LevelTooDeep("level " + std::to_string(n) + " exceeds supported depth " +
                       std::to_string(kMaxLevel));
  }
}

// Tree automorphisms of depth n are determined by their portrait: one swap
// bit per internal vertex, 2^n - 1 bits in total.
std::uint64_t portrait(const Permutation& p, unsigned n) {
  std::uint64_t bits = 0;
  unsigned pos = 0;
  for (unsigned depth = 0; depth < n; ++depth) {
    for (std::uint32_t v = 0; v < (1u << depth); ++v) {
      std::uint32_t leaf = v << (n - depth);
      std::uint64_t bit = (p[leaf] >> (n - 1 - depth)) & 1u;
      bits |= bit << pos++;
    }
  }
  return bits;
}

// Open-addressing set of 64-bit keys; key 0 is reserved as the empty marker,
// so callers store key + 1.
class FlatSet {
 public:
  explicit FlatSet(std::size_t expected) {
    std::size_t cap = 16;
    while (cap < expected * 2) cap <<= 1;
    slots_.assign(cap, 0);
  }

  bool insert(std::uint64_t key) {
    if ((size_ + 1) * 2 > slots_.size()) grow();
    return place(key);
  }

  std::size_t size() const { return size_; }

 private:
  static std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    return x;
  }

  bool place(std::uint64_t key) {
    std::size_t mask = slots_.size() - 1;
    for (std::size_t i = mix(key) & mask;; i = (i + 1) & mask) {
      if (slots_[i] == key) return false;
      if (slots_[i] == 0) {
        slots_[i] = key;
        ++size_;
        return true;
      }
    }
  }

  void grow() {
    std::vector<std::uint64_t> old;
    old.swap(slots_);
    slots_.assign(old.size() * 2, 0);
    size_ = 0;
    for (auto k : old) {
      if (k) place(k);
    }
  }

  std::vector<std::uint64_t> slots_;
  std::size_t size_ = 0;
};

// Rebuilds the permutation of a depth-n automorphism from its portrait.
Permutation from_portrait(std::uint64_t bits, unsigned n) {
  Permutation p(std::size_t{1} << n);
  for (std::uint32_t x = 0; x < p.size(); ++x) {
    std::uint32_t image = 0;
    std::uint32_t prefix = 0;  // vertex reached so far, depth = d
    unsigned offset = 0;       // portrait index of the first vertex at depth d
    for (unsigned d = 0; d < n; ++d) {
      std::uint32_t letter = (x >> (n - 1 - d)) & 1u;
      std::uint32_t swap = (bits >> (offset + prefix)) & 1u;
      image = (image << 1) | (letter ^ swap);
      prefix = (prefix << 1) | letter;
      offset += 1u << d;
    }
    p[x] = image;
  }
  return p;
}

}  // namespace

TreeAutomorphism::TreeAutomorphism(std::string_view word) : word_(word) {
  for (char c : word_) {
    if (generator_slot(c) < 0) {
      throw InvalidArgument(std::string("unknown generator '") + c + "'");
    }
  }
}

TreeAutomorphism TreeAutomorphism::operator*(const TreeAutomorphism& rhs) const {
  TreeAutomorphism out;
  out.word_ = word_ + rhs.word_;
  return out;
}

TreeAutomorphism TreeAutomorphism::pow(unsigned k) const {
  TreeAutomorphism out;
  for (unsigned i = 0; i < k; ++i) out.word_ += word_;
  return out;
}

const Permutation& generator_action(char gen, unsigned n) {
  require_level(n);
  int slot = generator_slot(gen);
  if (slot < 0) throw InvalidArgument(std::string("unknown generator '") + gen + "'");
  return cache()[slot][n];
}

Permutation level_action(const TreeAutomorphism& g, unsigned n) {
  require_level(n);
  Permutation p = identity_perm(n);
  for (char c : g.word()) {
    const auto& step = generator_action(c, n);
    for (auto& x : p) x = step[x];
  }
  return p;
}

bool is_identity(const Permutation& p) {
  for (std::uint32_t i = 0; i < p.size(); ++i) {
    if (p[i] != i) return false;
  }
  return true;
}

LevelQuotient level_quotient_order(unsigned n, unsigned max_level) {
  if (n < 1) throw InvalidArgument("level must be >= 1");
  if (n > std::min(max_level, kMaxLevel)) {
    throw LevelTooDeep("level " + std::to_string(n) + " exceeds configured bound " +
                       std::to_string(std::min(max_level, kMaxLevel)));
  }
  std::array<const Permutation*, 4> gens{};
  for (int g = 0; g < 4; ++g) gens[g] = &cache()[g][n];

  FlatSet seen(1024);
  std::vector<std::uint64_t> frontier{portrait(identity_perm(n), n)};
  seen.insert(frontier.front() + 1);
  std::vector<std::uint64_t> next;
  Permutation image(std::size_t{1} << n);
  while (!frontier.empty()) {
    next.clear();
    for (std::uint64_t key : frontier) {
      Permutation p = from_portrait(key, n);
      for (const auto* g : gens) {
        for (std::size_t x = 0; x < p.size(); ++x) image[x] = (*g)[p[x]];
        std::uint64_t k = portrait(image, n);
        if (seen.insert(k + 1)) next.push_back(k);
      }
    }
    frontier.swap(next);
  }
  return {n, Integer(static_cast<unsigned long>(seen.size()))};
}

IndexTower grig_tower(unsigned J, unsigned max_level) {
  std::vector<Integer> d;
  for (unsigned j = 1; j <= J; ++j) d.push_back(level_quotient_order(j, max_level).order);
  auto l = d;
  return IndexTower("Grigorchuk level stabilizers", std::move(d), std::move(l));
}

std::string to_string(Trend t) {
  switch (t) {
    case Trend::Increasing: return "Increasing";
    case Trend::Decreasing: return "Decreasing";
    case Trend::Constant: return "Constant";
    case Trend::Mixed: return "Mixed";
  }
  return "Mixed";
}

D1Series d1_series_terms(std::span<const Integer> orders, std::size_t J) {
  if (orders.size() < J + 3 || orders.size() < 3) {
    throw InsufficientLevels("series through term " + std::to_string(J) + " needs orders to level " +
                             std::to_string(std::max<std::size_t>(J + 3, 3)) + ", have " +
                             std::to_string(orders.size()));
  }
  auto o = [&](std::size_t level) -> const Integer& { return orders[level - 1]; };
  D1Series out;
  out.leading = make_rational(o(3) - 1, o(3));
  for (std::size_t j = 1; j <= J; ++j) {
    Rational ratio = make_rational(o(j), o(j + 2));
    Rational kept = Rational(1) - make_rational(o(j + 2), o(j + 3));
    out.terms.push_back(ratio * kept);
  }
  bool inc = true, dec = true;
  for (std::size_t i = 1; i < out.terms.size(); ++i) {
    if (out.terms[i] <= out.terms[i - 1]) inc = false;
    if (out.terms[i] >= out.terms[i - 1]) dec = false;
  }
  bool constant = std::all_of(out.terms.begin(), out.terms.end(),
                              [&](const Rational& t) { return t == out.terms.front(); });
  out.trend = out.terms.size() < 2 || constant ? Trend::Constant
              : inc                            ? Trend::Increasing
              : dec                            ? Trend::Decreasing
                                               : Trend::Mixed;
  return out;
}

IndexTower slnzp_tower(unsigned n, std::uint64_t p, std::size_t J) {
  if (n < 2) throw InvalidArgument("SL(n, Z_p) tower needs n >= 2");
  std::vector<Integer> d;
  for (std::size_t j = 1; j <= J; ++j) {
    d.push_back(linear::order_mod_pk(n, p, static_cast<unsigned>(j), true));
  }
  auto l = d;
  return IndexTower("SL(" + std::to_string(n) + ",Z_" + std::to_string(p) + ") congruence",
                    std::move(d), std::move(l));
}

}  // namespace resavg::grigorchuk
