#include <doctest.h>

#include <deque>
#include <set>

#include "resavg/errors.hpp"
#include "resavg/grigorchuk.hpp"

using namespace resavg;
using namespace resavg::grigorchuk;

namespace {

// Generator action rebuilt from the recursion on addresses, one vertex at a
// time: a flips the first letter; b, c, d pass it and recurse into sections.
std::uint32_t act(char g, std::uint32_t x, unsigned n) {
  if (n == 0 || g == '1') return x;
  std::uint32_t top = x >> (n - 1) & 1u, rest = x & ((1u << (n - 1)) - 1);
  if (g == 'a') return (top ^ 1u) << (n - 1) | rest;
  const char left[] = {'a', 'a', '1'}, right[] = {'c', 'd', 'b'};
  int i = g - 'b';
  char sec = top == 0 ? left[i] : right[i];
  return top << (n - 1) | act(sec, rest, n - 1);
}

Permutation oracle_generator(char g, unsigned n) {
  Permutation p(1u << n);
  for (std::uint32_t x = 0; x < p.size(); ++x) p[x] = act(g, x, n);
  return p;
}

std::size_t oracle_order(unsigned n) {
  std::vector<Permutation> gens;
  for (char g : {'a', 'b', 'c', 'd'}) gens.push_back(oracle_generator(g, n));
  Permutation id(1u << n);
  for (std::uint32_t x = 0; x < id.size(); ++x) id[x] = x;
  std::set<Permutation> seen{id};
  std::deque<Permutation> queue{id};
  while (!queue.empty()) {
    Permutation cur = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      Permutation next(cur.size());
      for (std::size_t x = 0; x < cur.size(); ++x) next[x] = g[cur[x]];
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return seen.size();
}

}  // namespace

TEST_CASE("level actions") {
  CHECK(level_action(TreeAutomorphism("a"), 1) == Permutation{1, 0});
  CHECK(is_identity(level_action(TreeAutomorphism("d"), 1)));
  for (unsigned n = 1; n <= 5; ++n) {
    CHECK(is_identity(level_action(TreeAutomorphism("aa"), n)));
    for (char g : {'a', 'b', 'c', 'd'}) REQUIRE(generator_action(g, n) == oracle_generator(g, n));
  }
  CHECK(is_identity(level_action(TreeAutomorphism(""), 3)));
  CHECK_FALSE(is_identity(level_action(TreeAutomorphism("b"), 2)));
  CHECK_THROWS_AS(TreeAutomorphism("abx"), InvalidArgument);

  // words compose left to right
  auto ab = level_action(TreeAutomorphism("ab"), 3);
  auto a = generator_action('a', 3), b = generator_action('b', 3);
  for (std::uint32_t x = 0; x < 8; ++x) CHECK(ab[x] == b[a[x]]);
  CHECK((TreeAutomorphism("a") * TreeAutomorphism("b")).word() == "ab");
  CHECK(TreeAutomorphism("ad").pow(4).word() == "adadadad");
  // ab has order 16 in the group; its level-4 image is not yet trivial at the 8th power
  CHECK_FALSE(is_identity(level_action(TreeAutomorphism("ab").pow(8), 5)));
}

TEST_CASE("relations") {
  for (unsigned n = 1; n <= 5; ++n) {
    for (const char* w : {"bb", "cc", "dd", "bcd", "cdb", "adadadad"}) {
      REQUIRE(is_identity(level_action(TreeAutomorphism(w), n)));
    }
    REQUIRE(is_identity(level_action(TreeAutomorphism("adacac").pow(4), n)));
  }
}

TEST_CASE("level quotient orders") {
  CHECK(level_quotient_order(1).order == 2);
  CHECK(level_quotient_order(2).order == 8);
  // golden values from the BFS closure
  CHECK(level_quotient_order(3).order == 128);
  CHECK(level_quotient_order(4).order == 4096);
  for (unsigned n = 1; n <= 4; ++n) CHECK(level_quotient_order(n).order == oracle_order(n));
  CHECK_THROWS_AS(level_quotient_order(6), LevelTooDeep);
  CHECK_THROWS_AS(level_quotient_order(5, 4), LevelTooDeep);
  CHECK_THROWS_AS(level_quotient_order(0), InvalidArgument);
}

TEST_CASE("level 5 quotient") {
  auto q5 = level_quotient_order(5);
  CHECK(q5.level == 5);
  CHECK(q5.order == 4194304);
  // powers of two, each dividing the next
  Integer prev = 1;
  for (unsigned n = 1; n <= 5; ++n) {
    Integer o = n == 5 ? q5.order : level_quotient_order(n).order;
    CHECK(mpz_popcount(o.get_mpz_t()) == 1);
    CHECK(o % prev == 0);
    prev = o;
  }
}

TEST_CASE("level-stabilizer tower") {
  auto t2 = grig_tower(2);
  CHECK(std::vector<Integer>(t2.d().begin(), t2.d().end()) == std::vector<Integer>{2, 8});
  CHECK(std::vector<Integer>(t2.l().begin(), t2.l().end()) == std::vector<Integer>{2, 8});
  auto t4 = grig_tower(4);
  CHECK(is_nested(t4));
  Rational expected = 0;
  for (std::size_t j = 1; j <= 4; ++j) {
    auto lv = decompose(t4, j);
    CHECK(lv.t == 1);
    expected += lv.s - 1;
  }
  CHECK(ave_partial(t4, 4) == expected);
  CHECK(ave_partial(t4, 4) == 50);
}

TEST_CASE("D1 series") {
  std::vector<Integer> o{2, 8, 128, 4096, 4194304};
  auto s = d1_series_terms(o, 2);
  CHECK(s.leading == Rational(127, 128));
  REQUIRE(s.terms.size() == 2);
  CHECK(s.terms[0] == Rational(31, 2048));
  CHECK(s.terms[1] == Rational(8, 4096) * Rational(1023, 1024));
  CHECK(s.trend == Trend::Decreasing);
  CHECK(to_string(s.trend) == "Decreasing");
  CHECK_THROWS_AS(d1_series_terms(o, 3), InsufficientLevels);

  std::vector<Integer> flat{2, 4, 8, 16, 32, 64};
  CHECK(d1_series_terms(flat, 3).trend == Trend::Constant);
}

TEST_CASE("SL(n, Z_p) congruence tower") {
  auto t = slnzp_tower(2, 2, 3);
  CHECK(std::vector<Integer>(t.d().begin(), t.d().end()) == std::vector<Integer>{6, 48, 384});
  CHECK(is_nested(t));
  auto t10 = slnzp_tower(2, 2, 10);
  for (std::size_t j = 2; j <= 10; ++j) CHECK(decompose(t10, j).s == 8);
  CHECK(ave_partial(t10, 10) == 5 + 9 * 7);
  auto t3 = slnzp_tower(3, 3, 4);
  CHECK(decompose(t3, 3).s == Integer(6561));  // 3^8
}
