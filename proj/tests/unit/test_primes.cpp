#include <doctest.h>

#include "resavg/errors.hpp"
#include "resavg/primes.hpp"

using namespace resavg;

namespace {

bool trial_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("primes_upto") {
  CHECK(primes_upto(10).primes == std::vector<std::uint64_t>{2, 3, 5, 7});
  CHECK(primes_upto(2).primes == std::vector<std::uint64_t>{2});
  CHECK(primes_upto(30).primes ==
        std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  CHECK(primes_upto(30).bound == 30);
  CHECK_THROWS_AS(primes_upto(1), InvalidArgument);
}

TEST_CASE("sieve agrees with trial division up to 1e5") {
  auto seq = primes_upto(100000).primes;
  std::vector<std::uint64_t> oracle;
  for (std::uint64_t n = 2; n <= 100000; ++n) {
    if (trial_prime(n)) oracle.push_back(n);
  }
  CHECK(seq == oracle);
}

TEST_CASE("segments join without gaps") {
  auto whole = primes_upto(2000000).primes;
  std::vector<std::uint64_t> tail;
  for (auto p : whole) {
    if (p >= 262000) tail.push_back(p);
  }
  CHECK(primes_between(262000, 2000000) == tail);
  CHECK(primes_between(24, 28).empty());
  CHECK(primes_between(0, 3) == std::vector<std::uint64_t>{2, 3});
  CHECK(first_primes(5) == std::vector<std::uint64_t>{2, 3, 5, 7, 11});
  CHECK(first_primes(1000).back() == 7919);
}

TEST_CASE("Miller-Rabin") {
  auto small = primes_upto(200000).primes;
  std::size_t at = 0;
  for (std::uint64_t n = 0; n <= 200000; ++n) {
    bool expected = at < small.size() && small[at] == n;
    if (expected) ++at;
    REQUIRE(is_prime(n) == expected);
  }
  CHECK(is_prime((1ULL << 61) - 1));
  CHECK(is_prime(18446744073709551557ULL));  // largest 64-bit prime
  CHECK_FALSE(is_prime(3215031751ULL));      // strong pseudoprime to 2,3,5,7
  CHECK_FALSE(is_prime(((1ULL << 31) - 1) * ((1ULL << 31) - 1)));
}

TEST_CASE("prime powers") {
  CHECK(prime_power_decompose(8) == std::pair<std::uint64_t, unsigned>{2, 3});
  CHECK(prime_power_decompose(49) == std::pair<std::uint64_t, unsigned>{7, 2});
  CHECK(prime_power_decompose(13) == std::pair<std::uint64_t, unsigned>{13, 1});
  CHECK(prime_power_decompose(12) == std::pair<std::uint64_t, unsigned>{0, 0});
  CHECK(prime_power_decompose(1) == std::pair<std::uint64_t, unsigned>{0, 0});
}

TEST_CASE("bertrand_verify") {
  auto b10 = bertrand_verify(10);
  CHECK(b10.max_ratio == Rational(5, 3));
  CHECK(b10.witness == std::pair<std::uint64_t, std::uint64_t>{3, 5});
  CHECK(b10.holds);
  CHECK(b10.pairs_checked == 3);

  // (113, 127) is the widest gap below 130 but 5/3 still dominates
  auto b130 = bertrand_verify(130);
  CHECK(b130.max_ratio == Rational(5, 3));
  CHECK(b130.witness == std::pair<std::uint64_t, std::uint64_t>{3, 5});

  auto b3 = bertrand_verify(3);
  CHECK(b3.max_ratio == Rational(3, 2));
  CHECK(b3.witness == std::pair<std::uint64_t, std::uint64_t>{2, 3});
  CHECK_THROWS_AS(bertrand_verify(2), InvalidArgument);

  // direct scan oracle
  auto ps = primes_upto(50000).primes;
  Rational best = 0;
  for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
    Rational r = make_rational(ps[i + 1], ps[i]);
    if (r > best) best = r;
  }
  CHECK(bertrand_verify(50000).max_ratio == best);
}

TEST_CASE("lcm_upto") {
  CHECK(lcm_upto(0) == 1);
  CHECK(lcm_upto(1) == 1);
  CHECK(lcm_upto(6) == 60);
  CHECK(lcm_upto(10) == 2520);
  CHECK(lcm_upto(43) == Integer("9419588158802421600"));  // past INT64_MAX
  CHECK(lcm_upto(47) > Integer("18446744073709551615"));

  // L(j-1) | L(j), with quotient > 1 exactly at prime powers
  auto L = lcm_prefix(500);
  REQUIRE(L.size() == 501);
  for (std::uint64_t j = 2; j <= 500; ++j) {
    REQUIRE(L[j] % L[j - 1] == 0);
    bool grows = L[j] != L[j - 1];
    CHECK(grows == (prime_power_decompose(j).first != 0));
  }
}
