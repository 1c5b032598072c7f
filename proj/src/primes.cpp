#include "resavg/primes.hpp"

#include <algorithm>
#include <cmath>

#include "resavg/errors.hpp"

namespace resavg {

namespace {

constexpr std::uint64_t kSegment = 1u << 18;

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<std::uint64_t> small_sieve(std::uint64_t n) {
  std::vector<bool> composite(n + 1, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t k = i * i; k <= n; k += i) composite[k] = true;
  }
  return out;
}

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  if (hi < 2 || lo > hi) return out;
  lo = std::max<std::uint64_t>(lo, 2);
  auto base = small_sieve(isqrt(hi));
  std::vector<bool> composite;
  for (std::uint64_t start = lo; start <= hi; start += kSegment) {
    std::uint64_t end = std::min(hi, start + kSegment - 1);
    composite.assign(end - start + 1, false);
    for (std::uint64_t p : base) {
      if (p * p > end) break;
      std::uint64_t first = std::max(p * p, (start + p - 1) / p * p);
      for (std::uint64_t k = first; k <= end; k += p) composite[k - start] = true;
    }
    for (std::uint64_t i = start; i <= end; ++i) {
      if (!composite[i - start]) out.push_back(i);
    }
    if (end == hi) break;
  }
  return out;
}

PrimeSeq primes_upto(std::uint64_t N) {
  if (N < 2) throw InvalidArgument("primes_upto needs N >= 2");
  return PrimeSeq{N, primes_between(2, N)};
}

std::vector<std::uint64_t> first_primes(std::size_t count) {
  if (count == 0) return {};
  // p_n < n (ln n + ln ln n) for n >= 6
  double n = static_cast<double>(std::max<std::size_t>(count, 6));
  auto bound = static_cast<std::uint64_t>(n * (std::log(n) + std::log(std::log(n)))) + 16;
  auto ps = primes_between(2, bound);
  ps.resize(count);
  return ps;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

std::pair<std::uint64_t, unsigned> prime_power_decompose(std::uint64_t q) {
  if (q < 2) return {0, 0};
  std::uint64_t p = 0;
  for (std::uint64_t f = 2; f * f <= q; ++f) {
    if (q % f == 0) {
      p = f;
      break;
    }
  }
  if (p == 0) return {q, 1};
  unsigned k = 0;
  while (q % p == 0) {
    q /= p;
    ++k;
  }
  if (q != 1) return {0, 0};
  return {p, k};
}

BertrandReport bertrand_verify(std::uint64_t N) {
  if (N < 3) throw InvalidArgument("bertrand_verify needs N >= 3");
  auto ps = primes_upto(N).primes;
  BertrandReport rep;
  // ratio q/p > best_q/best_p  <=>  q*best_p > best_q*p
  std::uint64_t best_p = 1, best_q = 0;
  for (std::size_t i = 0; i + 1 < ps.size(); ++i) {
    std::uint64_t p = ps[i], q = ps[i + 1];
    if (static_cast<u128>(q) * best_p > static_cast<u128>(best_q) * p) {
      best_p = p;
      best_q = q;
    }
    ++rep.pairs_checked;
  }
  rep.max_ratio = make_rational(Integer(static_cast<unsigned long>(best_q)),
                                Integer(static_cast<unsigned long>(best_p)));
  rep.witness = {best_p, best_q};
  rep.holds = rep.max_ratio <= 2;
  return rep;
}

std::vector<Integer> lcm_prefix(std::uint64_t j) {
  std::vector<Integer> out;
  out.reserve(j + 1);
  out.emplace_back(1);
  for (std::uint64_t k = 1; k <= j; ++k) {
    Integer next;
    mpz_lcm_ui(next.get_mpz_t(), out.back().get_mpz_t(), k);
    out.push_back(std::move(next));
  }
  return out;
}

Integer lcm_upto(std::uint64_t j) { return lcm_prefix(j).back(); }

}  // namespace resavg
