#include "resavg/integer_div.hpp"

#include "resavg/errors.hpp"
#include "resavg/primes.hpp"

namespace resavg::integers {

namespace {

std::uint64_t magnitude(std::int64_t m) {
  if (m == 0) throw ZeroInput("divisibility function is undefined at 0");
  return m < 0 ? static_cast<std::uint64_t>(-(m + 1)) + 1 : static_cast<std::uint64_t>(m);
}

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
}

}  // namespace

std::uint64_t d_full(std::int64_t m) {
  std::uint64_t a = magnitude(m);
  std::uint64_t n = 2;
  while (a % n == 0) ++n;
  return n;
}

std::uint64_t d_prime(std::int64_t m) {
  std::uint64_t a = magnitude(m);
  for (std::uint64_t p = 2;; ++p) {
    if (is_prime(p) && a % p != 0) return p;
  }
}

Integer d_p(std::int64_t m, std::uint64_t p) {
  std::uint64_t a = magnitude(m);
  require_prime(p);
  Integer power = p;
  while (a % p == 0) {
    a /= p;
    power *= p;
  }
  return power;
}

ZLevelSet level_set_measure(std::uint64_t n) {
  if (n < 2) throw InvalidArgument("level sets start at n = 2");
  auto L = lcm_prefix(n);
  return {n, make_rational(1, L[n - 1]) - make_rational(1, L[n])};
}

Rational ave_z_partial(std::uint64_t J) {
  auto L = lcm_prefix(J);
  Rational sum = 0;
  for (std::uint64_t j = 1; j <= J; ++j) {
    Rational keep = Rational(1) - make_rational(L[j - 1], L[j]);
    sum += Rational(Integer(j)) * keep * make_rational(1, L[j - 1]);
  }
  return sum;
}

Rational ave_prime_partial(std::size_t J) {
  auto ps = first_primes(J);
  Rational sum = 0;
  Integer product = 1;
  for (std::uint64_t p : ps) {
    sum += make_rational(Integer(p - 1), product);
    product *= p;
  }
  return sum;
}

std::vector<Rational> ave_p_partial_sums(std::uint64_t p, std::size_t J) {
  require_prime(p);
  std::vector<Rational> out;
  out.reserve(J);
  Rational sum = 0;
  Integer prev = 1;
  for (std::size_t j = 1; j <= J; ++j) {
    Integer cur = prev * p;
    Rational mu = make_rational(1, prev) - make_rational(1, cur);
    sum += Rational(cur) * mu;
    out.push_back(sum);
    prev = std::move(cur);
  }
  return out;
}

Rational ave_p_partial(std::uint64_t p, std::size_t J) {
  if (J == 0) {
    require_prime(p);
    return 0;
  }
  return ave_p_partial_sums(p, J).back();
}

Rational empirical_density_exact(std::uint64_t n, std::uint64_t N) {
  if (N < 1) throw InvalidArgument("empirical density needs N >= 1");
  std::uint64_t hits = 0;
  for (std::uint64_t m = 1; m <= N; ++m) {
    if (d_full(static_cast<std::int64_t>(m)) == n) ++hits;
  }
  return make_rational(Integer(hits), Integer(N));
}

double empirical_density(std::uint64_t n, std::uint64_t N) {
  return to_double(empirical_density_exact(n, N));
}

Rational empirical_average_exact(std::uint64_t N) {
  if (N < 1) throw InvalidArgument("empirical average needs N >= 1");
  Integer total = 0;
  for (std::uint64_t m = 1; m <= N; ++m) total += d_full(static_cast<std::int64_t>(m));
  return make_rational(total, Integer(N));
}

double empirical_average(std::uint64_t N) { return to_double(empirical_average_exact(N)); }

IndexTower tower_all_subgroups(std::size_t J) {
  auto L = lcm_prefix(J + 1);
  std::vector<Integer> d, l;
  for (std::size_t j = 1; j <= J; ++j) {
    d.emplace_back(static_cast<unsigned long>(j + 1));
    l.push_back(L[j + 1]);
  }
  return IndexTower("Z: all subgroups nZ", std::move(d), std::move(l));
}

IndexTower tower_primes(std::size_t J) {
  std::vector<Integer> d, l;
  Integer product = 1;
  for (std::uint64_t p : first_primes(J)) {
    product *= p;
    d.emplace_back(p);
    l.push_back(product);
  }
  return IndexTower("Z: prime subgroups pZ", std::move(d), std::move(l));
}

IndexTower tower_prime_powers(std::uint64_t p, std::size_t J) {
  require_prime(p);
  std::vector<Integer> d;
  Integer power = 1;
  for (std::size_t j = 1; j <= J; ++j) {
    power *= p;
    d.push_back(power);
  }
  auto l = d;
  return IndexTower("Z: powers of " + std::to_string(p), std::move(d), std::move(l));
}

}  // namespace resavg::integers
