#include "resavg/linear_groups.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "resavg/errors.hpp"
#include "resavg/primes.hpp"

namespace resavg::linear {

namespace {

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
}

Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Integer ipow(std::uint64_t base, unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, e);
  return r;
}

// Laplace expansion mod m on a small dense block.
std::uint64_t det_mod(const std::vector<std::uint64_t>& a, std::size_t n, std::uint64_t m) {
  if (n == 1) return a[0] % m;
  if (n == 2) {
    unsigned __int128 x = static_cast<unsigned __int128>(a[0]) * a[3] % m;
    unsigned __int128 y = static_cast<unsigned __int128>(a[1]) * a[2] % m;
    return static_cast<std::uint64_t>((x + m - y) % m);
  }
  std::uint64_t det = 0;
  std::vector<std::uint64_t> minor((n - 1) * (n - 1));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t w = 0;
    for (std::size_t i = 1; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j != c) minor[w++] = a[i * n + j];
      }
    }
    auto term = static_cast<std::uint64_t>(static_cast<unsigned __int128>(a[c]) *
                                           det_mod(minor, n - 1, m) % m);
    det = (c % 2 == 0) ? (det + term) % m : (det + m - term) % m;
  }
  return det;
}

}  // namespace

// ---------------------------------------------------------------- IntMatrix

IntMatrix::IntMatrix(std::size_t n) : n_(n), a_(n * n, Integer(0)) {}

IntMatrix::IntMatrix(std::size_t n, std::vector<Integer> entries)
    : n_(n), a_(std::move(entries)) {
  if (n == 0 || a_.size() != n * n) {
    throw InvalidArgument("matrix of dimension " + std::to_string(n) + " needs " +
                          std::to_string(n * n) + " entries");
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::parse(std::string_view text) {
  std::vector<std::vector<Integer>> rows;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view row = text.substr(start, end - start);
    std::vector<Integer> entries;
    std::size_t s = 0;
    while (s <= row.size()) {
      std::size_t e = row.find(',', s);
      if (e == std::string_view::npos) e = row.size();
      std::string cell(row.substr(s, e - s));
      cell.erase(std::remove_if(cell.begin(), cell.end(), ::isspace), cell.end());
      entries.push_back(parse_integer(cell));
      s = e + 1;
    }
    rows.push_back(std::move(entries));
    start = end + 1;
  }
  std::size_t n = rows.size();
  std::vector<Integer> flat;
  for (auto& r : rows) {
    if (r.size() != n) {
      throw InvalidArgument("matrix '" + std::string(text) + "' is not square");
    }
    for (auto& x : r) flat.push_back(std::move(x));
  }
  return IntMatrix(n, std::move(flat));
}

Integer IntMatrix::determinant() const {
  if (n_ == 0) return 1;
  std::vector<Integer> m = a_;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n_; ++k) {
    if (m[k * n_ + k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n_ && m[swap * n_ + k] == 0) ++swap;
      if (swap == n_) return 0;
      for (std::size_t j = 0; j < n_; ++j) std::swap(m[k * n_ + j], m[swap * n_ + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n_; ++i) {
      for (std::size_t j = k + 1; j < n_; ++j) {
        Integer v = m[i * n_ + j] * m[k * n_ + k] - m[i * n_ + k] * m[k * n_ + j];
        mpz_divexact(m[i * n_ + j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k * n_ + k];
  }
  return sign * m[n_ * n_ - 1];
}

bool IntMatrix::is_identity() const { return *this == identity(n_); }

std::string IntMatrix::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < n_; ++i) {
    if (i) out += ';';
    for (std::size_t j = 0; j < n_; ++j) {
      if (j) out += ',';
      out += (*this)(i, j).get_str();
    }
  }
  return out;
}

// ------------------------------------------------------------------ orders

Integer gl_order(unsigned n, std::uint64_t q) {
  if (n < 1) throw InvalidArgument("dimension must be >= 1");
  if (prime_power_decompose(q).first == 0) {
    throw InvalidPrimePower(std::to_string(q) + " is not a prime power");
  }
  Integer qn = ipow(q, n);
  Integer order = 1;
  for (unsigned l = 0; l < n; ++l) order *= qn - ipow(q, l);
  return order;
}

Integer sl_order(unsigned n, std::uint64_t q) {
  Integer gl = gl_order(n, q);
  Integer out;
  mpz_divexact_ui(out.get_mpz_t(), gl.get_mpz_t(), q - 1);
  return out;
}

Integer brute_force_order(unsigned n, std::uint64_t p, bool det_one, unsigned k) {
  require_prime(p);
  if (n < 1 || k < 1) throw InvalidArgument("dimension and power must be >= 1");
  Integer modulus_z = ipow(p, k);
  Integer space = ipow(modulus_z, static_cast<unsigned long>(n) * n);
  if (space > 100000000) {
    throw InvalidArgument("enumeration of " + space.get_str() + " matrices exceeds 1e8");
  }
  const std::uint64_t m = modulus_z.get_ui();
  std::vector<std::uint64_t> entries(static_cast<std::size_t>(n) * n, 0);
  std::uint64_t count = 0;
  while (true) {
    std::uint64_t det = det_mod(entries, n, m);
    if (det_one ? det == 1 % m : det % p != 0) ++count;
    std::size_t i = 0;
    while (i < entries.size() && ++entries[i] == m) entries[i++] = 0;
    if (i == entries.size()) break;
  }
  return Integer(count);
}

Integer order_mod_pk(unsigned n, std::uint64_t p, unsigned k, bool det_one) {
  require_prime(p);
  if (k < 1) throw InvalidArgument("power k must be >= 1");
  unsigned long per_level = static_cast<unsigned long>(n) * n - (det_one ? 1 : 0);
  Integer base = det_one ? sl_order(n, p) : gl_order(n, p);
  return ipow(p, per_level * (k - 1)) * base;
}

IndexTower sl_prime_tower(unsigned n, std::size_t J) {
  if (n < 2) throw InvalidArgument("SL tower needs n >= 2");
  std::vector<Integer> d, l;
  Integer product = 1;
  for (std::uint64_t p : first_primes(J)) {
    Integer order = sl_order(n, p);
    product *= order;
    d.push_back(std::move(order));
    l.push_back(product);
  }
  return IndexTower("SL(" + std::to_string(n) + ",Z) mod p", std::move(d), std::move(l));
}

std::vector<OrderRatio> sl_order_ratios(unsigned n, std::span<const std::uint64_t> primes) {
  std::vector<OrderRatio> out;
  if (primes.size() < 2) return out;
  out.reserve(primes.size() - 1);
  Integer prev = sl_order(n, primes[0]);
  for (std::size_t i = 1; i < primes.size(); ++i) {
    Integer cur = sl_order(n, primes[i]);
    out.push_back({primes[i - 1], primes[i], make_rational(cur, prev)});
    prev = std::move(cur);
  }
  return out;
}

Integer sl_ratio_limit(unsigned n) { return ipow(2, static_cast<unsigned long>(n) * n - 1); }

bool gap_ratio_limit_check(unsigned n, std::size_t J, const Rational& slack,
                           const std::optional<Rational>& bound) {
  if (J < 10) throw InvalidArgument("gap ratio check needs J >= 10");
  if (slack < 0) throw InvalidArgument("slack must be non-negative");
  Rational limit = bound.value_or(Rational(sl_ratio_limit(n))) * (Rational(1) + slack);
  auto ps = first_primes(J);
  auto ratios = sl_order_ratios(n, ps);
  // ratios[i] compares p_{i+1} with p_{i+2}; keep j = i+1 >= J/2
  for (std::size_t i = J / 2 - 1; i < ratios.size(); ++i) {
    if (ratios[i].ratio > limit) return false;
  }
  return true;
}

MatrixDivisibility divisibility_matrix(const IntMatrix& gamma, std::uint64_t pmax) {
  if (gamma.determinant() != 1) {
    throw InvalidArgument("matrix " + gamma.to_string() + " is not in SL(n,Z)");
  }
  if (gamma.is_identity()) throw IdentityInput("the divisibility function is infinite at 1");
  Integer g = 0;
  for (std::size_t i = 0; i < gamma.dim(); ++i) {
    for (std::size_t j = 0; j < gamma.dim(); ++j) {
      Integer e = gamma(i, j) - (i == j ? 1 : 0);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_mpz_t());
    }
  }
  for (std::uint64_t p = 2; p <= pmax; ++p) {
    if (!is_prime(p)) continue;
    if (!mpz_divisible_ui_p(g.get_mpz_t(), p)) {
      return {p, sl_order(static_cast<unsigned>(gamma.dim()), p)};
    }
  }
  throw BoundExceeded("every prime <= " + std::to_string(pmax) + " divides gamma - I");
}

// ----------------------------------------------------------------- EllTable

EllTable::EllTable(unsigned n, std::vector<std::uint64_t> primes,
                   std::vector<std::vector<std::uint64_t>> ell, std::vector<Integer> O)
    : n_(n), primes_(std::move(primes)), ell_(std::move(ell)), O_(std::move(O)) {
  if (n_ < 1) throw InvalidTable("dimension must be >= 1");
  if (ell_.size() != primes_.size() || O_.size() != primes_.size()) {
    throw InvalidTable("primes, ell and O must have the same length");
  }
  const std::uint64_t step = static_cast<std::uint64_t>(n_) * n_;
  for (std::size_t j = 0; j < primes_.size(); ++j) {
    auto row = "row " + std::to_string(j + 1) + " (p = " + std::to_string(primes_[j]) + "): ";
    if (!is_prime(primes_[j])) throw InvalidTable(row + "not a prime");
    if (j > 0 && primes_[j] <= primes_[j - 1]) throw InvalidTable(row + "primes must increase");
    const auto& r = ell_[j];
    if (r.empty()) throw InvalidTable(row + "empty");
    for (std::size_t k = 1; k < r.size(); ++k) {
      if (r[k] < r[k - 1]) throw InvalidTable(row + "decreases at k = " + std::to_string(k + 1));
      if (r[k] - r[k - 1] > step) {
        throw InvalidTable(row + "step at k = " + std::to_string(k + 1) + " exceeds n^2 = " +
                           std::to_string(step));
      }
    }
    if (r.size() >= 2 && r.back() == r.front()) {
      throw InvalidTable(row + "does not grow within depth " + std::to_string(r.size()));
    }
    if (O_[j] < 1 || O_[j] >= ipow(primes_[j], step)) {
      throw InvalidTable(row + "O = " + O_[j].get_str() + " outside [1, p^(n^2))");
    }
  }
}

std::size_t EllTable::depth(std::size_t j) const { return ell_.at(j - 1).size(); }
std::uint64_t EllTable::prime(std::size_t j) const { return primes_.at(j - 1); }
const Integer& EllTable::O(std::size_t j) const { return O_.at(j - 1); }
std::uint64_t EllTable::ell(std::size_t j, std::size_t k) const {
  return ell_.at(j - 1).at(k - 1);
}

namespace {

std::map<std::uint64_t, unsigned> factor_small(std::uint64_t n) {
  std::map<std::uint64_t, unsigned> f;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    while (n % q == 0) {
      ++f[q];
      n /= q;
    }
  }
  if (n > 1) ++f[n];
  return f;
}

}  // namespace

Integer multiplicative_order(const Integer& a, const Integer& m) {
  if (m < 2) throw InvalidArgument("modulus must be >= 2");
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (g != 1) throw CoprimalityViolation("gcd(" + a.get_str() + ", " + m.get_str() + ") != 1");

  // Carmichael lambda(m) in factored form.
  std::map<std::uint64_t, unsigned> lambda;
  auto merge = [&](std::uint64_t q, unsigned e) { lambda[q] = std::max(lambda[q], e); };
  Integer rest = m;
  for (std::uint64_t q = 2; rest > 1; ++q) {
    if (q > 10000000) throw InvalidArgument("modulus has a prime factor beyond 1e7");
    if (Integer(q) * q > rest) q = rest.get_ui();  // remaining cofactor is prime
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), q)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), q);
      ++e;
    }
    if (e == 0) continue;
    if (q == 2) {
      merge(2, e == 1 ? 0 : e == 2 ? 1 : e - 2);
    } else {
      if (e > 1) merge(q, e - 1);
      for (auto [f, c] : factor_small(q - 1)) merge(f, c);
    }
  }
  Integer order = 1;
  for (auto [q, e] : lambda) order *= ipow(q, e);
  Integer x;
  for (auto [q, e] : lambda) {
    for (unsigned i = 0; i < e; ++i) {
      Integer candidate = order / q;
      mpz_powm(x.get_mpz_t(), a.get_mpz_t(), candidate.get_mpz_t(), m.get_mpz_t());
      if (x != 1) break;
      order = candidate;
    }
  }
  return order;
}

EllTable mult_order_ell_table(std::uint64_t a, std::span<const std::uint64_t> primes,
                              std::size_t K) {
  if (a < 2) throw InvalidArgument("generator must be >= 2");
  if (K < 1) throw InvalidArgument("table depth must be >= 1");
  std::vector<std::vector<std::uint64_t>> ell;
  std::vector<Integer> O;
  for (std::uint64_t p : primes) {
    require_prime(p);
    if (a % p == 0) {
      throw CoprimalityViolation(std::to_string(p) + " divides " + std::to_string(a));
    }
    Integer order_p = multiplicative_order(Integer(a), Integer(p));
    Integer modulus = ipow(p, K);
    // u = a^ord_p(a) is 1 mod p; ord_{p^k}(a) = ord_p(a) * ord_{p^k}(u) and the
    // latter is p^e for the least e with v_p(u^(p^e) - 1) >= k.
    Integer w;
    mpz_powm(w.get_mpz_t(), Integer(a).get_mpz_t(), order_p.get_mpz_t(), modulus.get_mpz_t());
    std::vector<std::uint64_t> row(K);
    std::size_t k = 1;
    for (std::uint64_t e = 0; k <= K; ++e) {
      Integer diff = w - 1;
      std::uint64_t t = diff == 0 ? K : valuation(diff, Integer(p));
      while (k <= K && k <= t) row[k++ - 1] = e;
      Integer next;
      mpz_powm_ui(next.get_mpz_t(), w.get_mpz_t(), p, modulus.get_mpz_t());
      w = std::move(next);
    }
    ell.push_back(std::move(row));
    O.push_back(std::move(order_p));
  }
  return EllTable(1, {primes.begin(), primes.end()}, std::move(ell), std::move(O));
}

EllTable sl_ell_table(unsigned n, std::span<const std::uint64_t> primes, std::size_t K) {
  if (n < 2) throw InvalidArgument("SL table needs n >= 2");
  std::vector<std::vector<std::uint64_t>> ell;
  std::vector<Integer> O;
  const std::uint64_t step = static_cast<std::uint64_t>(n) * n - 1;
  for (std::uint64_t p : primes) {
    std::vector<std::uint64_t> row(K);
    for (std::size_t k = 1; k <= K; ++k) row[k - 1] = step * (k - 1);
    ell.push_back(std::move(row));
    O.push_back(sl_order(n, p));
  }
  return EllTable(n, {primes.begin(), primes.end()}, std::move(ell), std::move(O));
}

bool wieferich_test(std::uint64_t p, std::uint64_t a) {
  require_prime(p);
  Integer p2 = Integer(p) * p;
  Integer x;
  mpz_powm_ui(x.get_mpz_t(), Integer(a).get_mpz_t(), p - 1, p2.get_mpz_t());
  return x == 1;
}

// ---------------------------------------------------------- power selection

PowerSelectionParams::PowerSelectionParams(unsigned n, Integer N, Integer C, Rational delta,
                                           Rational epsilon)
    : n_(n), N_(std::move(N)), C_(std::move(C)), delta_(std::move(delta)),
      epsilon_(std::move(epsilon)) {
  if (n_ < 1) throw InvalidArgument("dimension must be >= 1");
  Integer fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(n_) * n_);
  if (N_ <= fact) throw InvalidArgument("N must exceed (n^2)! = " + fact.get_str());
  if (C_ <= 4) throw InvalidArgument("C must exceed 4");
  if (delta_ <= 0 || delta_ >= Rational(1, 2)) {
    throw InvalidArgument("delta must lie in (0, 1/2)");
  }
  if (epsilon_ <= 0 || epsilon_ >= delta_) {
    throw InvalidArgument("epsilon must lie in (0, delta)");
  }
}

std::vector<std::size_t> select_powers(const EllTable& table, const PowerSelectionParams& params,
                                       std::size_t J) {
  if (J < 1) throw InvalidArgument("need at least one level");
  if (table.n() != params.n()) throw InvalidArgument("table and parameters disagree on n");
  if (J > table.rows()) {
    throw TableExhausted("table has " + std::to_string(table.rows()) + " primes, " +
                         std::to_string(J) + " requested");
  }
  const Integer n2 = Integer(params.n()) * params.n();
  const Integer start = params.N() + params.C() * n2;

  std::vector<std::size_t> ks;
  std::size_t k1 = 0;
  for (std::size_t k = 1; k <= table.depth(1); ++k) {
    if (Integer(table.ell(1, k)) > start) {
      k1 = k;
      break;
    }
  }
  if (k1 == 0) {
    throw TableExhausted("row 1 never exceeds N + C n^2 = " + start.get_str() + " within depth " +
                         std::to_string(table.depth(1)));
  }
  ks.push_back(k1);

  for (std::size_t j = 1; j < J; ++j) {
    Integer ceiling = Integer(table.ell(j, ks.back())) + params.C() * n2;
    std::size_t row = j + 1;
    std::size_t last_below = 0;  // largest i with ell(row, i) <= ceiling
    for (std::size_t i = 1; i <= table.depth(row); ++i) {
      if (Integer(table.ell(row, i)) <= ceiling) last_below = i;
      else break;
    }
    if (last_below == 0) {
      if (Integer(table.ell(row, 1)) <= ceiling + n2) {
        ks.push_back(1);
        continue;
      }
      throw WindowUnrealizable("row " + std::to_string(row) + " starts above " +
                               Integer(ceiling + n2).get_str());
    }
    if (last_below == table.depth(row)) {
      throw TableExhausted("row " + std::to_string(row) + " stays <= " + ceiling.get_str() +
                           " through depth " + std::to_string(table.depth(row)));
    }
    ks.push_back(last_below + 1);
  }
  return ks;
}

WindowCheck verify_power_windows(const EllTable& table, const PowerSelectionParams& params,
                                 std::span<const std::size_t> ks) {
  WindowCheck out;
  auto fail = [&](std::string msg) {
    out.ok = false;
    out.failures.push_back(std::move(msg));
  };
  const Integer n2 = Integer(params.n() * params.n());
  std::vector<Integer> chosen;
  for (std::size_t j = 1; j <= ks.size(); ++j) {
    if (j > table.rows() || ks[j - 1] < 1 || ks[j - 1] > table.depth(j)) {
      fail("k_" + std::to_string(j) + " is outside the table");
      return out;
    }
    chosen.emplace_back(table.ell(j, ks[j - 1]));
  }
  for (std::size_t j = 1; j <= chosen.size(); ++j) {
    Integer floor_j = params.N() + params.C() * Integer(j) * n2;
    if (!(chosen[j - 1] > floor_j)) {
      fail("l_" + std::to_string(j) + " = " + chosen[j - 1].get_str() + " <= N + C j n^2 = " +
           floor_j.get_str());
    }
    if (j < chosen.size()) {
      Integer lo = chosen[j - 1] + params.C() * n2;
      Integer hi = chosen[j - 1] + (params.C() + 1) * n2;
      if (!(lo < chosen[j] && chosen[j] <= hi)) {
        fail("l_" + std::to_string(j + 1) + " = " + chosen[j].get_str() + " outside (" +
             lo.get_str() + ", " + hi.get_str() + "]");
      }
    }
  }
  return out;
}

std::size_t power_j0(const EllTable& table, const PowerSelectionParams& params) {
  Rational d = 1;
  auto ps = table.primes();
  for (std::size_t i = 1; i < ps.size(); ++i) {
    d = std::max(d, make_rational(Integer(ps[i]), Integer(ps[i - 1])));
  }
  const Rational n2 = Rational(Integer(params.n()) * params.n());
  const Rational& delta = params.delta();
  const Rational& eps = params.epsilon();
  const Rational C = Rational(params.C());
  const Rational N = Rational(params.N());
  const unsigned long ea = eps.get_num().get_ui();
  const unsigned long eb = eps.get_den().get_ui();
  Integer d_num_pow = ipow(d.get_num(), eb);
  Integer d_den_pow = ipow(d.get_den(), eb);
  for (std::size_t j = 1; j <= ps.size(); ++j) {
    Rational margin = (delta - eps) * (N + C * Rational(Integer(j)) * n2) -
                      (Rational(1) + eps) * (C + 2) * n2;
    // p^eps > d  <=>  p^ea * den^eb > num^eb
    bool prime_ok = ipow(ps[j - 1], ea) * d_den_pow > d_num_pow;
    if (margin > 1 && prime_ok) return j;
  }
  return ps.size() + 1;
}

IndexTower power_tower(const EllTable& table, std::span<const std::size_t> ks,
                       LatticeModel model, std::string name) {
  std::vector<Integer> d, l;
  Integer acc = 1;
  for (std::size_t j = 1; j <= ks.size(); ++j) {
    Integer index = table.O(j) * ipow(table.prime(j), table.ell(j, ks[j - 1]));
    if (model == LatticeModel::CongruenceProduct) {
      acc *= index;
    } else {
      mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), index.get_mpz_t());
    }
    d.push_back(std::move(index));
    l.push_back(acc);
  }
  return IndexTower(std::move(name), std::move(d), std::move(l));
}

}  // namespace resavg::linear
