#include "resavg/tower.hpp"

#include <algorithm>
#include <cmath>

#include "resavg/errors.hpp"

namespace resavg {

namespace {

const Integer kOne(1);

void require_level(const IndexTower& tower, std::size_t j) {
  if (j < 1 || j > tower.size()) {
    throw InvalidArgument("level " + std::to_string(j) + " outside 1.." +
                          std::to_string(tower.size()));
  }
}

void require_prefix(const IndexTower& tower, std::size_t J) {
  if (J > tower.size()) {
    throw InvalidArgument("requested " + std::to_string(J) + " levels but tower has " +
                          std::to_string(tower.size()));
  }
}

// exact quotient or InconsistentTower
Integer exact_div(const Integer& num, const Integer& den, std::size_t j, const char* what) {
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) {
    throw InconsistentTower("level " + std::to_string(j) + ": " + what + " = " +
                            num.get_str() + "/" + den.get_str() + " is not an integer");
  }
  Integer q;
  mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

}  // namespace

IndexTower::IndexTower(std::string name, std::vector<Integer> d, std::vector<Integer> l)
    : name_(std::move(name)), d_(std::move(d)), l_(std::move(l)) {
  if (d_.size() != l_.size()) {
    throw InconsistentTower("d has " + std::to_string(d_.size()) + " entries but l has " +
                            std::to_string(l_.size()));
  }
  for (std::size_t i = 0; i < d_.size(); ++i) {
    if (d_[i] < 1 || l_[i] < 1) {
      throw InconsistentTower("level " + std::to_string(i + 1) + ": indices must be positive");
    }
  }
}

const Integer& IndexTower::index(std::size_t j) const {
  require_level(*this, j);
  return d_[j - 1];
}

const Integer& IndexTower::intersection_index(std::size_t j) const {
  if (j == 0) return kOne;
  require_level(*this, j);
  return l_[j - 1];
}

IndexTower IndexTower::prefix(std::size_t J) const {
  require_prefix(*this, J);
  return IndexTower(name_, {d_.begin(), d_.begin() + static_cast<std::ptrdiff_t>(J)},
                    {l_.begin(), l_.begin() + static_cast<std::ptrdiff_t>(J)});
}

TowerDiagnostics diagnose(const IndexTower& tower) {
  TowerDiagnostics out;
  for (std::size_t j = 1; j <= tower.size(); ++j) {
    const Integer& d = tower.index(j);
    const Integer& l = tower.intersection_index(j);
    const Integer& lp = tower.intersection_index(j - 1);
    auto at = "level " + std::to_string(j) + ": ";
    if (d < 2) out.violations.push_back(at + "index " + d.get_str() + " < 2");
    if (!mpz_divisible_p(l.get_mpz_t(), lp.get_mpz_t())) {
      out.violations.push_back(at + "l[j-1] = " + lp.get_str() + " does not divide l[j] = " +
                               l.get_str());
    }
    if (!mpz_divisible_p(l.get_mpz_t(), d.get_mpz_t())) {
      out.violations.push_back(at + "d[j] = " + d.get_str() + " does not divide l[j] = " +
                               l.get_str());
    }
    if (j > 1 && d < tower.index(j - 1)) {
      out.violations.push_back(at + "d decreases from " + tower.index(j - 1).get_str());
    }
  }
  return out;
}

void validate(const IndexTower& tower) {
  auto diag = diagnose(tower);
  if (!diag.ok()) throw InconsistentTower(diag.violations.front());
}

LevelDecomposition decompose(const IndexTower& tower, std::size_t j) {
  require_level(tower, j);
  const Integer& d = tower.index(j);
  const Integer& l = tower.intersection_index(j);
  const Integer& lp = tower.intersection_index(j - 1);
  LevelDecomposition out;
  out.s = exact_div(l, lp, j, "s = l[j]/l[j-1]");
  out.r = exact_div(Integer(d * lp), l, j, "r = d[j] l[j-1]/l[j]");
  out.t = exact_div(l, d, j, "t = l[j]/d[j]");
  return out;
}

Rational measure_term(const IndexTower& tower, std::size_t j) {
  auto [r, s, t] = decompose(tower, j);
  return make_rational(s - 1, r * s * t);
}

Rational ave_partial(const IndexTower& tower, std::size_t J) {
  require_prefix(tower, J);
  Rational sum = 0;
  for (std::size_t j = 1; j <= J; ++j) {
    auto lv = decompose(tower, j);
    sum += make_rational(lv.s - 1, lv.t);
  }
  return sum;
}

Rational ave_partial_product_form(const IndexTower& tower, std::size_t J) {
  require_prefix(tower, J);
  Rational sum = 0;
  Integer s_product = 1;
  for (std::size_t j = 1; j <= J; ++j) {
    auto lv = decompose(tower, j);
    sum += make_rational(lv.r * (lv.s - 1), s_product);
    s_product *= lv.s;
  }
  return sum;
}

std::vector<Rational> ave_partial_sums(const IndexTower& tower) {
  std::vector<Rational> out;
  out.reserve(tower.size());
  Rational sum = 0;
  for (std::size_t j = 1; j <= tower.size(); ++j) {
    auto lv = decompose(tower, j);
    sum += make_rational(lv.s - 1, lv.t);
    out.push_back(sum);
  }
  return out;
}

bool recursion_check(const IndexTower& tower) {
  Integer s_product = 1;
  std::vector<LevelDecomposition> levels;
  for (std::size_t j = 1; j <= tower.size(); ++j) levels.push_back(decompose(tower, j));
  for (std::size_t j = 1; j < tower.size(); ++j) {
    s_product *= levels[j - 1].s;
    const auto& next = levels[j];
    if (next.t * next.r != s_product) return false;
  }
  return true;
}

Rational alpha(const IndexTower& tower, std::size_t j) {
  if (j < 1 || j + 1 > tower.size()) {
    throw InvalidArgument("alpha needs levels j and j+1; j = " + std::to_string(j));
  }
  auto cur = decompose(tower, j);
  auto next = decompose(tower, j + 1);
  if (cur.s == 1) {
    throw DegenerateLevel("s_" + std::to_string(j) + " = 1: level contributes no measure");
  }
  return make_rational(next.r * (next.s - 1), cur.r * cur.s * (cur.s - 1));
}

std::string to_string(GrowthClass g) {
  switch (g) {
    case GrowthClass::SubQuadratic: return "SubQuadratic";
    case GrowthClass::SuperQuadratic: return "SuperQuadratic";
    case GrowthClass::Indeterminate: return "Indeterminate";
  }
  return "Indeterminate";
}

Classification classify(const IndexTower& tower, std::size_t window) {
  if (window == 0) throw InvalidArgument("window must be positive");
  Classification out;
  std::vector<std::pair<std::size_t, Rational>> defined;
  for (std::size_t j = 1; j + 1 <= tower.size(); ++j) {
    if (decompose(tower, j).s == 1) {
      out.skipped_levels.push_back(j);
      continue;
    }
    defined.emplace_back(j, alpha(tower, j));
  }
  if (defined.size() < window) {
    throw InsufficientData("classification window " + std::to_string(window) + " but only " +
                           std::to_string(defined.size()) + " alpha values are defined");
  }
  out.window_alphas.assign(defined.end() - static_cast<std::ptrdiff_t>(window), defined.end());
  const Rational one = 1;
  bool all_below = std::all_of(out.window_alphas.begin(), out.window_alphas.end(),
                               [&](const auto& a) { return a.second < one; });
  bool all_above = std::all_of(out.window_alphas.begin(), out.window_alphas.end(),
                               [&](const auto& a) { return a.second > one; });
  out.growth = all_below   ? GrowthClass::SubQuadratic
               : all_above ? GrowthClass::SuperQuadratic
                           : GrowthClass::Indeterminate;
  return out;
}

bool is_prime_system(const IndexTower& tower) {
  Integer product = 1;
  for (std::size_t j = 1; j <= tower.size(); ++j) {
    product *= tower.index(j);
    if (tower.intersection_index(j) != product) return false;
  }
  return true;
}

bool is_nested(const IndexTower& tower) {
  for (std::size_t j = 1; j <= tower.size(); ++j) {
    if (tower.intersection_index(j) != tower.index(j)) return false;
  }
  return true;
}

bool below_power(const Integer& d_next, const Integer& d, const Rational& delta) {
  if (delta <= 0) throw InvalidArgument("delta must be positive");
  const Integer& a = delta.get_num();
  const Integer& b = delta.get_den();
  const Integer ab = a + b;
  if (b > 100000 || ab > 100000) {
    throw InvalidArgument("delta " + to_fraction_string(delta) +
                          " has too large a numerator/denominator for exact comparison");
  }
  // d_next < d^(1 + a/b)  <=>  d_next^b < d^(a+b)
  Integer lhs, rhs;
  mpz_pow_ui(lhs.get_mpz_t(), d_next.get_mpz_t(), b.get_ui());
  mpz_pow_ui(rhs.get_mpz_t(), d.get_mpz_t(), ab.get_ui());
  return lhs < rhs;
}

namespace {

bool linear_pair(const Integer& d, const Integer& next, const Rational& c) {
  return d < next && Rational(next) <= c * d;
}

template <class Pair>
std::optional<std::size_t> holds_from(const IndexTower& tower, Pair pair_ok) {
  std::size_t n = tower.size();
  if (n < 2) return 1;
  std::optional<std::size_t> from;
  for (std::size_t j = n - 1; j >= 1; --j) {
    if (!pair_ok(tower.index(j), tower.index(j + 1))) break;
    from = j;
  }
  return from;
}

}  // namespace

bool gap_check_linear(const IndexTower& tower, const Rational& c) {
  return gap_linear_holds_from(tower, c) == std::optional<std::size_t>(1);
}

bool gap_check_power(const IndexTower& tower, const Rational& delta) {
  return gap_power_holds_from(tower, delta) == std::optional<std::size_t>(1);
}

std::optional<std::size_t> gap_linear_holds_from(const IndexTower& tower, const Rational& c) {
  if (c <= 1) throw InvalidArgument("linear gap constant must exceed 1");
  return holds_from(tower, [&](const Integer& d, const Integer& next) {
    return linear_pair(d, next, c);
  });
}

std::optional<std::size_t> gap_power_holds_from(const IndexTower& tower, const Rational& delta) {
  if (delta <= 0) throw InvalidArgument("delta must be positive");
  return holds_from(tower, [&](const Integer& d, const Integer& next) {
    return d < next && below_power(next, d, delta);
  });
}

Rational measure_telescope(const IndexTower& tower, std::size_t J) {
  require_prefix(tower, J);
  Rational sum = 0;
  for (std::size_t j = 1; j <= J; ++j) sum += measure_term(tower, j);
  return sum;
}

double zeta_partial(std::span<const Integer> indices, double s, std::size_t J) {
  if (!(s > 0)) throw InvalidArgument("zeta exponent must be positive");
  if (J > indices.size()) {
    throw InvalidArgument("requested " + std::to_string(J) + " terms but only " +
                          std::to_string(indices.size()) + " indices given");
  }
  std::vector<Integer> sorted(indices.begin(), indices.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 1) throw InvalidArgument("zeta indices must be positive");
    if (i > 0 && sorted[i] == sorted[i - 1]) {
      throw InvalidArgument("zeta indices must be distinct; repeated " + sorted[i].get_str());
    }
  }
  long double sum = 0;
  for (std::size_t k = J; k-- > 0;) {
    long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, sorted[k].get_mpz_t());
    long double log_i = std::log(static_cast<long double>(mant)) +
                        static_cast<long double>(exp2) * std::log(2.0L);
    sum += std::exp(-static_cast<long double>(s) * log_i);
  }
  return static_cast<double>(sum);
}

}  // namespace resavg
