#include "resavg/rational.hpp"

#include <cctype>
#include <cstdlib>

#include "resavg/errors.hpp"

namespace resavg {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

bool try_parse_integer(std::string_view text, Integer& out) {
  std::size_t i = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) i = 1;
  if (i == text.size()) return false;
  for (std::size_t k = i; k < text.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(text[k]))) return false;
  }
  std::string digits(text.substr(text[0] == '+' ? 1 : 0));
  return out.set_str(digits, 10) == 0;
}

Integer parse_integer(std::string_view text) {
  Integer v;
  if (!try_parse_integer(text, v)) {
    throw InvalidArgument("malformed integer '" + std::string(text) + "'");
  }
  return v;
}

Rational parse_rational(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    return make_rational(parse_integer(text.substr(0, slash)),
                         parse_integer(text.substr(slash + 1)));
  }
  // decimal with optional fraction and exponent
  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    Integer ex = parse_integer(text.substr(e + 1));
    if (!ex.fits_slong_p()) throw InvalidArgument("exponent out of range");
    exponent = ex.get_si();
    mantissa = text.substr(0, e);
  }
  std::string digits;
  long frac_len = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    std::string_view frac = mantissa.substr(dot + 1);
    if (frac.find_first_of("+-") != std::string_view::npos) {
      throw InvalidArgument("malformed number '" + std::string(text) + "'");
    }
    digits = std::string(mantissa.substr(0, dot)) + std::string(frac);
    frac_len = static_cast<long>(frac.size());
    if (digits.empty() || digits == "-" || digits == "+") {
      throw InvalidArgument("malformed number '" + std::string(text) + "'");
    }
  } else {
    digits = std::string(mantissa);
  }
  Integer num = parse_integer(digits);
  long shift = exponent - frac_len;
  if (shift >= 0) return Rational(num * pow10(static_cast<unsigned long>(shift)));
  return make_rational(num, pow10(static_cast<unsigned long>(-shift)));
}

std::string to_string(const Integer& value) { return value.get_str(10); }

std::string to_fraction_string(const Rational& value) {
  return value.get_num().get_str(10) + "/" + value.get_den().get_str(10);
}

Integer pow10(unsigned long k) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, k);
  return r;
}

namespace {

Rational pow10_signed(long e) {
  if (e >= 0) return Rational(pow10(static_cast<unsigned long>(e)));
  return Rational(Integer(1), pow10(static_cast<unsigned long>(-e)));
}

std::string trim_fraction(std::string s) {
  if (s.find('.') == std::string::npos) return s;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace

std::string to_decimal(const Rational& value, int digits) {
  if (digits < 1) throw InvalidArgument("digits must be >= 1");
  if (value == 0) return "0";
  Rational a = abs(value);

  long e = static_cast<long>(mpz_sizeinbase(a.get_num_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(a.get_den_mpz_t(), 10));
  while (a >= pow10_signed(e + 1)) ++e;
  while (a < pow10_signed(e)) --e;

  Rational scaled = a * pow10_signed(digits - 1 - e);
  Integer q = scaled.get_num() / scaled.get_den();
  Rational rem = scaled - Rational(q);
  const Rational half(1, 2);
  if (rem > half || (rem == half && mpz_odd_p(q.get_mpz_t()))) ++q;
  if (q == pow10(static_cast<unsigned long>(digits))) {
    q /= 10;
    ++e;
  }
  std::string s = q.get_str(10);

  std::string out = value < 0 ? "-" : "";
  if (e >= -7 && e < 21) {
    if (e >= 0) {
      auto int_len = static_cast<std::size_t>(e + 1);
      if (s.size() <= int_len) {
        out += s + std::string(int_len - s.size(), '0');
      } else {
        out += trim_fraction(s.substr(0, int_len) + "." + s.substr(int_len));
      }
    } else {
      out += trim_fraction("0." + std::string(static_cast<std::size_t>(-e - 1), '0') + s);
    }
    return out;
  }
  std::string mant = trim_fraction(s.substr(0, 1) + "." + s.substr(1));
  out += mant + (e < 0 ? "e-" : "e+") + std::to_string(std::labs(e));
  return out;
}

double to_double(const Rational& value) {
  // mpq get_d truncates but handles huge num/den without overflow
  return mpq_get_d(value.get_mpq_t());
}

unsigned long valuation(const Integer& n, const Integer& p) {
  if (n == 0) throw InvalidArgument("valuation of zero");
  if (p < 2) throw InvalidArgument("valuation base must be >= 2");
  Integer rest;
  return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

}  // namespace resavg
