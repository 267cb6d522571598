#include "wehler/scalar.hpp"

#include <cmath>
#include <limits>

#include "wehler/errors.hpp"

namespace wehler {

namespace {

unsigned bits_for_digits10(unsigned d) {
  BigFloat probe;
  probe.precision(d);
  return static_cast<unsigned>(mpfr_get_prec(probe.backend().data()));
}

Integer parse_integer(std::string_view s) {
  if (s.empty()) throw InvalidArgument("empty integer literal");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw InvalidArgument("bad integer literal '" + std::string(s) + "'");
  for (std::size_t k = i; k < s.size(); ++k)
    if (s[k] < '0' || s[k] > '9') throw InvalidArgument("bad integer literal '" + std::string(s) + "'");
  // Leading zeros would make gmp read the digits as octal.
  std::size_t nz = s.find_first_not_of('0', i);
  std::string body = nz == std::string_view::npos ? "0" : std::string(s.substr(nz));
  Integer v(body);
  return s[0] == '-' ? Integer(-v) : v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Decimal literal [sign] digits [. digits] [e|E [sign] digits] as an exact rational.
Rational parse_decimal(std::string_view s) {
  std::string_view mant = s;
  long long exp10 = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string_view::npos) {
    mant = s.substr(0, epos);
    std::string_view e = s.substr(epos + 1);
    Integer ev = parse_integer(e);
    if (abs(ev) > 100000) throw InvalidArgument("exponent out of range in '" + std::string(s) + "'");
    exp10 = ev.convert_to<long long>();
  }
  bool neg = false;
  if (!mant.empty() && (mant[0] == '-' || mant[0] == '+')) {
    neg = mant[0] == '-';
    mant.remove_prefix(1);
  }
  std::string digits;
  auto dot = mant.find('.');
  if (dot != std::string_view::npos) {
    digits = std::string(mant.substr(0, dot)) + std::string(mant.substr(dot + 1));
    exp10 -= static_cast<long long>(mant.size() - dot - 1);
  } else {
    digits = std::string(mant);
  }
  if (digits.empty()) throw InvalidArgument("bad numeric literal '" + std::string(s) + "'");
  Rational r(parse_integer(digits));
  Integer p = mp::pow(Integer(10), static_cast<unsigned>(exp10 < 0 ? -exp10 : exp10));
  r = exp10 < 0 ? Rational(r / Rational(p)) : Rational(r * Rational(p));
  return neg ? Rational(-r) : r;
}

}  // namespace

PrecisionContext::PrecisionContext(unsigned mantissa_bits) {
  if (mantissa_bits < 16) throw InvalidArgument("mantissa bits must be >= 16");
  saved_digits10_ = BigFloat::default_precision();
  // Boost sizes mpfr values from decimal digits; take the smallest digit count
  // whose mantissa is at least the requested width.
  unsigned d = static_cast<unsigned>(std::floor(mantissa_bits * 0.30102999566398120)) - 1;
  while (bits_for_digits10(d) < mantissa_bits) ++d;
  BigFloat::default_precision(d);
  bits_ = bits_for_digits10(d);
}

PrecisionContext::~PrecisionContext() { BigFloat::default_precision(saved_digits10_); }

unsigned current_mantissa_bits() { return bits_for_digits10(BigFloat::default_precision()); }

Rational ScalarTraits<Rational>::parse(std::string_view text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    Integer num = parse_integer(trim(s.substr(0, slash)));
    Integer den = parse_integer(trim(s.substr(slash + 1)));
    if (den == 0) throw InvalidArgument("zero denominator in '" + std::string(s) + "'");
    return Rational(num, den);
  }
  return parse_decimal(s);
}

std::string ScalarTraits<Rational>::format(const Rational& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

BigFloat ScalarTraits<BigFloat>::parse(std::string_view text) {
  // Exact parse first so that "1/3" and "0.1" round once.
  return BigFloat(ScalarTraits<Rational>::parse(text));
}

std::string ScalarTraits<BigFloat>::format(const BigFloat& x) {
  return x.str(0, std::ios_base::scientific);
}

double to_double(const Rational& x) { return x.convert_to<double>(); }
double to_double(const BigFloat& x) { return x.convert_to<double>(); }
double to_double(const Integer& x) { return x.convert_to<double>(); }

BigFloat log_of(const BigFloat& x) {
  if (x <= 0) throw InvalidArgument("log of nonpositive value");
  return log(x);
}

BigFloat log_of(const Rational& x) {
  if (x <= 0) throw InvalidArgument("log of nonpositive value");
  return log_of(numerator(x)) - log_of(denominator(x));
}

BigFloat log_of(const Integer& x) {
  if (x <= 0) throw InvalidArgument("log of nonpositive value");
  return log(BigFloat(x));
}

Integer floor_to_integer(const Rational& x) {
  Integer q, r;
  mp::divide_qr(numerator(x), denominator(x), q, r);
  if (r < 0) q -= 1;
  return q;
}

Integer ceil_to_integer(const Rational& x) { return -floor_to_integer(Rational(-x)); }

Integer floor_to_integer(const BigFloat& x) { return floor(x).convert_to<Integer>(); }

Integer ceil_to_integer(const BigFloat& x) { return ceil(x).convert_to<Integer>(); }

Integer round_to_integer(const BigFloat& x) { return round(x).convert_to<Integer>(); }

bool is_integral(const Rational& x) { return denominator(x) == 1; }

template <>
Rational pow2_neg<Rational>(unsigned q) {
  return Rational(Integer(1), Integer(1) << q);
}

template <>
BigFloat pow2_neg<BigFloat>(unsigned q) {
  return ldexp(BigFloat(1), -static_cast<int>(q));
}

std::string integer_string(const Integer& k) { return k.str(); }

}  // namespace wehler
