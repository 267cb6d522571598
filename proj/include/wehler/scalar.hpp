#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace wehler {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;
using BigFloat = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

inline constexpr unsigned kDefaultMantissaBits = 256;

// Process-wide BigFloat working precision. Boost keeps the default precision
// in a global, so a context is set once per computation, before any worker
// threads are spawned, and restored on scope exit.
class PrecisionContext {
 public:
  explicit PrecisionContext(unsigned mantissa_bits);
  ~PrecisionContext();
  PrecisionContext(const PrecisionContext&) = delete;
  PrecisionContext& operator=(const PrecisionContext&) = delete;

  // Mantissa bits of a freshly constructed BigFloat under this context.
  unsigned bits() const { return bits_; }

 private:
  unsigned saved_digits10_;
  unsigned bits_;
};

// Mantissa bits a BigFloat constructed right now would carry.
unsigned current_mantissa_bits();

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool is_exact = true;
  static constexpr std::string_view name = "exact";
  static Rational parse(std::string_view text);
  static std::string format(const Rational& x);
  static Rational from_integer(const Integer& k) { return Rational(k); }
};

template <>
struct ScalarTraits<BigFloat> {
  static constexpr bool is_exact = false;
  static constexpr std::string_view name = "float";
  static BigFloat parse(std::string_view text);
  static std::string format(const BigFloat& x);
  static BigFloat from_integer(const Integer& k) { return BigFloat(k); }
};

template <class S>
concept LatticeScalar = requires { ScalarTraits<S>::is_exact; };

// Conversions into the float world for logs, square roots and reporting.
inline BigFloat to_big(const Rational& x) { return BigFloat(x); }
inline BigFloat to_big(const BigFloat& x) { return x; }
inline BigFloat to_big(const Integer& x) { return BigFloat(x); }

double to_double(const Rational& x);
double to_double(const BigFloat& x);
double to_double(const Integer& x);

// Natural log of a positive value, evaluated at the current precision.
// Works for rationals whose magnitude overflows a double.
BigFloat log_of(const Rational& x);
BigFloat log_of(const BigFloat& x);
BigFloat log_of(const Integer& x);

Integer floor_to_integer(const Rational& x);
Integer floor_to_integer(const BigFloat& x);
Integer ceil_to_integer(const Rational& x);
Integer ceil_to_integer(const BigFloat& x);

// Nearest integer, ties away from zero.
Integer round_to_integer(const BigFloat& x);

bool is_integral(const Rational& x);

// Exact dyadic 2^(-q) in either backend.
template <class S>
S pow2_neg(unsigned q);
template <>
Rational pow2_neg<Rational>(unsigned q);
template <>
BigFloat pow2_neg<BigFloat>(unsigned q);

std::string integer_string(const Integer& k);

}  // namespace wehler
