#pragma once

// Coefficient field for every series in the library: exact complex rationals,
// or double-precision complex numbers. Mixing the two promotes to FLOAT.

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace collatz {

using Rational = mpq_class;

enum class Arithmetic { Exact, Float };

std::string to_string(Arithmetic mode);

/// Parses "p/q" or an integer into a canonical rational. Throws
/// std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when q = 1).
std::string rational_to_string(const Rational& q);

struct ExactComplex {
  Rational re;
  Rational im;
};

/// A real number that is either an exact rational or a double.
class Real {
 public:
  Real() : value_(Rational(0)) {}
  Real(Rational q) : value_(std::move(q)) {}  // NOLINT(google-explicit-constructor)
  Real(double d) : value_(d) {}               // NOLINT(google-explicit-constructor)

  bool is_exact() const { return std::holds_alternative<Rational>(value_); }
  const Rational& exact() const { return std::get<Rational>(value_); }
  double to_double() const;
  bool is_zero() const;
  std::string to_string() const;

  Real& operator+=(const Real& other);
  Real& operator*=(const Real& other);
  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator-(const Real& a, const Real& b);

  friend bool operator<(const Real& a, const Real& b);
  friend bool operator<=(const Real& a, const Real& b) { return !(b < a); }
  friend bool operator>(const Real& a, const Real& b) { return b < a; }
  friend bool operator>=(const Real& a, const Real& b) { return !(a < b); }
  friend bool operator==(const Real& a, const Real& b);

 private:
  std::variant<Rational, double> value_;
};

class Coefficient {
 public:
  Coefficient() : value_(ExactComplex{}) {}
  Coefficient(int v) : value_(ExactComplex{Rational(v), Rational(0)}) {}  // NOLINT
  Coefficient(long v) : value_(ExactComplex{Rational(v), Rational(0)}) {}  // NOLINT
  Coefficient(Rational re, Rational im = Rational(0))                     // NOLINT
      : value_(ExactComplex{std::move(re), std::move(im)}) {}
  Coefficient(std::complex<double> z) : value_(z) {}  // NOLINT
  Coefficient(double d) : value_(std::complex<double>(d, 0.0)) {}  // NOLINT

  /// Accepts "a", "a+bi", "a-bi", "bi", "i" with rational a, b ("p/q").
  static Coefficient parse(std::string_view text);

  Arithmetic mode() const { return std::holds_alternative<ExactComplex>(value_) ? Arithmetic::Exact : Arithmetic::Float; }
  bool is_exact() const { return mode() == Arithmetic::Exact; }
  const ExactComplex& exact() const { return std::get<ExactComplex>(value_); }
  std::complex<double> to_complex() const;
  bool is_zero() const;
  bool is_real() const;

  Coefficient conj() const;
  /// |c|^2, exact when the coefficient is exact.
  Real norm_sq() const;
  /// max(|Re c|, |Im c|) in EXACT mode, |c| in FLOAT mode. Zero iff c = 0.
  Real magnitude_proxy() const;
  /// c^k with c^0 = 1 for every c, including 0.
  Coefficient pow(std::uint64_t k) const;
  Coefficient to_float() const { return Coefficient(to_complex()); }

  Coefficient& operator+=(const Coefficient& other);
  Coefficient& operator-=(const Coefficient& other);
  Coefficient& operator*=(const Coefficient& other);
  /// Throws std::domain_error on division by zero.
  Coefficient& operator/=(const Coefficient& other);
  Coefficient operator-() const;

  friend Coefficient operator+(Coefficient a, const Coefficient& b) { return a += b; }
  friend Coefficient operator-(Coefficient a, const Coefficient& b) { return a -= b; }
  friend Coefficient operator*(Coefficient a, const Coefficient& b) { return a *= b; }
  friend Coefficient operator/(Coefficient a, const Coefficient& b) { return a /= b; }
  friend bool operator==(const Coefficient& a, const Coefficient& b);
  friend bool operator!=(const Coefficient& a, const Coefficient& b) { return !(a == b); }

  /// Human-readable: "3/2", "1/2+1/3i", or "(0.5,0.25)" for floats.
  std::string to_string() const;

 private:
  std::variant<ExactComplex, std::complex<double>> value_;
};

Arithmetic combine(Arithmetic a, Arithmetic b);

}  // namespace collatz
