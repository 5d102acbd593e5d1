#include "collatz/coefficient.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace collatz {
namespace {

bool is_valid_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

Rational abs_rational(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace

std::string to_string(Arithmetic mode) { return mode == Arithmetic::Exact ? "exact" : "float"; }

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_valid_integer(num) || !is_valid_integer(den) || den[0] == '-' || den[0] == '+') {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
  std::string n(num[0] == '+' ? num.substr(1) : num);
  mpz_class p(n, 10);
  mpz_class q(std::string(den), 10);
  if (q == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string rational_to_string(const Rational& q) { return q.get_str(10); }

double Real::to_double() const {
  if (is_exact()) return exact().get_d();
  return std::get<double>(value_);
}

bool Real::is_zero() const { return is_exact() ? exact() == 0 : std::get<double>(value_) == 0.0; }

std::string Real::to_string() const {
  if (is_exact()) return rational_to_string(exact());
  std::ostringstream os;
  os.precision(17);
  os << std::get<double>(value_);
  return os.str();
}

Real& Real::operator+=(const Real& other) {
  if (is_exact() && other.is_exact()) {
    value_ = Rational(exact() + other.exact());
  } else {
    value_ = to_double() + other.to_double();
  }
  return *this;
}

Real& Real::operator*=(const Real& other) {
  if (is_exact() && other.is_exact()) {
    value_ = Rational(exact() * other.exact());
  } else {
    value_ = to_double() * other.to_double();
  }
  return *this;
}

Real operator-(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) return Real(Rational(a.exact() - b.exact()));
  return Real(a.to_double() - b.to_double());
}

bool operator<(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() < b.exact();
  return a.to_double() < b.to_double();
}

bool operator==(const Real& a, const Real& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() == b.exact();
  return a.to_double() == b.to_double();
}

Arithmetic combine(Arithmetic a, Arithmetic b) {
  return (a == Arithmetic::Exact && b == Arithmetic::Exact) ? Arithmetic::Exact : Arithmetic::Float;
}

Coefficient Coefficient::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (c != ' ' && c != '*') s.push_back(c);
  }
  if (s.empty()) throw std::invalid_argument("empty coefficient");
  if (s.back() != 'i') return Coefficient(parse_rational(s));

  s.pop_back();
  // Split at the last sign that is not at position 0 and not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if (s[i] == '+' || s[i] == '-') {
      split = i;
      break;
    }
  }
  std::string re_text = split == std::string::npos ? "0" : s.substr(0, split);
  std::string im_text = split == std::string::npos ? s : s.substr(split);
  if (im_text.empty() || im_text == "+") im_text = "1";
  if (im_text == "-") im_text = "-1";
  return Coefficient(parse_rational(re_text), parse_rational(im_text));
}

std::complex<double> Coefficient::to_complex() const {
  if (is_exact()) return {exact().re.get_d(), exact().im.get_d()};
  return std::get<std::complex<double>>(value_);
}

bool Coefficient::is_zero() const {
  if (is_exact()) return exact().re == 0 && exact().im == 0;
  return std::get<std::complex<double>>(value_) == std::complex<double>(0.0, 0.0);
}

bool Coefficient::is_real() const {
  if (is_exact()) return exact().im == 0;
  return std::get<std::complex<double>>(value_).imag() == 0.0;
}

Coefficient Coefficient::conj() const {
  if (is_exact()) return Coefficient(exact().re, Rational(-exact().im));
  return Coefficient(std::conj(std::get<std::complex<double>>(value_)));
}

Real Coefficient::norm_sq() const {
  if (is_exact()) return Real(Rational(exact().re * exact().re + exact().im * exact().im));
  return Real(std::norm(std::get<std::complex<double>>(value_)));
}

Real Coefficient::magnitude_proxy() const {
  if (is_exact()) {
    Rational a = abs_rational(exact().re);
    Rational b = abs_rational(exact().im);
    return Real(a < b ? b : a);
  }
  return Real(std::abs(std::get<std::complex<double>>(value_)));
}

Coefficient Coefficient::pow(std::uint64_t k) const {
  Coefficient result(1);
  if (!is_exact()) result = Coefficient(std::complex<double>(1.0, 0.0));
  Coefficient base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

Coefficient& Coefficient::operator+=(const Coefficient& other) {
  if (is_exact() && other.is_exact()) {
    auto& a = std::get<ExactComplex>(value_);
    a.re += other.exact().re;
    a.im += other.exact().im;
  } else {
    value_ = to_complex() + other.to_complex();
  }
  return *this;
}

Coefficient& Coefficient::operator-=(const Coefficient& other) {
  if (is_exact() && other.is_exact()) {
    auto& a = std::get<ExactComplex>(value_);
    a.re -= other.exact().re;
    a.im -= other.exact().im;
  } else {
    value_ = to_complex() - other.to_complex();
  }
  return *this;
}

Coefficient& Coefficient::operator*=(const Coefficient& other) {
  if (is_exact() && other.is_exact()) {
    const auto& a = exact();
    const auto& b = other.exact();
    if (a.im == 0 && b.im == 0) {
      Rational re = a.re * b.re;
      value_ = ExactComplex{std::move(re), Rational(0)};
    } else {
      Rational re = a.re * b.re - a.im * b.im;
      Rational im = a.re * b.im + a.im * b.re;
      value_ = ExactComplex{std::move(re), std::move(im)};
    }
  } else {
    value_ = to_complex() * other.to_complex();
  }
  return *this;
}

Coefficient& Coefficient::operator/=(const Coefficient& other) {
  if (other.is_zero()) throw std::domain_error("coefficient division by zero");
  if (is_exact() && other.is_exact()) {
    const auto& a = exact();
    const auto& b = other.exact();
    Rational den = b.re * b.re + b.im * b.im;
    Rational re = (a.re * b.re + a.im * b.im) / den;
    Rational im = (a.im * b.re - a.re * b.im) / den;
    value_ = ExactComplex{std::move(re), std::move(im)};
  } else {
    value_ = to_complex() / other.to_complex();
  }
  return *this;
}

Coefficient Coefficient::operator-() const {
  if (is_exact()) return Coefficient(Rational(-exact().re), Rational(-exact().im));
  return Coefficient(-std::get<std::complex<double>>(value_));
}

bool operator==(const Coefficient& a, const Coefficient& b) {
  if (a.is_exact() && b.is_exact()) return a.exact().re == b.exact().re && a.exact().im == b.exact().im;
  return a.to_complex() == b.to_complex();
}

std::string Coefficient::to_string() const {
  if (is_exact()) {
    const auto& e = exact();
    if (e.im == 0) return rational_to_string(e.re);
    std::string im = rational_to_string(e.im);
    if (e.re == 0) return im + "i";
    return rational_to_string(e.re) + (e.im > 0 ? "+" : "") + im + "i";
  }
  std::ostringstream os;
  os.precision(17);
  os << to_complex();
  return os.str();
}

}  // namespace collatz
