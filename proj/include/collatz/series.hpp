#pragma once

// Sparse truncated power series in one and two variables.
//
// Every series carries a watermark (valid_degree): coefficients at exponents
// <= valid_degree are authoritative, anything above is unknown and is never
// stored. The sentinel kPolynomial marks an exact polynomial (every absent
// coefficient is a genuine zero); all degree laws map it to itself.

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>

#include "collatz/coefficient.hpp"

namespace collatz {

using Degree = std::int64_t;
inline constexpr Degree kPolynomial = std::numeric_limits<Degree>::max();

/// Raised when a watermark is too small for the requested computation.
class WatermarkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string degree_to_string(Degree d);

class SparseSeries {
 public:
  using Terms = std::map<std::int64_t, Coefficient>;

  explicit SparseSeries(Degree valid_degree = kPolynomial);
  SparseSeries(std::initializer_list<std::pair<std::int64_t, Coefficient>> terms,
               Degree valid_degree = kPolynomial);

  static SparseSeries monomial(std::int64_t exponent, Coefficient c = Coefficient(1),
                               Degree valid_degree = kPolynomial);

  Degree valid_degree() const { return valid_degree_; }
  bool is_polynomial() const { return valid_degree_ == kPolynomial; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  /// Largest stored exponent, or -1 for the zero series.
  std::int64_t max_exponent() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }

  Coefficient coeff(std::int64_t exponent) const;
  /// Adds c at the exponent; exponents above the watermark are dropped and
  /// cancelled entries are erased.
  void add_term(std::int64_t exponent, const Coefficient& c);

  /// EXACT iff every stored coefficient is exact.
  Arithmetic mode() const;

  /// Restricts the watermark to min(valid_degree, n).
  SparseSeries truncated(Degree n) const;

  SparseSeries& operator+=(const SparseSeries& other);
  SparseSeries& operator-=(const SparseSeries& other);
  friend SparseSeries operator+(SparseSeries a, const SparseSeries& b) { return a += b; }
  friend SparseSeries operator-(SparseSeries a, const SparseSeries& b) { return a -= b; }
  SparseSeries operator-() const;

  /// Same watermark and identical stored coefficients.
  friend bool operator==(const SparseSeries& a, const SparseSeries& b);

 private:
  Terms terms_;
  Degree valid_degree_;
};

SparseSeries add(const SparseSeries& a, const SparseSeries& b);
SparseSeries scale(const SparseSeries& a, const Coefficient& c);
/// Cauchy product; watermark min(Na, Nb).
SparseSeries multiply(const SparseSeries& a, const SparseSeries& b);

/// f(z^m): exponent n -> m n, watermark m N + (m - 1).
SparseSeries compose_power(const SparseSeries& f, std::int64_t m);

SparseSeries even_part(const SparseSeries& f);
SparseSeries odd_part(const SparseSeries& f);

/// <f, g> = sum f_n conj(g_n). Throws WatermarkError when either watermark
/// lies below the other's highest stored exponent.
Coefficient hardy_inner(const SparseSeries& f, const SparseSeries& g);
Real hardy_norm_sq(const SparseSeries& f);

/// Bergman norm squared as a multiple of pi: the returned value r means r*pi.
struct PiMultiple {
  Real factor;
  double value() const;
};

/// sum |f_n|^2 pi/(n+1); with quotient_cutoff = c, exponents <= c are skipped.
PiMultiple bergman_norm_sq(const SparseSeries& f, std::optional<std::int64_t> quotient_cutoff = std::nullopt);

struct Evaluation {
  std::complex<double> value;
  std::optional<double> remainder_bound;
};

/// Partial sum at |z0| < 1; throws std::domain_error otherwise. With
/// with_remainder, also reports |z0|^(N+1)/(1-|z0|) * max|f_n|.
Evaluation evaluate(const SparseSeries& f, std::complex<double> z0, bool with_remainder = false);

/// Bivariate series in (z, w); authoritative on n <= valid_degree_z,
/// m <= valid_degree_w.
class BiSeries {
 public:
  using Key = std::pair<std::int64_t, std::int64_t>;
  using Terms = std::map<Key, Coefficient>;

  BiSeries(Degree valid_degree_z, Degree valid_degree_w);

  Degree valid_degree_z() const { return valid_degree_z_; }
  Degree valid_degree_w() const { return valid_degree_w_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  Coefficient coeff(std::int64_t n, std::int64_t m) const;
  void add_term(std::int64_t n, std::int64_t m, const Coefficient& c);

  /// Coefficient of w^m as a series in z.
  SparseSeries layer(std::int64_t m) const;
  /// Coefficient of z^n as a series in w.
  SparseSeries slice(std::int64_t n) const;

  friend bool operator==(const BiSeries& a, const BiSeries& b);

 private:
  Terms terms_;
  Degree valid_degree_z_;
  Degree valid_degree_w_;
};

}  // namespace collatz
