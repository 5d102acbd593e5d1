#pragma once

// The pushforward on 1-periodic functions of the circle variable phi, held
// as two-sided trigonometric polynomials sum c_n e_n with e_n = exp(2 pi i n phi).
// T acts on frequencies: e_n -> e_{T(n)} for n in Z.

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <random>

#include "collatz/report.hpp"

namespace collatz {

class TrigPoly {
 public:
  using Terms = std::map<std::int64_t, std::complex<double>>;

  TrigPoly() = default;
  TrigPoly(std::initializer_list<std::pair<std::int64_t, std::complex<double>>> terms);

  static TrigPoly basis(std::int64_t frequency, std::complex<double> c = 1.0);

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  /// max |frequency|, 0 when empty.
  std::int64_t band_limit() const;
  std::complex<double> coeff(std::int64_t frequency) const;
  /// Exact zeros are dropped.
  void add_term(std::int64_t frequency, std::complex<double> c);

  std::complex<double> operator()(double phi) const;

  TrigPoly& operator+=(const TrigPoly& other);
  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend bool operator==(const TrigPoly& a, const TrigPoly& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

TrigPoly circle_apply_T(const TrigPoly& f);
/// Keeps even frequencies and halves them.
TrigPoly circle_apply_L(const TrigPoly& f);
/// e_n -> e_{3n+1}.
TrigPoly circle_apply_B(const TrigPoly& f);

using CircleFunction = std::function<std::complex<double>(double)>;

/// Direct evaluation of
///   (Tg)(phi) = [g(phi/2) + g((phi+1)/2)]/2 + e^{pi i phi}/2 [g(3phi/2) - g((3phi+1)/2)].
std::complex<double> pointwise_T(const CircleFunction& g, double phi);

/// Mean over the uniform grid of size m.
std::complex<double> grid_mean(const CircleFunction& g, std::size_t m);

inline constexpr double kCircleTolerance = 1e-10;

/// Frequency-0 coefficients of f and T f agree exactly, and the grid means
/// of f and T f (size m, a power of two >= 4 * band limit) agree within tol.
VerificationReport check_mean_invariance(const TrigPoly& f, std::size_t m, double tol = kCircleTolerance);

/// Grid means of g and of the pointwise formula applied to g agree within tol.
VerificationReport check_mean_invariance(const CircleFunction& g, std::size_t m, double tol = kCircleTolerance);

/// max_j |(T f)(phi_j) - pointwise_T(f, phi_j)| over `angles` uniform angles.
VerificationReport check_pointwise_agreement(const TrigPoly& f, std::size_t angles = 256,
                                             double tol = kCircleTolerance);

/// L((I + B) f) = T f frequencywise (exact on the stored doubles).
VerificationReport check_circle_factorization(const TrigPoly& f);

/// The frequency-0 coefficient of B f vanishes.
VerificationReport check_b_mean_zero(const TrigPoly& f);

/// `count` distinct frequencies in [-k, k] with coefficients uniform in the
/// unit square.
TrigPoly random_trig_poly(std::mt19937_64& rng, std::int64_t k, std::size_t count);

}  // namespace collatz
