#pragma once

// Objects graded by the total stopping time sigma:
//
//   Pol_k(z)       = sum_{n >= 1, sigma(n) = k} z^n
//   g_{k,l}^{L,b}  = sum_m L^{sigma(lm+k)} b^m z^{lm+k}
//   g~_{k,l}^{L}   = sum_m L^{sigma(lm+k)} z^m          (reduced)
//
// and the identities the pullback F satisfies on them.

#include <cstdint>
#include <memory>
#include <vector>

#include "collatz/coefficient.hpp"
#include "collatz/collatz_core.hpp"
#include "collatz/report.hpp"
#include "collatz/series.hpp"

namespace collatz {

struct PolBasisSlice {
  std::uint64_t k = 0;
  SparseSeries series;
};

/// Indicator of {1 <= n <= N : sigma(n) = k}, watermark N. Throws
/// UnresolvedError if some sigma(n), n <= N, is unresolved under the cap.
PolBasisSlice build_pol_k(std::uint64_t k, Degree n, std::uint64_t cap = default_cap());

struct CharParams {
  std::int64_t k = 0;
  std::int64_t l = 1;
  Coefficient lambda = Coefficient(1);
  Rational beta = Rational(1);
  /// Emit sum_m lambda^{sigma(lm+k)} z^m (beta is not used).
  bool reduced = false;
};

/// Characteristic series up to watermark N, with 0^0 = 1. Throws
/// UnresolvedError when a needed sigma is unresolved.
SparseSeries build_char(const CharParams& params, Degree n, std::uint64_t cap = default_cap());

/// F Pol_k = Pol_{k+1} + [k = 1] Pol_0 for every k <= k_max, on the F output
/// watermark.
VerificationReport check_matrix_representation(std::uint64_t k_max, Degree n, std::uint64_t cap = default_cap());

/// Sum_{k <= K} Pol_k equals the indicator of {1 <= n <= N : sigma(n) <= K}
/// for every K <= k_max.
VerificationReport check_grading(std::uint64_t k_max, Degree n, std::uint64_t cap = default_cap());

enum class IterationForm {
  /// F^n(z + z^2) = sum_{l < n} Pol_l, as printed.
  Literal,
  /// F^n(z + z^2) = sum_{l <= n+1} Pol_l, as implied by the matrix rows.
  Shifted,
};

/// Checks F^n(z + z^2) against the chosen Pol-sum for 0 <= n <= n_max on
/// exponents <= N.
VerificationReport check_pullback_iteration(std::uint64_t n_max, Degree n, IterationForm form,
                                            std::uint64_t cap = default_cap());

/// F(g~ - 1) = (g~ - 1)/lambda + (lambda - 1/lambda) z with g~ = g~_{0,1}^lambda.
/// Throws std::domain_error for lambda = 0.
VerificationReport check_functional_equation(const Coefficient& lambda, Degree n, std::uint64_t cap = default_cap());

/// (2 - q) q / (1 - 2q).
Rational q_bound(const Rational& q);

/// Exact partial sums sum_{n=2}^{N'} q^{sigma(n)} at checkpoints N' <= N are
/// nondecreasing and bounded by q_bound(q). Throws std::invalid_argument
/// unless 0 < q < 1/2.
VerificationReport check_q_inequality(const Rational& q, Degree n, std::uint64_t cap = default_cap());

}  // namespace collatz
