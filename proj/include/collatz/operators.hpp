#pragma once

// Coefficient-index transforms realising the Collatz operators on sparse
// series:
//
//   T    : sum a_n z^n  ->  sum a_n z^{T(n)}        (pushforward, colliding targets sum)
//   F    : sum a_n z^n  ->  sum a_{T(n)} z^n        (pullback, the adjoint of T in H^2)
//   L    : coefficient at n  <-  coefficient at 2n
//   B    : z^n -> z^{3n+1}
//   Sinv : z^n -> z^{2n}                           (right inverse of T)
//
// Watermark laws: T and L map N to floor(N/2), F maps N to floor((2N-1)/3),
// B maps N to 3N+1, Sinv maps N to 2N+1.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "collatz/series.hpp"

namespace collatz {

enum class OperatorTag { T, F, L, B, SInv };

struct OperatorKind {
  OperatorTag tag = OperatorTag::T;
  /// Project exponents <= 2 to zero after application (the quotient by
  /// span{1, z, z^2}). Only meaningful for T.
  bool quotient = false;
};

std::string to_string(OperatorTag tag);
/// Accepts "T", "F", "L", "B", "Sinv" (case-insensitive).
OperatorTag parse_operator_tag(const std::string& name);

/// Output watermark of one application.
Degree output_degree(OperatorTag tag, Degree input);

SparseSeries apply_T(const SparseSeries& f, bool quotient = false);
SparseSeries apply_F(const SparseSeries& g);
SparseSeries apply_L(const SparseSeries& f);
SparseSeries apply_B(const SparseSeries& f);
SparseSeries apply_S_inv(const SparseSeries& g);

SparseSeries apply(const OperatorKind& kind, const SparseSeries& f);

/// n-fold application. When requested_degree is given, throws WatermarkError
/// up front if the composed watermark law cannot reach it.
SparseSeries operator_power(const OperatorKind& kind, std::uint64_t n, const SparseSeries& f,
                            std::optional<Degree> requested_degree = std::nullopt);

/// One term c z^alpha with complex exponent. `weight` is the incoherent
/// branch mass: the product of |split amplitude|^2 along the branches that
/// produced the term, summed on merges.
struct GenTerm {
  std::complex<double> amplitude;
  std::complex<double> exponent;
  double weight = 1.0;
};

struct GenMonomialSum {
  std::vector<GenTerm> terms;

  static GenMonomialSum monomial(std::complex<double> exponent, std::complex<double> amplitude = 1.0);

  /// sum |amplitude|^2 over (merged) terms.
  double coherent_l2() const;
  /// sum of branch weights; conserved exactly by splits for real exponents.
  double branch_l2() const;
  /// (min Re alpha, max Re alpha); (0, 0) when empty.
  std::pair<double, double> exponent_range() const;
};

struct GenMonomialOptions {
  double prune_threshold = 1e-15;
  double merge_tolerance = 1e-12;
};

/// T(z^a) = z^{a/2}(1+e^{a pi i})/2 + z^{(3a+1)/2}(1-e^{a pi i})/2, applied
/// termwise; tiny amplitudes are pruned and near-equal exponents merged.
GenMonomialSum apply_T_genmonomial(const GenMonomialSum& x, const GenMonomialOptions& options = {});

}  // namespace collatz
