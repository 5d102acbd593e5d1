#pragma once

// Explicit eigenvector and fixed-point families of the pushforward operator T,
// plus residual certification at truncation.
//
//   g(lambda, z)   = sum_p lambda^p z^{2^p}
//   f_m(lambda, z) = g(lambda, z^m)             T f_m = lambda f_m + z^{T(m)}
//   h_m            = f_{6m+4} - f_{2m+1}         T h_m = lambda h_m

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "collatz/coefficient.hpp"
#include "collatz/report.hpp"
#include "collatz/series.hpp"

namespace collatz {

struct LacunaryParams {
  Coefficient lambda;
  std::int64_t m = 1;
  Degree valid_degree = 0;
};

/// sum_{2^p <= N} lambda^p z^{2^p}, watermark N.
SparseSeries lacunary_g(const Coefficient& lambda, Degree n);
SparseSeries build_f_m(const Coefficient& lambda, std::int64_t m, Degree n);
SparseSeries build_h_m(const Coefficient& lambda, std::int64_t m, Degree n);
inline SparseSeries build_f_m(const LacunaryParams& p) { return build_f_m(p.lambda, p.m, p.valid_degree); }
inline SparseSeries build_h_m(const LacunaryParams& p) { return build_h_m(p.lambda, p.m, p.valid_degree); }

/// f_m(1, .) + sum_{k=1..K} z^{T^k(m)}, truncated to N. Then
/// T x - x = z^{T^{K+1}(m)} (when that exponent is inside the watermark).
SparseSeries trajectory_candidate(std::int64_t m, std::uint64_t k, Degree n);

/// Sum over k-element sets S of powers of two of z^{l + m sum(S)}, up to N.
/// k = 0 gives z^l.
SparseSeries build_psi_subset(std::int64_t l, std::int64_t m, std::uint64_t k, Degree n);

enum class Fp2Variant { PrintedForm, DerivedForm };
std::string to_string(Fp2Variant v);

/// Largest M with 3^M <= N (the k-sum truncation for FP2).
std::uint64_t fp2_terms(Degree n);

/// PrintedForm: g^2/2 + z - g + sum_{k=1..M}[(z+z^2) g(z^{3^k}) - g(z^{1+3^k}) - g(z^{2+3^k})].
/// DerivedForm: Psi^2_{0,1} + sum_k (Psi^1_{1,3^k} + Psi^1_{2,3^k}) - sum_k (f_{1+3^k} + f_{2+3^k}).
SparseSeries build_fp2(Fp2Variant variant, Degree n);

/// Residual r = T x - lambda x on the output watermark (optionally only on
/// exponents < compare_below). Throws WatermarkError if the watermark of x
/// does not survive one application.
VerificationReport verify_fixed_point(const SparseSeries& x, const Coefficient& lambda,
                                      std::optional<std::int64_t> compare_below = std::nullopt);

struct Fp2Analysis {
  VerificationReport printed;
  VerificationReport derived;
  /// The variant with zero residual, when exactly one has it.
  std::optional<Fp2Variant> fixed_variant;
};

Fp2Analysis analyse_fp2(Degree n);

/// PASS iff exactly one FP2 variant is T-fixed below 3^{M+1}; names it.
VerificationReport check_fp2(Degree n);

/// T f_m - lambda f_m = z^{T(m)} and T h_m = lambda h_m on the watermark for
/// every m in [1, m_max] and every lambda.
VerificationReport check_eigen_families(std::int64_t m_max, const std::vector<Coefficient>& lambdas, Degree n);

/// T x - x = z^{T^{K+1}(m)} for the trajectory candidate.
VerificationReport check_trajectory_candidate(std::int64_t m, std::uint64_t k, Degree n);

/// Partial sums over p <= p_max of the quotient Bergman norm (cutoff 2) of
/// h_m(lambda), as multiples of pi.
std::vector<Real> hm_bergman_partial_sums(const Coefficient& lambda, std::int64_t m, std::uint64_t p_max);

}  // namespace collatz
