#pragma once

// Identity checks for the single-variable operators and for the integer map.

#include <cstdint>
#include <random>
#include <vector>

#include "collatz/report.hpp"
#include "collatz/series.hpp"

namespace collatz {

/// Exact polynomial of degree <= `degree` with small complex-rational
/// coefficients; each exponent is present with probability `density`.
SparseSeries random_exact_polynomial(std::mt19937_64& rng, std::int64_t degree, double density = 0.5);

/// <F g, f> = <g, T f> exactly for `count` random pairs.
VerificationReport check_adjoint(std::size_t count, std::int64_t degree, std::uint64_t seed);

/// |f|^2 <= |F f|^2 <= 2|f|^2 for `count` random polynomials, with equality
/// on the left for support avoiding 2 mod 3 and on the right for support in
/// 2 mod 3.
VerificationReport check_expansive(std::size_t count, std::int64_t degree, std::uint64_t seed);

/// T(z^{2k+1} - z^{6k+4}) = 0 (raw and modulo span{1, z, z^2}) and
/// T z^{2k} = z^k for 0 <= k <= k_max.
VerificationReport check_kernel(std::int64_t k_max);

/// T = L(I + B) on `count` random inputs and on monomials up to `degree`,
/// and T(Sinv f) = f on random inputs.
VerificationReport check_factorization(std::size_t count, std::int64_t degree, std::uint64_t seed);

/// Bergman quotient norm of Sinv^n(z^k) equals pi/(2^n k + 1).
VerificationReport check_right_inverse_decay(std::int64_t k_max, std::uint64_t n_max);

/// 2^m T^m(n) <= 3^m (n + 1) for 0 <= n <= n_max, 0 <= m <= m_max.
VerificationReport check_growth_bound(std::int64_t n_max, std::uint64_t m_max);

/// Split amplitudes of T(z^a) satisfy |c1|^2 + |c2|^2 = 1 within tol for
/// every real a in `alphas`.
VerificationReport check_amplitudes(const std::vector<double>& alphas, double tol = 1e-12);

/// If F h = h exactly for the polynomial h, then h is constant.
VerificationReport check_f_fixed_constant(std::size_t count, std::int64_t degree, std::uint64_t seed);

}  // namespace collatz
