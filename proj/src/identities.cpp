#include "collatz/identities.hpp"

#include <cmath>

#include "collatz/collatz_core.hpp"
#include "collatz/operators.hpp"

namespace collatz {
namespace {

Coefficient random_coefficient(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<unsigned long> den(1, 7);
  Rational re(num(rng), den(rng));
  Rational im(num(rng), den(rng));
  re.canonicalize();
  im.canonicalize();
  return Coefficient(re, im);
}

// Random polynomial whose exponents all satisfy keep(e).
template <typename Keep>
SparseSeries random_supported(std::mt19937_64& rng, std::int64_t degree, Keep keep) {
  SparseSeries f;
  std::bernoulli_distribution coin(0.5);
  for (std::int64_t e = 0; e <= degree; ++e) {
    if (keep(e) && coin(rng)) f.add_term(e, random_coefficient(rng));
  }
  return f;
}

}  // namespace

SparseSeries random_exact_polynomial(std::mt19937_64& rng, std::int64_t degree, double density) {
  SparseSeries f;
  std::bernoulli_distribution coin(density);
  for (std::int64_t e = 0; e <= degree; ++e) {
    if (coin(rng)) f.add_term(e, random_coefficient(rng));
  }
  return f;
}

VerificationReport check_adjoint(std::size_t count, std::int64_t degree, std::uint64_t seed) {
  VerificationReport report;
  report.suite = "adjoint";
  ReportTimer timer(report);
  report.param("count", std::to_string(count));
  report.param("degree", std::to_string(degree));
  report.param("seed", std::to_string(seed));
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const SparseSeries f = random_exact_polynomial(rng, degree);
    const SparseSeries g = random_exact_polynomial(rng, degree);
    const Coefficient lhs = hardy_inner(apply_F(g), f);
    const Coefficient rhs = hardy_inner(g, apply_T(f));
    const Coefficient diff = lhs - rhs;
    if (!diff.is_zero()) {
      if (report.residual < diff.magnitude_proxy()) report.residual = diff.magnitude_proxy();
      report.fail({"pair " + std::to_string(i), rhs.to_string(), lhs.to_string()});
    }
  }
  report.cover({0, degree});
  report.finalize();
  return report;
}

VerificationReport check_expansive(std::size_t count, std::int64_t degree, std::uint64_t seed) {
  VerificationReport report;
  report.suite = "expansive";
  ReportTimer timer(report);
  report.param("count", std::to_string(count));
  report.param("degree", std::to_string(degree));
  report.param("seed", std::to_string(seed));
  std::mt19937_64 rng(seed);
  const Real two(Rational(2));
  for (std::size_t i = 0; i < count; ++i) {
    const SparseSeries f = random_exact_polynomial(rng, degree);
    const Real nf = hardy_norm_sq(f);
    const Real nff = hardy_norm_sq(apply_F(f));
    if (nff < nf || nff > two * nf) {
      report.fail({"case " + std::to_string(i), "[" + nf.to_string() + ", " + (two * nf).to_string() + "]",
                   nff.to_string()});
    }
  }
  // Equality families.
  for (std::size_t i = 0; i < 10; ++i) {
    const SparseSeries lo = random_supported(rng, degree, [](std::int64_t e) { return e % 3 != 2; });
    const SparseSeries hi = random_supported(rng, degree, [](std::int64_t e) { return e % 3 == 2; });
    const Real nlo = hardy_norm_sq(lo);
    const Real nhi = hardy_norm_sq(hi);
    if (!(hardy_norm_sq(apply_F(lo)) == nlo)) {
      report.fail({"left equality " + std::to_string(i), nlo.to_string(), hardy_norm_sq(apply_F(lo)).to_string()});
    }
    if (!(hardy_norm_sq(apply_F(hi)) == two * nhi)) {
      report.fail({"right equality " + std::to_string(i), (two * nhi).to_string(),
                   hardy_norm_sq(apply_F(hi)).to_string()});
    }
  }
  const SparseSeries z2 = SparseSeries::monomial(2);
  report.note("left equality iff support avoids 2 mod 3; z^2 (an even power) has |Fz^2|^2 = " +
              hardy_norm_sq(apply_F(z2)).to_string() + " = 2|z^2|^2");
  report.cover({0, degree});
  if (report.status != Status::Fail) report.status = Status::Pass;
  return report;
}

VerificationReport check_kernel(std::int64_t k_max) {
  VerificationReport report;
  report.suite = "kernel";
  ReportTimer timer(report);
  report.param("k_max", std::to_string(k_max));
  std::int64_t nonzero_mod_x = 0;
  for (std::int64_t k = 0; k <= k_max; ++k) {
    SparseSeries f = SparseSeries::monomial(2 * k + 1);
    f.add_term(6 * k + 4, Coefficient(-1));
    const SparseSeries raw = apply_T(f);
    const SparseSeries quotient = apply_T(f, true);
    if (!raw.empty()) report.fail({"k=" + std::to_string(k), "0", "nonzero"});
    if (!quotient.empty()) ++nonzero_mod_x;
    const SparseSeries image = apply_T(SparseSeries::monomial(2 * k));
    if (!(image == SparseSeries::monomial(k))) {
      report.fail({"T z^" + std::to_string(2 * k), "z^" + std::to_string(k), "other"});
    }
  }
  if (nonzero_mod_x > 0) report.fail({"quotient", "0", std::to_string(nonzero_mod_x) + " nonzero"});
  report.note("kernel checked raw and modulo span{1, z, z^2}; surjectivity T z^{2k} = z^k checked");
  report.cover({0, 6 * k_max + 4});
  if (report.status != Status::Fail) report.status = Status::Pass;
  return report;
}

VerificationReport check_factorization(std::size_t count, std::int64_t degree, std::uint64_t seed) {
  VerificationReport report;
  report.suite = "factorization";
  ReportTimer timer(report);
  report.param("count", std::to_string(count));
  report.param("degree", std::to_string(degree));
  report.param("seed", std::to_string(seed));
  std::mt19937_64 rng(seed);
  auto l_i_plus_b = [](const SparseSeries& f) { return apply_L(f + apply_B(f)); };
  for (std::size_t i = 0; i < count; ++i) {
    const SparseSeries f = random_exact_polynomial(rng, degree);
    compare_series(report, apply_T(f), l_i_plus_b(f));
    compare_series(report, f, apply_T(apply_S_inv(f)));
  }
  for (std::int64_t e = 0; e <= degree; ++e) {
    const SparseSeries m = SparseSeries::monomial(e);
    compare_series(report, apply_T(m), l_i_plus_b(m));
  }
  report.note("T = L(I+B) and T Sinv = Id");
  report.finalize();
  return report;
}

VerificationReport check_right_inverse_decay(std::int64_t k_max, std::uint64_t n_max) {
  VerificationReport report;
  report.suite = "sinv-decay";
  ReportTimer timer(report);
  report.param("k_max", std::to_string(k_max));
  report.param("n_max", std::to_string(n_max));
  for (std::int64_t k = 3; k <= k_max; ++k) {
    SparseSeries x = SparseSeries::monomial(k);
    for (std::uint64_t n = 0; n <= n_max; ++n) {
      const Rational expected(1, static_cast<unsigned long>((std::int64_t{1} << n) * k + 1));
      const Real actual = bergman_norm_sq(x, 2).factor;
      if (!(actual == Real(expected))) {
        report.fail({"n=" + std::to_string(n) + ",k=" + std::to_string(k), rational_to_string(expected) + " pi",
                     actual.to_string() + " pi"});
      }
      x = apply_S_inv(x);
    }
  }
  if (report.status != Status::Fail) report.status = Status::Pass;
  return report;
}

VerificationReport check_growth_bound(std::int64_t n_max, std::uint64_t m_max) {
  VerificationReport report;
  report.suite = "growth";
  ReportTimer timer(report);
  report.param("n_max", std::to_string(n_max));
  report.param("m_max", std::to_string(m_max));
  double worst = 0.0;
  for (std::int64_t n = 0; n <= n_max; ++n) {
    BigInt v(static_cast<long>(n));
    BigInt two_pow(1);
    BigInt three_pow(1);
    const BigInt base(static_cast<long>(n + 1));
    for (std::uint64_t m = 0; m <= m_max; ++m) {
      if (m > 0) {
        v = collatz_step(v);
        two_pow *= 2;
        three_pow *= 3;
      }
      const BigInt lhs = two_pow * v;
      const BigInt rhs = three_pow * base;
      worst = std::max(worst, mpq_class(lhs, rhs).get_d());
      if (lhs > rhs) {
        report.fail({"n=" + std::to_string(n) + ",m=" + std::to_string(m), "<= (3/2)^m (n+1)", v.get_str()});
      }
    }
  }
  report.param("max_ratio", std::to_string(worst));
  if (report.status != Status::Fail) report.status = Status::Pass;
  return report;
}

VerificationReport check_amplitudes(const std::vector<double>& alphas, double tol) {
  VerificationReport report;
  report.suite = "amplitudes";
  ReportTimer timer(report);
  report.arithmetic = Arithmetic::Float;
  report.tolerance = tol;
  report.param("alphas", std::to_string(alphas.size()));
  double worst = 0.0;
  GenMonomialOptions no_prune;
  no_prune.prune_threshold = 0.0;
  for (double a : alphas) {
    const GenMonomialSum out = apply_T_genmonomial(GenMonomialSum::monomial(a), no_prune);
    double sum = 0.0;
    for (const auto& t : out.terms) sum += std::norm(t.amplitude);
    const double gap = std::abs(sum - 1.0);
    worst = std::max(worst, gap);
    if (gap > tol) report.fail({"alpha=" + std::to_string(a), "1", std::to_string(sum)});
  }
  report.residual = worst;
  report.finalize();
  return report;
}

VerificationReport check_f_fixed_constant(std::size_t count, std::int64_t degree, std::uint64_t seed) {
  VerificationReport report;
  report.suite = "f-fixed";
  ReportTimer timer(report);
  report.param("count", std::to_string(count));
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    SparseSeries h = random_exact_polynomial(rng, i % 4 == 0 ? 0 : degree);
    const bool fixed = apply_F(h) == h;
    const bool constant = h.max_exponent() <= 0;
    if (fixed != constant) {
      report.fail({"case " + std::to_string(i), constant ? "fixed" : "not fixed", fixed ? "fixed" : "not fixed"});
    }
  }
  if (report.status != Status::Fail) report.status = Status::Pass;
  return report;
}

}  // namespace collatz
