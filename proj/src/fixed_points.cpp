#include "collatz/fixed_points.hpp"

#include <functional>

#include "collatz/collatz_core.hpp"
#include "collatz/operators.hpp"

namespace collatz {
namespace {

std::int64_t power_of_three(std::uint64_t k) {
  std::int64_t v = 1;
  for (std::uint64_t i = 0; i < k; ++i) v *= 3;
  return v;
}

}  // namespace

SparseSeries lacunary_g(const Coefficient& lambda, Degree n) {
  SparseSeries out(n);
  Coefficient weight = lambda.is_exact() ? Coefficient(1) : Coefficient(std::complex<double>(1.0, 0.0));
  for (std::int64_t e = 1; e <= n; e *= 2) {
    out.add_term(e, weight);
    weight *= lambda;
    if (e > n / 2) break;
  }
  return out;
}

SparseSeries build_f_m(const Coefficient& lambda, std::int64_t m, Degree n) {
  if (m < 1) throw std::invalid_argument("build_f_m: m must be positive");
  if (n == kPolynomial) throw std::invalid_argument("build_f_m: an infinite series needs a finite watermark");
  return compose_power(lacunary_g(lambda, n / m), m).truncated(n);
}

SparseSeries build_h_m(const Coefficient& lambda, std::int64_t m, Degree n) {
  return build_f_m(lambda, 6 * m + 4, n) - build_f_m(lambda, 2 * m + 1, n);
}

SparseSeries trajectory_candidate(std::int64_t m, std::uint64_t k, Degree n) {
  SparseSeries x = build_f_m(Coefficient(1), m, n);
  BigInt v(static_cast<long>(m));
  for (std::uint64_t i = 1; i <= k; ++i) {
    v = collatz_step(v);
    if (sgn(v) >= 0 && v <= n) x.add_term(v.get_si(), Coefficient(1));
  }
  return x;
}

SparseSeries build_psi_subset(std::int64_t l, std::int64_t m, std::uint64_t k, Degree n) {
  if (l < 0 || m < 1) throw std::invalid_argument("build_psi_subset: need l >= 0, m >= 1");
  SparseSeries out(n);
  if (l > n) return out;
  const std::int64_t budget = (n - l) / m;  // sum(S) <= budget
  // Choose bit positions in increasing order; `sum` is the running subset sum.
  std::function<void(int, std::uint64_t, std::int64_t)> choose = [&](int from, std::uint64_t left, std::int64_t sum) {
    if (left == 0) {
      out.add_term(l + m * sum, Coefficient(1));
      return;
    }
    for (int p = from; p < 62; ++p) {
      const std::int64_t bit = std::int64_t{1} << p;
      if (bit > budget - sum) break;
      choose(p + 1, left - 1, sum + bit);
    }
  };
  choose(0, k, 0);
  return out;
}

std::string to_string(Fp2Variant v) { return v == Fp2Variant::PrintedForm ? "PRINTED_FORM" : "DERIVED_FORM"; }

std::uint64_t fp2_terms(Degree n) {
  std::uint64_t m = 0;
  for (std::int64_t p = 3; p <= n; p *= 3) ++m;
  return m;
}

SparseSeries build_fp2(Fp2Variant variant, Degree n) {
  if (n < 3) throw std::invalid_argument("build_fp2: N must be >= 3");
  const std::uint64_t big_m = fp2_terms(n);
  const Coefficient one(1);
  SparseSeries x(n);
  if (variant == Fp2Variant::PrintedForm) {
    const SparseSeries g = lacunary_g(one, n);
    const SparseSeries z_plus_z2{{1, one}, {2, one}};
    x += scale(multiply(g, g), Coefficient(Rational(1, 2)));
    x += SparseSeries::monomial(1);
    x -= g;
    for (std::uint64_t k = 1; k <= big_m; ++k) {
      const std::int64_t p3 = power_of_three(k);
      x += multiply(z_plus_z2, build_f_m(one, p3, n));
      x -= build_f_m(one, 1 + p3, n);
      x -= build_f_m(one, 2 + p3, n);
    }
  } else {
    x += build_psi_subset(0, 1, 2, n);
    for (std::uint64_t k = 1; k <= big_m; ++k) {
      const std::int64_t p3 = power_of_three(k);
      x += build_psi_subset(1, p3, 1, n);
      x += build_psi_subset(2, p3, 1, n);
      x -= build_f_m(one, 1 + p3, n);
      x -= build_f_m(one, 2 + p3, n);
    }
  }
  return x;
}

VerificationReport verify_fixed_point(const SparseSeries& x, const Coefficient& lambda,
                                      std::optional<std::int64_t> compare_below) {
  VerificationReport report;
  report.suite = "fixedpoint";
  ReportTimer timer(report);
  report.param("lambda", lambda.to_string());
  report.param("valid_degree", degree_to_string(x.valid_degree()));
  if (x.valid_degree() < 2) {
    throw WatermarkError("verify_fixed_point: watermark " + degree_to_string(x.valid_degree()) +
                         " does not survive one application of T");
  }
  const SparseSeries tx = apply_T(x);
  const SparseSeries lx = scale(x, lambda).truncated(tx.valid_degree());
  std::int64_t hi = tx.valid_degree();
  if (compare_below) hi = std::min<std::int64_t>(hi, *compare_below - 1);
  compare_series(report, lx, tx, 0, hi);
  if (!lambda.is_exact()) report.arithmetic = Arithmetic::Float;
  report.finalize();
  return report;
}

Fp2Analysis analyse_fp2(Degree n) {
  const std::int64_t tail = power_of_three(fp2_terms(n) + 1);
  Fp2Analysis out;
  out.printed = verify_fixed_point(build_fp2(Fp2Variant::PrintedForm, n), Coefficient(1), tail);
  out.derived = verify_fixed_point(build_fp2(Fp2Variant::DerivedForm, n), Coefficient(1), tail);
  out.printed.suite = "fp2/" + to_string(Fp2Variant::PrintedForm);
  out.derived.suite = "fp2/" + to_string(Fp2Variant::DerivedForm);
  if (out.printed.passed() != out.derived.passed()) {
    out.fixed_variant = out.printed.passed() ? Fp2Variant::PrintedForm : Fp2Variant::DerivedForm;
  }
  return out;
}

VerificationReport check_fp2(Degree n) {
  VerificationReport report;
  report.suite = "fp2";
  ReportTimer timer(report);
  report.param("N", degree_to_string(n));
  const std::uint64_t big_m = fp2_terms(n);
  report.param("M", std::to_string(big_m));
  report.param("tail_below", std::to_string(power_of_three(big_m + 1)));
  const Fp2Analysis a = analyse_fp2(n);
  report.degrees_checked = a.derived.degrees_checked;
  report.note(to_string(Fp2Variant::PrintedForm) + " residual " + a.printed.residual.to_string());
  report.note(to_string(Fp2Variant::DerivedForm) + " residual " + a.derived.residual.to_string());
  if (a.fixed_variant) {
    report.note("T-fixed variant: " + to_string(*a.fixed_variant));
    report.param("fixed_variant", to_string(*a.fixed_variant));
    report.status = Status::Pass;
  } else {
    report.fail({"variants", "exactly one zero residual",
                 std::string(a.printed.passed() ? "both" : "neither") + " zero"});
    report.residual = a.printed.residual < a.derived.residual ? a.printed.residual : a.derived.residual;
  }
  return report;
}

VerificationReport check_eigen_families(std::int64_t m_max, const std::vector<Coefficient>& lambdas, Degree n) {
  VerificationReport report;
  report.suite = "eigenfamilies";
  ReportTimer timer(report);
  report.param("m_max", std::to_string(m_max));
  report.param("N", degree_to_string(n));
  std::string lambda_list;
  for (const auto& l : lambdas) lambda_list += (lambda_list.empty() ? "" : ";") + l.to_string();
  report.param("lambdas", lambda_list);
  for (const auto& lambda : lambdas) {
    for (std::int64_t m = 1; m <= m_max; ++m) {
      const SparseSeries f = build_f_m(lambda, m, n);
      const SparseSeries tf = apply_T(f);
      SparseSeries expected = scale(f, lambda).truncated(tf.valid_degree());
      expected.add_term(collatz_step(m), Coefficient(1));
      compare_series(report, expected, tf);

      const SparseSeries h = build_h_m(lambda, m, n);
      const SparseSeries th = apply_T(h);
      compare_series(report, scale(h, lambda).truncated(th.valid_degree()), th);
    }
  }
  report.finalize();
  return report;
}

VerificationReport check_trajectory_candidate(std::int64_t m, std::uint64_t k, Degree n) {
  VerificationReport report;
  report.suite = "trajectory";
  ReportTimer timer(report);
  report.param("m", std::to_string(m));
  report.param("K", std::to_string(k));
  report.param("N", degree_to_string(n));
  const SparseSeries x = trajectory_candidate(m, k, n);
  const SparseSeries tx = apply_T(x);
  const SparseSeries residual = tx - x;
  SparseSeries expected(residual.valid_degree());
  const BigInt end = collatz_iterate(BigInt(static_cast<long>(m)), k + 1);
  if (end <= residual.valid_degree()) expected.add_term(end.get_si(), Coefficient(1));
  report.note("expected residual exponent T^{K+1}(m) = " + end.get_str());
  compare_series(report, expected, residual);
  report.finalize();
  return report;
}

std::vector<Real> hm_bergman_partial_sums(const Coefficient& lambda, std::int64_t m, std::uint64_t p_max) {
  std::vector<Real> sums;
  for (std::uint64_t p = 0; p <= p_max; ++p) {
    const Degree n = (6 * m + 4) * (std::int64_t{1} << p);
    sums.push_back(bergman_norm_sq(build_h_m(lambda, m, n), 2).factor);
  }
  return sums;
}

}  // namespace collatz
