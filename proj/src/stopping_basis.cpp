#include "collatz/stopping_basis.hpp"

#include <map>
#include <stdexcept>

#include "collatz/operators.hpp"

namespace collatz {
namespace {

std::shared_ptr<const StoppingTimeTable> resolved_table(Degree n, std::uint64_t cap) {
  if (n == kPolynomial) throw std::invalid_argument("stopping-time objects need a finite watermark");
  auto table = shared_stopping_table(n, cap);
  table->require_resolved(1, n);
  return table;
}

/// Pol_0 .. Pol_{k_max} at watermark N.
std::vector<SparseSeries> pol_basis(std::uint64_t k_max, Degree n, const StoppingTimeTable& table) {
  std::vector<SparseSeries> pols(k_max + 1, SparseSeries(n));
  for (std::int64_t i = 1; i <= n; ++i) {
    const std::uint64_t s = table.value(i);
    if (s <= k_max) pols[s].add_term(i, Coefficient(1));
  }
  return pols;
}

}  // namespace

PolBasisSlice build_pol_k(std::uint64_t k, Degree n, std::uint64_t cap) {
  auto table = resolved_table(n, cap);
  PolBasisSlice slice{k, SparseSeries(n)};
  for (std::int64_t i = 1; i <= n; ++i) {
    if (table->value(i) == k) slice.series.add_term(i, Coefficient(1));
  }
  return slice;
}

SparseSeries build_char(const CharParams& params, Degree n, std::uint64_t cap) {
  if (params.l < 1 || params.k < 0) throw std::invalid_argument("build_char: need l >= 1, k >= 0");
  if (params.beta <= 0 || params.beta > 1) throw std::invalid_argument("build_char: beta must lie in (0, 1]");
  if (n == kPolynomial) throw std::invalid_argument("build_char: needs a finite watermark");

  // Largest m whose term is inside the watermark.
  const std::int64_t m_max = params.reduced ? n : (n >= params.k ? (n - params.k) / params.l : -1);
  SparseSeries out(n);
  if (m_max < 0) return out;
  const std::int64_t top = params.l * m_max + params.k;
  auto table = shared_stopping_table(top, cap);

  std::vector<std::int64_t> unresolved;
  for (std::int64_t m = 0; m <= m_max; ++m) {
    if (!table->resolved(params.l * m + params.k)) unresolved.push_back(params.l * m + params.k);
  }
  if (!unresolved.empty()) throw UnresolvedError(std::move(unresolved), cap);

  std::map<std::uint64_t, Coefficient> lambda_powers;
  auto lambda_pow = [&](std::uint64_t s) -> const Coefficient& {
    auto it = lambda_powers.find(s);
    if (it == lambda_powers.end()) it = lambda_powers.emplace(s, params.lambda.pow(s)).first;
    return it->second;
  };

  Coefficient beta_pow(1);
  const Coefficient beta(params.beta);
  for (std::int64_t m = 0; m <= m_max; ++m) {
    const std::int64_t index = params.l * m + params.k;
    const Coefficient& weight = lambda_pow(table->value(index));
    if (params.reduced) {
      out.add_term(m, weight);
    } else {
      out.add_term(index, weight * beta_pow);
      beta_pow *= beta;
    }
  }
  return out;
}

VerificationReport check_matrix_representation(std::uint64_t k_max, Degree n, std::uint64_t cap) {
  VerificationReport report;
  report.suite = "polbasis";
  ReportTimer timer(report);
  report.param("k_max", std::to_string(k_max));
  report.param("N", degree_to_string(n));
  auto table = resolved_table(n, cap);
  const auto pols = pol_basis(k_max + 1, n, *table);
  for (std::uint64_t k = 0; k <= k_max; ++k) {
    const SparseSeries image = apply_F(pols[k]);
    SparseSeries expected = pols[k + 1].truncated(image.valid_degree());
    if (k == 1) expected += pols[0];
    VerificationReport row;
    compare_series(row, expected, image);
    if (!row.residual.is_zero()) report.note("row " + std::to_string(k) + " mismatch");
    report.absorb(row);
  }
  report.finalize();
  return report;
}

VerificationReport check_grading(std::uint64_t k_max, Degree n, std::uint64_t cap) {
  VerificationReport report;
  report.suite = "grading";
  ReportTimer timer(report);
  report.param("k_max", std::to_string(k_max));
  report.param("N", degree_to_string(n));
  auto table = resolved_table(n, cap);
  const auto pols = pol_basis(k_max, n, *table);
  SparseSeries cumulative(n);
  for (std::uint64_t big_k = 0; big_k <= k_max; ++big_k) {
    cumulative += pols[big_k];
    SparseSeries indicator(n);
    for (std::int64_t i = 1; i <= n; ++i) {
      if (table->value(i) <= big_k) indicator.add_term(i, Coefficient(1));
    }
    compare_series(report, indicator, cumulative);
  }
  report.finalize();
  return report;
}

VerificationReport check_pullback_iteration(std::uint64_t n_max, Degree n, IterationForm form, std::uint64_t cap) {
  VerificationReport report;
  report.suite = form == IterationForm::Literal ? "iteration/literal" : "iteration/shifted";
  ReportTimer timer(report);
  report.param("n_max", std::to_string(n_max));
  report.param("N", degree_to_string(n));
  report.param("form", form == IterationForm::Literal ? "sum_{l<n} Pol_l" : "sum_{l<=n+1} Pol_l");
  auto table = resolved_table(n, cap);
  const auto pols = pol_basis(n_max + 2, n, *table);

  SparseSeries x{{1, Coefficient(1)}, {2, Coefficient(1)}};  // exact polynomial z + z^2
  for (std::uint64_t it = 0; it <= n_max; ++it) {
    if (it > 0) x = apply_F(x);
    SparseSeries expected(n);
    const std::uint64_t count = form == IterationForm::Literal ? it : it + 2;
    for (std::uint64_t l = 0; l < count; ++l) expected += pols[l];
    VerificationReport step;
    compare_series(step, expected, x.truncated(n));
    if (!step.residual.is_zero()) {
      for (auto& w : step.witnesses) w.location = "n=" + std::to_string(it) + " " + w.location;
    }
    report.absorb(step);
  }
  report.finalize();
  return report;
}

VerificationReport check_functional_equation(const Coefficient& lambda, Degree n, std::uint64_t cap) {
  if (lambda.is_zero()) throw std::domain_error("check_functional_equation: lambda must be nonzero");
  VerificationReport report;
  report.suite = "funceq";
  ReportTimer timer(report);
  report.param("lambda", lambda.to_string());
  report.param("N", degree_to_string(n));
  CharParams params;
  params.lambda = lambda;
  params.reduced = true;
  SparseSeries h = build_char(params, n, cap);
  h.add_term(0, Coefficient(-1));
  const SparseSeries lhs = apply_F(h);
  SparseSeries rhs = scale(h, Coefficient(1) / lambda).truncated(lhs.valid_degree());
  rhs.add_term(1, lambda - Coefficient(1) / lambda);
  compare_series(report, rhs, lhs);
  if (!lambda.is_exact()) report.arithmetic = Arithmetic::Float;
  report.finalize();
  return report;
}

Rational q_bound(const Rational& q) { return Rational((2 - q) * q / (1 - 2 * q)); }

VerificationReport check_q_inequality(const Rational& q, Degree n, std::uint64_t cap) {
  if (q <= 0 || q >= Rational(1, 2)) throw std::invalid_argument("check_q_inequality: q must lie in (0, 1/2)");
  VerificationReport report;
  report.suite = "inequality";
  ReportTimer timer(report);
  report.param("q", rational_to_string(q));
  report.param("N", degree_to_string(n));
  auto table = resolved_table(n, cap);
  const Rational bound = q_bound(q);
  report.param("bound", rational_to_string(bound));

  // Sum with the common denominator b^K where q = a/b and K = max sigma.
  const auto hist = table->histogram(2, n);
  const std::size_t big_k = hist.empty() ? 0 : hist.size() - 1;
  const mpz_class a = q.get_num();
  const mpz_class b = q.get_den();
  std::vector<mpz_class> numerators(big_k + 1);
  for (std::size_t k = 0; k <= big_k; ++k) {
    mpz_class ak, bk;
    mpz_pow_ui(ak.get_mpz_t(), a.get_mpz_t(), k);
    mpz_pow_ui(bk.get_mpz_t(), b.get_mpz_t(), big_k - k);
    numerators[k] = ak * bk;
  }
  mpz_class denominator;
  mpz_pow_ui(denominator.get_mpz_t(), b.get_mpz_t(), big_k);

  mpz_class running = 0;
  mpz_class previous = 0;
  std::int64_t next_checkpoint = 2;
  std::size_t checkpoints = 0;
  Rational last(0);
  for (std::int64_t i = 2; i <= n; ++i) {
    running += numerators[table->value(i)];
    if (i == next_checkpoint || i == n) {
      Rational partial(running, denominator);
      partial.canonicalize();
      ++checkpoints;
      if (running < previous) report.fail({"N=" + std::to_string(i), "nondecreasing", "decreased"});
      if (partial > bound) {
        report.fail({"N=" + std::to_string(i), "<= " + rational_to_string(bound), partial.get_str()});
      }
      previous = running;
      last = partial;
      next_checkpoint *= 2;
    }
  }
  report.cover({2, n});
  report.param("partial_sum", std::to_string(last.get_d()));
  report.param("bound_decimal", std::to_string(bound.get_d()));
  report.note("checkpoints: " + std::to_string(checkpoints) + " (powers of two and N)");
  if (report.status != Status::Fail) report.status = Status::Pass;
  return report;
}

}  // namespace collatz
