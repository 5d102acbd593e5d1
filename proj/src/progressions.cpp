#include "collatz/progressions.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

#include "collatz/operators.hpp"
#include "collatz/stopping_basis.hpp"
#include "collatz/fixed_points.hpp"

namespace collatz {
namespace {

// |c| exactly for real exact scalars, as a double otherwise.
Real abs_value(const Coefficient& c) {
  if (c.is_exact() && c.exact().im == 0) return Real(Rational(abs(c.exact().re)));
  return Real(std::abs(c.to_complex()));
}

std::int64_t l_of(const ProgressionTerm& t) { return t.is_g() ? t.as_g().l : t.as_psi().step; }

}  // namespace

ProgressionTerm ProgressionTerm::g(std::int64_t k, std::int64_t l, Coefficient lambda, Rational beta,
                                   Coefficient scalar) {
  if (l < 1 || k < 0) throw std::invalid_argument("G term needs k >= 0 and l >= 1");
  if (beta <= 0 || beta > 1) throw std::invalid_argument("G term needs beta in (0, 1]");
  ProgressionTerm t;
  t.scalar = std::move(scalar);
  t.symbol = GSymbol{k, l, std::move(lambda), std::move(beta)};
  return t;
}

ProgressionTerm ProgressionTerm::psi(std::int64_t l, std::int64_t m, std::uint64_t order, Coefficient scalar) {
  if (l < 0 || m < 1) throw std::invalid_argument("Psi term needs l >= 0 and m >= 1");
  ProgressionTerm t;
  t.scalar = std::move(scalar);
  t.symbol = PsiSymbol{l, m, order};
  return t;
}

std::string ProgressionTerm::key() const {
  std::ostringstream os;
  if (is_g()) {
    const auto& s = as_g();
    os << "g[" << s.k << "," << s.l << "](" << s.lambda.to_string() << "," << rational_to_string(s.beta) << ")";
  } else {
    const auto& s = as_psi();
    os << "psi" << s.order << "[" << s.offset << "," << (s.order == 0 ? 1 : s.step) << "]";
  }
  return os.str();
}

std::string ProgressionTerm::to_string() const { return scalar.to_string() + "*" + key(); }

TermSum::TermSum(const std::vector<ProgressionTerm>& terms) {
  for (const auto& t : terms) add(t);
}

void TermSum::add(const ProgressionTerm& term) {
  if (term.scalar.is_zero()) return;
  auto [it, inserted] = terms_.emplace(term.key(), term);
  if (inserted) return;
  it->second.scalar += term.scalar;
  if (it->second.scalar.is_zero()) terms_.erase(it);
}

TermSum& TermSum::operator+=(const TermSum& other) {
  for (const auto& [key, t] : other.terms_) add(t);
  return *this;
}

TermSum& TermSum::operator-=(const TermSum& other) {
  for (const auto& [key, t] : other.terms_) {
    ProgressionTerm neg = t;
    neg.scalar = -neg.scalar;
    add(neg);
  }
  return *this;
}

std::vector<ProgressionTerm> TermSum::terms() const {
  std::vector<ProgressionTerm> out;
  out.reserve(terms_.size());
  for (const auto& [key, t] : terms_) out.push_back(t);
  return out;
}

std::string TermSum::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [key, t] : terms_) out += (out.empty() ? "" : " + ") + t.to_string();
  return out;
}

bool operator==(const TermSum& a, const TermSum& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (auto it = a.terms_.begin(), jt = b.terms_.begin(); it != a.terms_.end(); ++it, ++jt) {
    if (it->first != jt->first || it->second.scalar != jt->second.scalar) return false;
  }
  return true;
}

std::vector<ProgressionTerm> rewrite_T_terms(const ProgressionTerm& term) {
  const Coefficient& c = term.scalar;
  std::vector<ProgressionTerm> out;
  if (term.is_g()) {
    const auto& [k, l, lambda, beta] = term.as_g();
    const Coefficient cl = c * lambda;
    if (l % 2 == 0) {
      if (k % 2 == 0) {
        out.push_back(ProgressionTerm::g(k / 2, l / 2, lambda, beta, cl));
      } else {
        out.push_back(ProgressionTerm::g((3 * k + 1) / 2, 3 * l / 2, lambda, beta, cl));
      }
      return out;
    }
    const Rational beta_sq = beta * beta;
    const Coefficient clb = cl * Coefficient(beta);
    if (k % 2 == 0) {
      out.push_back(ProgressionTerm::g((3 * (k + l) + 1) / 2, 3 * l, lambda, beta_sq, clb));
      out.push_back(ProgressionTerm::g(k / 2, l, lambda, beta_sq, cl));
    } else {
      out.push_back(ProgressionTerm::g((k + l) / 2, l, lambda, beta_sq, clb));
      out.push_back(ProgressionTerm::g((3 * k + 1) / 2, 3 * l, lambda, beta_sq, cl));
    }
    return out;
  }

  const auto& [l, m, order] = term.as_psi();
  if (order == 0) {
    out.push_back(ProgressionTerm::psi(collatz_step(l), 1, 0, c));
    return out;
  }
  if (m % 2 == 0) {
    if (l % 2 == 0) {
      out.push_back(ProgressionTerm::psi(l / 2, m / 2, order, c));
    } else {
      out.push_back(ProgressionTerm::psi((3 * l + 1) / 2, 3 * m / 2, order, c));
    }
    return out;
  }
  // m odd: the parity of the exponent depends on whether 1 is in the set.
  if (l % 2 == 0) {
    out.push_back(ProgressionTerm::psi(l / 2, m, order, c));
    out.push_back(ProgressionTerm::psi((3 * (l + m) + 1) / 2, 3 * m, order - 1, c));
  } else {
    out.push_back(ProgressionTerm::psi((3 * l + 1) / 2, 3 * m, order, c));
    out.push_back(ProgressionTerm::psi((l + m) / 2, m, order - 1, c));
  }
  return out;
}

TermSum rewrite_T(const ProgressionTerm& term) { return TermSum(rewrite_T_terms(term)); }

TermSum rewrite_T(const TermSum& sum) {
  TermSum out;
  for (const auto& t : sum.terms()) {
    for (const auto& r : rewrite_T_terms(t)) out.add(r);
  }
  return out;
}

SparseSeries expand(const ProgressionTerm& term, Degree n, std::uint64_t cap) {
  if (term.is_g()) {
    const auto& s = term.as_g();
    CharParams params;
    params.k = s.k;
    params.l = s.l;
    params.lambda = s.lambda;
    params.beta = s.beta;
    return scale(build_char(params, n, cap), term.scalar);
  }
  const auto& s = term.as_psi();
  return scale(build_psi_subset(s.offset, s.step, s.order, n), term.scalar);
}

SparseSeries expand(const TermSum& sum, Degree n, std::uint64_t cap) {
  SparseSeries out(n);
  for (const auto& t : sum.terms()) out += expand(t, n, cap);
  return out;
}

VerificationReport oracle_compare(const ProgressionTerm& term, Degree n, std::uint64_t cap) {
  VerificationReport report;
  report.suite = "progressions";
  ReportTimer timer(report);
  report.param("term", term.to_string());
  report.param("N", degree_to_string(n));
  if (output_degree(OperatorTag::T, n) < 1) throw WatermarkError("oracle_compare: N too small for one T step");

  SparseSeries direct = apply_T(expand(term, n, cap));
  const TermSum image = rewrite_T(term);
  SparseSeries rewritten = expand(image, direct.valid_degree(), cap);
  report.param("image", image.to_string());

  std::vector<std::string> excluded;
  Real defect;
  if (term.is_g()) {
    const auto& s = term.as_g();
    for (std::int64_t src : {0, 1}) {
      if (src > n || src < s.k || (src - s.k) % s.l != 0) continue;
      const std::uint64_t j = static_cast<std::uint64_t>((src - s.k) / s.l);
      const std::int64_t target = collatz_step(src);
      const Coefficient weight = term.scalar * Coefficient(s.beta).pow(j);
      const StoppingTime sigma_src = total_stopping_time(BigInt(static_cast<long>(src)), cap);
      const StoppingTime sigma_target = total_stopping_time(BigInt(static_cast<long>(target)), cap);
      const Coefficient from_direct = weight * s.lambda.pow(sigma_src.value());
      const Coefficient from_rewrite = weight * s.lambda.pow(1 + sigma_target.value());
      direct.add_term(target, -from_direct);
      rewritten.add_term(target, -from_rewrite);
      const Coefficient gap = from_direct - from_rewrite;
      if (defect < gap.magnitude_proxy()) defect = gap.magnitude_proxy();
      excluded.push_back(std::to_string(src));
      report.note("source " + std::to_string(src) + " -> z^" + std::to_string(target) + ": direct " +
                  from_direct.to_string() + ", rewritten " + from_rewrite.to_string());
    }
  }
  std::string list;
  for (const auto& e : excluded) list += (list.empty() ? "" : ",") + e;
  report.param("excluded_sources", list.empty() ? "none" : list);
  report.param("boundary_defect", defect.to_string());
  compare_series(report, direct, rewritten);
  report.finalize();
  return report;
}

VerificationReport decay_experiment(const ProgressionTerm& start, std::uint64_t steps, Degree n,
                                    std::uint64_t cap) {
  if (!start.is_g()) throw std::invalid_argument("decay_experiment: start must be a G term");
  if (steps > 20) throw std::invalid_argument("decay_experiment: at most 20 steps");
  const auto& s = start.as_g();
  if (!s.lambda.is_exact() || s.lambda.exact().im != 0) {
    throw std::invalid_argument("decay_experiment: lambda must be a real rational");
  }
  if (s.beta >= 1) throw std::invalid_argument("decay_experiment: beta must be < 1");

  VerificationReport report;
  report.suite = "progressions/decay";
  ReportTimer timer(report);
  report.param("start", start.to_string());
  report.param("steps", std::to_string(steps));
  report.param("N", degree_to_string(n));
  const Rational abs_lambda = abs(s.lambda.exact().re);
  const Rational two_lambda = 2 * abs_lambda;
  const Rational one_minus_beta = 1 - s.beta;
  const Real start_mass = abs_value(start.scalar);

  std::vector<ProgressionTerm> current{start};
  Real previous_mass = start_mass;
  Rational power(1);
  std::uint64_t splits = 0;
  std::ostringstream trace;
  for (std::uint64_t step = 1; step <= steps; ++step) {
    if (l_of(current.front()) % 2 != 0) ++splits;
    std::vector<ProgressionTerm> next;
    next.reserve(current.size() * 2);
    for (const auto& t : current) {
      for (auto& r : rewrite_T_terms(t)) next.push_back(std::move(r));
    }
    current = std::move(next);
    power *= two_lambda;

    const std::uint64_t expected_count = std::uint64_t{1} << splits;
    if (current.size() != expected_count) {
      report.fail({"step " + std::to_string(step) + " term count", std::to_string(expected_count),
                   std::to_string(current.size())});
    }
    Real mass;
    for (const auto& t : current) mass += abs_value(t.scalar);
    const Real proxy = mass * Real(Rational(1 / one_minus_beta));
    const Real bound = start_mass * Real(Rational(power / one_minus_beta));
    if (proxy > bound) {
      report.fail({"step " + std::to_string(step) + " sup proxy", "<= " + bound.to_string(), proxy.to_string()});
    }
    if (two_lambda < 1 && !(mass < previous_mass)) {
      report.fail({"step " + std::to_string(step) + " decrease", "< " + previous_mass.to_string(), mass.to_string()});
    }
    if (abs_lambda <= 1 && current.size() <= 4096) {
      const SparseSeries x = expand(TermSum(current), n, cap);
      Real sup;
      for (const auto& [e, c] : x.terms()) {
        if (sup < c.magnitude_proxy()) sup = c.magnitude_proxy();
      }
      if (sup > mass) {
        report.fail({"step " + std::to_string(step) + " coefficient sup", "<= " + mass.to_string(), sup.to_string()});
      }
    }
    trace << (step > 1 ? "; " : "") << step << ": terms=" << current.size() << " proxy=" << proxy.to_double()
          << " bound=" << bound.to_double();
    previous_mass = mass;
  }
  report.note(trace.str());
  if (two_lambda >= 1) report.note("2|lambda| >= 1: the bound does not decay, no decay certified");
  if (steps == 0) report.note("steps = 0: input returned unchanged");
  report.param("final_terms", std::to_string(current.size()));
  Rational lambda_power(1);
  for (std::uint64_t i = 0; i < steps; ++i) lambda_power *= abs_lambda;
  report.param("lambda_power", rational_to_string(lambda_power));
  if (report.status != Status::Fail) report.status = Status::Pass;
  return report;
}

VerificationReport check_term_count_law(const ProgressionTerm& start, std::uint64_t steps) {
  VerificationReport report;
  report.suite = "progressions/count";
  ReportTimer timer(report);
  report.param("start", start.to_string());
  report.param("steps", std::to_string(steps));
  std::vector<ProgressionTerm> current{start};
  std::uint64_t splits = 0;
  for (std::uint64_t step = 1; step <= steps; ++step) {
    const bool odd = l_of(current.front()) % 2 != 0;
    for (const auto& t : current) {
      if ((l_of(t) % 2 != 0) != odd) {
        report.fail({"step " + std::to_string(step), "uniform parity of l", t.to_string()});
      }
    }
    if (odd) ++splits;
    std::vector<ProgressionTerm> next;
    for (const auto& t : current) {
      for (auto& r : rewrite_T_terms(t)) next.push_back(std::move(r));
    }
    current = std::move(next);
    if (current.size() != (std::uint64_t{1} << splits)) {
      report.fail({"step " + std::to_string(step), std::to_string(std::uint64_t{1} << splits),
                   std::to_string(current.size())});
    }
  }
  report.param("splits", std::to_string(splits));
  if (report.status != Status::Fail) report.status = Status::Pass;
  return report;
}

bool psi_order_conserved(const ProgressionTerm& term, const std::vector<ProgressionTerm>& image) {
  if (term.is_g()) return true;
  const std::uint64_t k = term.as_psi().order;
  std::multiset<std::uint64_t> orders;
  for (const auto& t : image) {
    if (t.is_g()) return false;
    orders.insert(t.as_psi().order);
  }
  if (image.size() == 1) return orders == std::multiset<std::uint64_t>{k};
  if (image.size() == 2 && k >= 1) return orders == std::multiset<std::uint64_t>{k, k - 1};
  return false;
}

VerificationReport check_telescoping(std::uint64_t m_max) {
  VerificationReport report;
  report.suite = "progressions/telescoping";
  ReportTimer timer(report);
  report.param("M_max", std::to_string(m_max));
  for (std::uint64_t big_m = 0; big_m <= m_max; ++big_m) {
    TermSum s;
    s.add(ProgressionTerm::psi(0, 1, 2));
    std::int64_t p3 = 1;
    TermSum expected;
    for (std::uint64_t k = 1; k <= big_m; ++k) {
      p3 *= 3;
      s.add(ProgressionTerm::psi(1, p3, 1));
      s.add(ProgressionTerm::psi(2, p3, 1));
      expected.add(ProgressionTerm::psi(collatz_step(1 + p3), 1, 0));
      expected.add(ProgressionTerm::psi(collatz_step(2 + p3), 1, 0));
    }
    expected.add(ProgressionTerm::psi(2, 3 * p3, 1));
    TermSum lhs = rewrite_T(s);
    lhs -= s;
    if (!(lhs == expected)) {
      report.fail({"M=" + std::to_string(big_m), expected.to_string(), lhs.to_string()});
    }
    // The same identity on coefficients.
    const Degree n = 6 * p3;
    VerificationReport coeffs;
    const SparseSeries series_lhs = apply_T(expand(s, n)) - expand(s, n / 2);
    compare_series(coeffs, expand(expected, n / 2), series_lhs);
    for (auto& w : coeffs.witnesses) w.location = "M=" + std::to_string(big_m) + " " + w.location;
    report.absorb(coeffs);
  }
  report.finalize();
  return report;
}

ProgressionTerm random_term(std::mt19937_64& rng) {
  auto pick = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  auto nonzero_rational = [&](std::int64_t span, std::int64_t den) {
    std::int64_t p = 0;
    while (p == 0) p = pick(-span, span);
    Rational q(static_cast<long>(p), static_cast<unsigned long>(pick(1, den)));
    q.canonicalize();
    return q;
  };
  const Coefficient scalar(nonzero_rational(5, 4));
  if (pick(0, 1) == 0) {
    Coefficient lambda;
    switch (pick(0, 3)) {
      case 0:
        lambda = Coefficient(Rational(1, 2), Rational(1, 2));
        break;
      default: {
        Rational q(static_cast<long>(pick(-3, 3)), static_cast<unsigned long>(pick(1, 5)));
        q.canonicalize();
        lambda = Coefficient(q);
      }
    }
    const std::int64_t den = pick(1, 6);
    Rational beta(static_cast<long>(pick(1, den)), static_cast<unsigned long>(den));
    beta.canonicalize();
    return ProgressionTerm::g(pick(0, 20), pick(1, 20), lambda, beta, scalar);
  }
  return ProgressionTerm::psi(pick(0, 20), pick(1, 20), static_cast<std::uint64_t>(pick(0, 3)), scalar);
}

}  // namespace collatz
