#include "collatz/suites.hpp"

#include <atomic>
#include <chrono>
#include <thread>

#include "collatz/circle_measure.hpp"
#include "collatz/fixed_points.hpp"
#include "collatz/identities.hpp"
#include "collatz/operators.hpp"
#include "collatz/progressions.hpp"
#include "collatz/resolvent.hpp"
#include "collatz/serialization.hpp"
#include "collatz/stopping_basis.hpp"

namespace collatz {
namespace {

std::vector<Coefficient> parse_list(std::initializer_list<const char*> items) {
  std::vector<Coefficient> out;
  for (const char* s : items) out.push_back(Coefficient::parse(s));
  return out;
}

std::int64_t size_of(const SuiteConfig& c, std::int64_t fallback) { return c.degree.value_or(fallback); }

std::vector<VerificationReport> run_fixedpoint(const SuiteConfig& c) {
  const Degree n = size_of(c, 2048);
  const auto lambdas = c.lambdas.value_or(parse_list({"1", "1/2", "-1/3", "1/2+1/2i"}));
  std::vector<VerificationReport> out;
  out.push_back(check_eigen_families(50, lambdas, n));
  out.push_back(check_trajectory_candidate(3, 2, n));
  out.push_back(check_trajectory_candidate(3, 5, n));
  out.push_back(check_trajectory_candidate(27, 40, n));
  auto cycle = verify_fixed_point(SparseSeries{{1, Coefficient(1)}, {2, Coefficient(1)}}, Coefficient(1));
  cycle.suite = "fixedpoint/cycle";
  out.push_back(std::move(cycle));
  const Coefficient third(Rational(1, 3));
  auto h2 = verify_fixed_point(build_h_m(third, 2, n), third);
  h2.suite = "fixedpoint/h2";
  out.push_back(std::move(h2));
  return out;
}

std::vector<VerificationReport> run_polbasis(const SuiteConfig& c) {
  const Degree n = size_of(c, 100000);
  return {check_matrix_representation(12, n, c.cap), check_grading(20, n, c.cap),
          check_pullback_iteration(12, n, IterationForm::Shifted, c.cap),
          check_pullback_iteration(12, n, IterationForm::Literal, c.cap)};
}

std::vector<VerificationReport> run_funceq(const SuiteConfig& c) {
  const Degree n = size_of(c, 200);
  std::vector<VerificationReport> out;
  for (const auto& lambda : c.lambdas.value_or(parse_list({"1/3", "-2/5", "1", "-1"}))) {
    out.push_back(check_functional_equation(lambda, n, c.cap));
  }
  return out;
}

std::vector<VerificationReport> run_resolvent(const SuiteConfig& c) {
  const Degree nz = size_of(c, 100);
  // z/(1-z)^2 as z times the square of the geometric series.
  SparseSeries geometric(nz);
  for (std::int64_t i = 0; i <= nz; ++i) geometric.add_term(i, Coefficient(1));
  const SparseSeries expected = multiply(SparseSeries::monomial(1), multiply(geometric, geometric)).truncated(nz);
  std::vector<VerificationReport> out;
  out.push_back(check_resolvent_identity(PhiSpec::delta_at(1), nz, 20));
  out.push_back(check_resolvent_identity(PhiSpec::identity(), nz, 12, expected));
  out.push_back(check_delta_closed_form(2 * nz, std::nullopt, c.cap));
  out.push_back(audit_growth(PhiSpec::delta_at(1), nz));
  out.push_back(audit_growth(PhiSpec::identity(), nz));
  return out;
}

std::vector<VerificationReport> run_measure(const SuiteConfig& c) {
  const std::int64_t k = size_of(c, 32);
  const double tol = c.tolerance.value_or(kCircleTolerance);
  std::size_t grid = 256;
  while (grid < 4 * static_cast<std::size_t>(k)) grid *= 2;
  std::mt19937_64 rng(c.seed);
  VerificationReport mean, pointwise, factor, bmean, sampled;
  mean.suite = "measure/mean";
  pointwise.suite = "measure/pointwise";
  factor.suite = "measure/factorization";
  bmean.suite = "measure/b-mean";
  sampled.suite = "measure/sampled";
  for (auto* r : {&mean, &pointwise, &factor, &bmean, &sampled}) {
    r->arithmetic = Arithmetic::Float;
    r->tolerance = tol;
    r->status = Status::Pass;
    r->param("cases", std::to_string(c.cases));
    r->param("band_limit", std::to_string(k));
  }
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < c.cases; ++i) {
    const std::int64_t band = 1 + static_cast<std::int64_t>(i % static_cast<std::size_t>(std::max<std::int64_t>(k, 1)));
    const TrigPoly f = random_trig_poly(rng, band, 1 + i % 8);
    mean.absorb(check_mean_invariance(f, grid, tol));
    pointwise.absorb(check_pointwise_agreement(f, 256, tol));
    factor.absorb(check_circle_factorization(f));
    bmean.absorb(check_b_mean_zero(f));
    sampled.absorb(check_mean_invariance([&f](double x) { return f(x); }, grid, tol));
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (auto* r : {&mean, &pointwise, &factor, &bmean, &sampled}) {
    r->elapsed_seconds = elapsed / 5;
    r->notes.clear();
    if (r->status != Status::Fail) r->status = Status::Pass;
  }
  return {mean, pointwise, factor, bmean, sampled};
}

std::vector<VerificationReport> run_inequality(const SuiteConfig& c) {
  const Degree n = size_of(c, 1000000);
  std::vector<VerificationReport> out;
  for (const char* q : {"1/10", "1/4", "2/5"}) out.push_back(check_q_inequality(parse_rational(q), n, c.cap));
  return out;
}

std::vector<VerificationReport> run_progressions(const SuiteConfig& c) {
  const Degree n = size_of(c, 128);
  std::mt19937_64 rng(c.seed);
  VerificationReport random_cases;
  random_cases.suite = "progressions/random";
  random_cases.param("cases", std::to_string(2 * c.cases));
  random_cases.param("N", std::to_string(n));
  std::size_t with_exclusions = 0;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < 2 * c.cases; ++i) {
    const ProgressionTerm t = random_term(rng);
    VerificationReport r = oracle_compare(t, n, c.cap);
    for (const auto& [key, value] : r.parameters) {
      if (key == "excluded_sources" && value != "none") ++with_exclusions;
    }
    for (auto& w : r.witnesses) w.location = t.to_string() + " " + w.location;
    r.notes.clear();
    random_cases.absorb(r);
    if (!psi_order_conserved(t, rewrite_T_terms(t))) random_cases.fail({t.to_string(), "orders {k} or {k,k-1}", "other"});
  }
  random_cases.note(std::to_string(with_exclusions) + " terms touched the excluded sources {0,1}");
  random_cases.finalize();
  random_cases.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  VerificationReport collision;
  collision.suite = "progressions/collision";
  const SparseSeries image = apply_T(build_psi_subset(0, 1, 2, n));
  if (image.coeff(5) != Coefficient(2)) collision.fail({"z^5", "2", image.coeff(5).to_string()});
  collision.absorb(oracle_compare(ProgressionTerm::psi(0, 1, 2), n, c.cap));
  collision.finalize();

  const auto decay_start = ProgressionTerm::g(0, 1, Coefficient(Rational(2, 5)), Rational(1, 2));
  return {random_cases,
          collision,
          decay_experiment(decay_start, 8, 64, c.cap),
          check_term_count_law(ProgressionTerm::g(0, 1, Coefficient(Rational(1, 2)), Rational(1, 3)), 12),
          check_term_count_law(ProgressionTerm::g(2, 8, Coefficient(Rational(1, 2)), Rational(1, 3)), 12),
          check_telescoping(6)};
}

std::vector<SuiteInfo> build_registry() {
  std::vector<SuiteInfo> r;
  r.push_back({"adjoint", "<Fg, f> = <g, Tf> on random exact polynomials", 200, [](const SuiteConfig& c) {
                 return std::vector<VerificationReport>{check_adjoint(c.cases, size_of(c, 200), c.seed)};
               }});
  r.push_back({"expansive", "|f|^2 <= |Ff|^2 <= 2|f|^2 with equality families", 200, [](const SuiteConfig& c) {
                 return std::vector<VerificationReport>{check_expansive(c.cases, size_of(c, 200), c.seed),
                                                        check_f_fixed_constant(c.cases, 40, c.seed + 1)};
               }});
  r.push_back({"kernel", "T(z^{2k+1} - z^{6k+4}) = 0 and T z^{2k} = z^k", 1000, [](const SuiteConfig& c) {
                 return std::vector<VerificationReport>{check_kernel(size_of(c, 1000))};
               }});
  r.push_back({"factorization", "T = L(I+B), T Sinv = Id, Bergman decay of Sinv^n", 200, [](const SuiteConfig& c) {
                 return std::vector<VerificationReport>{check_factorization(c.cases, size_of(c, 200), c.seed),
                                                        check_right_inverse_decay(20, 8)};
               }});
  r.push_back({"fixedpoint", "eigenvector families f_m, h_m and trajectory candidates", 2048, run_fixedpoint});
  r.push_back({"fp2", "which closed form of the second fixed point is T-fixed", 300, [](const SuiteConfig& c) {
                 return std::vector<VerificationReport>{check_fp2(size_of(c, 300))};
               }});
  r.push_back({"polbasis", "F on the Pol_k basis and iterates of F on z + z^2", 100000, run_polbasis});
  r.push_back({"funceq", "F(g~ - 1) = (g~ - 1)/lambda + (lambda - 1/lambda) z", 200, run_funceq});
  r.push_back({"resolvent", "resolvent identity, delta_1 closed form, growth audits", 100, run_resolvent});
  r.push_back({"measure", "mean invariance and pointwise formula on the circle", 32, run_measure});
  r.push_back({"inequality", "sum q^sigma(n) <= (2-q)q/(1-2q)", 1000000, run_inequality});
  r.push_back({"progressions", "rewrite calculus against coefficient expansion", 128, run_progressions});
  r.push_back({"growth", "T^m(n) <= (3/2)^m (n+1)", 10000, [](const SuiteConfig& c) {
                 return std::vector<VerificationReport>{check_growth_bound(size_of(c, 10000), 30)};
               }});
  r.push_back({"amplitudes", "|c1|^2 + |c2|^2 = 1 for real exponents", 1000, [](const SuiteConfig& c) {
                 std::vector<double> alphas;
                 const std::int64_t count = size_of(c, 1000);
                 for (std::int64_t i = 0; i <= count; ++i) alphas.push_back(-10.0 + 20.0 * static_cast<double>(i) / count);
                 return std::vector<VerificationReport>{check_amplitudes(alphas, c.tolerance.value_or(1e-12))};
               }});
  return r;
}

}  // namespace

SuiteConfig suite_config_from_json(const nlohmann::json& j, SuiteConfig base) {
  if (!j.is_object()) throw FormatError("suite config: expected an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "degree") {
      if (!value.is_number_integer()) throw FormatError("degree: expected an integer");
      base.degree = value.get<std::int64_t>();
    } else if (key == "lambdas") {
      if (!value.is_array()) throw FormatError("lambdas: expected an array of strings");
      std::vector<Coefficient> lambdas;
      for (const auto& item : value) {
        if (!item.is_string()) throw FormatError("lambdas: expected strings such as \"1/2+1/2i\"");
        try {
          lambdas.push_back(Coefficient::parse(item.get<std::string>()));
        } catch (const std::invalid_argument& e) {
          throw FormatError(std::string("lambdas: ") + e.what());
        }
      }
      base.lambdas = std::move(lambdas);
    } else if (key == "tolerance") {
      if (!value.is_number()) throw FormatError("tolerance: expected a number");
      base.tolerance = value.get<double>();
    } else if (key == "cases") {
      if (!value.is_number_unsigned()) throw FormatError("cases: expected a nonnegative integer");
      base.cases = value.get<std::size_t>();
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) throw FormatError("seed: expected a nonnegative integer");
      base.seed = value.get<std::uint64_t>();
    } else if (key == "cap") {
      if (!value.is_number_unsigned() || value.get<std::uint64_t>() == 0) throw FormatError("cap: expected a positive integer");
      base.cap = value.get<std::uint64_t>();
    } else {
      throw FormatError("suite config: unknown key '" + key + "'");
    }
  }
  return base;
}

const std::vector<SuiteInfo>& suite_registry() {
  static const std::vector<SuiteInfo> registry = build_registry();
  return registry;
}

const SuiteInfo* find_suite(const std::string& name) {
  for (const auto& s : suite_registry()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

bool SuiteResult::passed() const {
  for (const auto& r : reports) {
    if (r.status == Status::Fail) return false;
  }
  return true;
}

std::vector<SuiteResult> run_suites(const std::vector<std::string>& names, const SuiteConfig& config, unsigned jobs) {
  std::vector<SuiteResult> results(names.size());
  auto run_one = [&](std::size_t i) {
    results[i].name = names[i];
    const SuiteInfo* info = find_suite(names[i]);
    if (info == nullptr) throw std::invalid_argument("unknown suite '" + names[i] + "'");
    try {
      results[i].reports = info->run(config);
    } catch (const std::exception& e) {
      VerificationReport r;
      r.suite = names[i];
      r.fail({"exception", "completion", e.what()});
      results[i].reports.push_back(std::move(r));
    }
  };
  for (const auto& name : names) {
    if (find_suite(name) == nullptr) throw std::invalid_argument("unknown suite '" + name + "'");
  }
  jobs = std::max(1u, jobs);
  if (jobs == 1 || names.size() < 2) {
    for (std::size_t i = 0; i < names.size(); ++i) run_one(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < std::min<std::size_t>(jobs, names.size()); ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < names.size(); i = next++) run_one(i);
    });
  }
  for (auto& t : workers) t.join();
  return results;
}

}  // namespace collatz
