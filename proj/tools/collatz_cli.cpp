// Command-line front end. Exit codes: 0 all checks pass, 1 a verification
// failed, 2 usage or input-format error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>
#include <json.hpp>

#include "collatz/circle_measure.hpp"
#include "collatz/collatz_core.hpp"
#include "collatz/fixed_points.hpp"
#include "collatz/operators.hpp"
#include "collatz/progressions.hpp"
#include "collatz/resolvent.hpp"
#include "collatz/serialization.hpp"
#include "collatz/stopping_basis.hpp"
#include "collatz/suites.hpp"

using namespace collatz;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void emit(const json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    write_json_file(out, j);
  }
}

Coefficient coefficient_arg(const std::string& text, const char* flag) {
  try {
    return Coefficient::parse(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string(flag) + ": cannot parse '" + text + "'");
  }
}

Rational rational_arg(const std::string& text, const char* flag) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string(flag) + ": cannot parse '" + text + "'");
  }
}

// ---- sigma ----

struct SigmaArgs {
  std::int64_t max = 0;
  std::uint64_t cap = default_cap();
  std::string format = "csv";
};

int run_sigma(const SigmaArgs& a) {
  const StoppingTimeTable table(a.max, a.cap);
  if (a.format == "csv") {
    std::cout << "n,sigma\n";
    for (std::int64_t n = 1; n <= a.max; ++n) {
      std::cout << n << ',';
      if (table.resolved(n)) {
        std::cout << table.value(n);
      } else {
        std::cout << "UNRESOLVED";
      }
      std::cout << '\n';
    }
  } else {
    json rows = json::array();
    for (std::int64_t n = 1; n <= a.max; ++n) {
      rows.push_back({{"n", n}, {"sigma", table.resolved(n) ? json(table.value(n)) : json("UNRESOLVED")}});
    }
    std::cout << json{{"cap", a.cap}, {"max", a.max}, {"rows", rows}}.dump(2) << '\n';
  }
  return std::cout ? kOk : kUsage;
}

// ---- verify ----

struct VerifyArgs {
  std::vector<std::string> suites;
  std::optional<std::int64_t> degree;
  std::vector<std::string> lambdas;
  std::optional<double> tol;
  std::optional<std::size_t> cases;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> cap;
  std::string report;
  std::string config;
  unsigned jobs = 1;
  bool omit_elapsed = false;
  bool list = false;
};

int run_verify(const VerifyArgs& a) {
  if (a.list) {
    for (const auto& s : suite_registry()) {
      std::cout << std::left << std::setw(14) << s.name << " default " << s.default_degree << "  " << s.description
                << '\n';
    }
    return kOk;
  }
  std::vector<std::string> names;
  for (const auto& s : a.suites) {
    if (s == "all") {
      for (const auto& info : suite_registry()) names.push_back(info.name);
    } else if (find_suite(s) == nullptr) {
      throw UsageError("unknown suite '" + s + "' (try --list)");
    } else {
      names.push_back(s);
    }
  }
  if (names.empty()) throw UsageError("--suite is required");

  SuiteConfig config;
  if (!a.config.empty()) config = suite_config_from_json(read_json_file(a.config));
  if (a.degree) config.degree = a.degree;
  if (!a.lambdas.empty()) {
    std::vector<Coefficient> ls;
    for (const auto& l : a.lambdas) ls.push_back(coefficient_arg(l, "--lambda"));
    config.lambdas = ls;
  }
  if (a.tol) config.tolerance = a.tol;
  if (a.cases) config.cases = *a.cases;
  if (a.seed) config.seed = *a.seed;
  if (a.cap) config.cap = *a.cap;

  const auto results = run_suites(names, config, a.jobs);
  std::ostream& log = a.report == "-" ? std::cerr : std::cout;
  bool all = true;
  json doc_suites = json::array();
  for (const auto& r : results) {
    json reports = json::array();
    for (const auto& rep : r.reports) {
      log << summary_line(rep) << '\n';
      for (const auto& w : rep.witnesses) {
        log << "    at " << w.location << ": expected " << w.expected << ", got " << w.actual << '\n';
      }
      for (const auto& n : rep.notes) log << "    note: " << n << '\n';
      reports.push_back(to_json(rep, !a.omit_elapsed));
    }
    all = all && r.passed();
    doc_suites.push_back({{"name", r.name}, {"status", r.passed() ? "PASS" : "FAIL"}, {"reports", reports}});
  }
  if (!a.report.empty()) {
    emit(json{{"status", all ? "PASS" : "FAIL"}, {"suites", doc_suites}}, a.report);
  }
  log << (all ? "ALL PASS" : "FAILURES PRESENT") << '\n';
  return all ? kOk : kFailed;
}

// ---- apply ----

struct ApplyArgs {
  std::string op;
  std::string input;
  std::uint64_t power = 1;
  std::string out;
  bool quotient = false;
};

int run_apply(const ApplyArgs& a) {
  OperatorKind kind;
  try {
    kind.tag = parse_operator_tag(a.op);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  kind.quotient = a.quotient;
  const SparseSeries f = series_from_json(read_json_file(a.input));
  emit(series_to_json(operator_power(kind, a.power, f)), a.out);
  return kOk;
}

// ---- resolvent ----

struct ResolventArgs {
  std::string phi = "delta1";
  std::int64_t nz = 50;
  std::int64_t nw = 10;
  std::string out;
};

PhiSpec phi_arg(const std::string& name) {
  if (name == "identity") return PhiSpec::identity();
  if (name.rfind("delta", 0) == 0 && name.size() > 5) {
    try {
      std::size_t used = 0;
      const long j = std::stol(name.substr(5), &used);
      if (used == name.size() - 5 && j >= 0) return PhiSpec::delta_at(j);
    } catch (const std::exception&) {
    }
  }
  throw UsageError("--phi: expected delta<j> or identity, got '" + name + "'");
}

int run_resolvent(const ResolventArgs& a) {
  emit(bi_series_to_json(build_resolvent(phi_arg(a.phi), a.nz, a.nw)), a.out);
  return kOk;
}

// ---- orbit ----

struct OrbitArgs {
  std::string alpha;
  std::uint64_t steps = 5;
  double tol = 1e-9;
};

int run_orbit(const OrbitArgs& a) {
  const double alpha = rational_arg(a.alpha, "--alpha").get_d();
  GenMonomialSum x = GenMonomialSum::monomial(alpha);
  bool ok = true;
  std::cout << "step,terms,branch_l2,coherent_l2,min_exponent,max_exponent\n";
  std::cout.precision(12);
  for (std::uint64_t s = 0; s <= a.steps; ++s) {
    if (s > 0) x = apply_T_genmonomial(x);
    const auto [lo, hi] = x.exponent_range();
    const double l2 = x.branch_l2();
    std::cout << s << ',' << x.terms.size() << ',' << l2 << ',' << x.coherent_l2() << ',' << lo << ',' << hi << '\n';
    if (std::abs(l2 - 1.0) > a.tol) ok = false;
  }
  if (!ok) std::cerr << "branch l2 sum drifted from 1 beyond " << a.tol << '\n';
  return ok ? kOk : kFailed;
}

// ---- build ----

struct BuildArgs {
  std::string family;
  std::string lambda = "1";
  std::string beta = "1";
  std::int64_t m = 1;
  std::int64_t k = 0;
  std::int64_t l = 1;
  std::int64_t degree = 64;
  bool reduced = false;
  std::uint64_t cap = default_cap();
  std::string out;
};

int run_build(const BuildArgs& a) {
  const Coefficient lambda = coefficient_arg(a.lambda, "--lambda");
  SparseSeries s;
  const std::string& f = a.family;
  if (f == "lacunary") {
    s = lacunary_g(lambda, a.degree);
  } else if (f == "f") {
    s = build_f_m(lambda, a.m, a.degree);
  } else if (f == "h") {
    s = build_h_m(lambda, a.m, a.degree);
  } else if (f == "trajectory") {
    if (a.k < 0) throw UsageError("--k must be nonnegative");
    s = trajectory_candidate(a.m, static_cast<std::uint64_t>(a.k), a.degree);
  } else if (f == "psi") {
    if (a.k < 0) throw UsageError("--k must be nonnegative");
    s = build_psi_subset(a.l, a.m, static_cast<std::uint64_t>(a.k), a.degree);
  } else if (f == "fp2-printed") {
    s = build_fp2(Fp2Variant::PrintedForm, a.degree);
  } else if (f == "fp2-derived") {
    s = build_fp2(Fp2Variant::DerivedForm, a.degree);
  } else if (f == "pol") {
    if (a.k < 0) throw UsageError("--k must be nonnegative");
    s = build_pol_k(static_cast<std::uint64_t>(a.k), a.degree, a.cap).series;
  } else if (f == "char") {
    CharParams p;
    p.k = a.k;
    p.l = a.l;
    p.lambda = lambda;
    p.beta = rational_arg(a.beta, "--beta");
    p.reduced = a.reduced;
    s = build_char(p, a.degree, a.cap);
  } else {
    throw UsageError("unknown family '" + f + "'");
  }
  emit(series_to_json(s), a.out);
  return kOk;
}

// ---- rewrite ----

struct RewriteArgs {
  std::string input;
  std::uint64_t steps = 1;
  std::optional<std::int64_t> expand_degree;
  std::uint64_t cap = default_cap();
  std::string out;
};

int run_rewrite(const RewriteArgs& a) {
  TermSum sum(terms_from_json(read_json_file(a.input)));
  for (std::uint64_t i = 0; i < a.steps; ++i) sum = rewrite_T(sum);
  if (a.expand_degree) {
    emit(series_to_json(expand(sum, *a.expand_degree, a.cap)), a.out);
  } else {
    emit(terms_to_json(sum.terms()), a.out);
  }
  return kOk;
}

// ---- circle ----

struct CircleArgs {
  std::string input;
  std::int64_t random_band = 0;
  std::uint64_t seed = 1;
  std::size_t grid = 0;
  std::size_t angles = 256;
  double tol = kCircleTolerance;
  std::string out;
};

int run_circle(const CircleArgs& a) {
  TrigPoly f;
  if (!a.input.empty()) {
    f = trig_poly_from_json(read_json_file(a.input));
  } else if (a.random_band > 0) {
    std::mt19937_64 rng(a.seed);
    f = random_trig_poly(rng, a.random_band, static_cast<std::size_t>(std::min<std::int64_t>(2 * a.random_band + 1, 8)));
  } else {
    throw UsageError("give --input or --random");
  }
  std::size_t grid = a.grid;
  if (grid == 0) {
    grid = 4;
    while (grid < 4 * static_cast<std::size_t>(std::max<std::int64_t>(f.band_limit(), 1))) grid *= 2;
  }
  VerificationReport mean;
  try {
    mean = check_mean_invariance(f, grid, a.tol);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--grid: ") + e.what());
  }
  const VerificationReport pointwise = check_pointwise_agreement(f, a.angles, a.tol);
  std::cerr << summary_line(mean) << '\n' << summary_line(pointwise) << '\n';
  emit(trig_poly_to_json(circle_apply_T(f)), a.out);
  return mean.passed() && pointwise.passed() ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collatz pushforward and pullback operators on truncated power series"};
  app.require_subcommand(1);

  SigmaArgs sigma;
  auto* c_sigma = app.add_subcommand("sigma", "total stopping times for 1 <= n <= max");
  c_sigma->add_option("--max", sigma.max, "largest n")->required()->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 40));
  c_sigma->add_option("--cap", sigma.cap, "iteration cap (default from COLLATZ_CAP)")->check(CLI::PositiveNumber);
  c_sigma->add_option("--format", sigma.format, "csv or structured")->check(CLI::IsMember({"csv", "structured"}));

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify", "run verification suites");
  c_verify->add_option("--suite", verify.suites, "suite name, repeatable; 'all' runs every suite");
  c_verify->add_option("--degree", verify.degree, "principal size of the suite")->check(CLI::NonNegativeNumber);
  c_verify->add_option("--lambda", verify.lambdas, "lambda sample such as 1/2 or 1/2+1/3i, repeatable");
  c_verify->add_option("--tol", verify.tol, "FLOAT tolerance")->check(CLI::PositiveNumber);
  c_verify->add_option("--cases", verify.cases, "random cases per randomized check");
  c_verify->add_option("--seed", verify.seed, "random seed");
  c_verify->add_option("--cap", verify.cap, "iteration cap")->check(CLI::PositiveNumber);
  c_verify->add_option("--report", verify.report, "write a structured report here ('-' for stdout)");
  c_verify->add_option("--config", verify.config, "suite configuration file")->check(CLI::ExistingFile);
  c_verify->add_option("--jobs", verify.jobs, "suites run in parallel")->check(CLI::PositiveNumber);
  c_verify->add_flag("--omit-elapsed", verify.omit_elapsed, "leave timings out of the report");
  c_verify->add_flag("--list", verify.list, "list suites and exit");

  ApplyArgs apply_args;
  auto* c_apply = app.add_subcommand("apply", "apply an operator to a series file");
  c_apply->add_option("--op", apply_args.op, "T, F, L, B or Sinv")->required();
  c_apply->add_option("--input", apply_args.input, "series file")->required();
  c_apply->add_option("--power", apply_args.power, "number of applications");
  c_apply->add_option("--out", apply_args.out, "output file (default stdout)");
  c_apply->add_flag("--quotient", apply_args.quotient, "drop exponents <= 2 after each T");

  ResolventArgs resolvent;
  auto* c_resolvent = app.add_subcommand("resolvent", "coefficients phi(T^m(n)) on a rectangle");
  c_resolvent->add_option("--phi", resolvent.phi, "delta<j> or identity");
  c_resolvent->add_option("--nz", resolvent.nz, "z watermark")->check(CLI::NonNegativeNumber);
  c_resolvent->add_option("--nw", resolvent.nw, "w watermark")->check(CLI::NonNegativeNumber);
  c_resolvent->add_option("--out", resolvent.out, "output file (default stdout)");

  OrbitArgs orbit;
  auto* c_orbit = app.add_subcommand("orbit", "iterate T on z^alpha with real alpha");
  c_orbit->add_option("--alpha", orbit.alpha, "exponent p/q")->required();
  c_orbit->add_option("--steps", orbit.steps, "iterations")->check(CLI::Range(0, 40));
  c_orbit->add_option("--tol", orbit.tol, "tolerance on the branch l2 sum");

  BuildArgs build;
  auto* c_build = app.add_subcommand("build", "construct a named series");
  c_build->add_option("--family", build.family,
                      "lacunary, f, h, trajectory, psi, fp2-printed, fp2-derived, pol or char")
      ->required();
  c_build->add_option("--lambda", build.lambda, "eigenvalue / weight");
  c_build->add_option("--beta", build.beta, "geometric damping for char");
  c_build->add_option("--m", build.m, "index m (or step for psi)");
  c_build->add_option("--k", build.k, "index k (offset for char, order for psi, steps for trajectory)");
  c_build->add_option("--l", build.l, "step l for char, offset for psi");
  c_build->add_option("--degree", build.degree, "watermark")->check(CLI::NonNegativeNumber);
  c_build->add_flag("--reduced", build.reduced, "reduced characteristic series");
  c_build->add_option("--cap", build.cap, "iteration cap")->check(CLI::PositiveNumber);
  c_build->add_option("--out", build.out, "output file (default stdout)");

  RewriteArgs rewrite;
  auto* c_rewrite = app.add_subcommand("rewrite", "apply T symbolically to a term file");
  c_rewrite->add_option("--input", rewrite.input, "term file")->required();
  c_rewrite->add_option("--steps", rewrite.steps, "rewrite steps");
  c_rewrite->add_option("--expand", rewrite.expand_degree, "expand the result to a series of this watermark");
  c_rewrite->add_option("--cap", rewrite.cap, "iteration cap")->check(CLI::PositiveNumber);
  c_rewrite->add_option("--out", rewrite.out, "output file (default stdout)");

  CircleArgs circle;
  auto* c_circle = app.add_subcommand("circle", "pushforward of a trigonometric polynomial");
  c_circle->add_option("--input", circle.input, "TrigPoly file");
  c_circle->add_option("--random", circle.random_band, "random polynomial of this band limit");
  c_circle->add_option("--seed", circle.seed, "random seed");
  c_circle->add_option("--grid", circle.grid, "grid size for means (power of two >= 4K)");
  c_circle->add_option("--angles", circle.angles, "sample angles for the pointwise check");
  c_circle->add_option("--tol", circle.tol, "tolerance");
  c_circle->add_option("--out", circle.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*c_sigma) return run_sigma(sigma);
    if (*c_verify) return run_verify(verify);
    if (*c_apply) return run_apply(apply_args);
    if (*c_resolvent) return run_resolvent(resolvent);
    if (*c_orbit) return run_orbit(orbit);
    if (*c_build) return run_build(build);
    if (*c_rewrite) return run_rewrite(rewrite);
    if (*c_circle) return run_circle(circle);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return kUsage;
  } catch (const UnresolvedError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
