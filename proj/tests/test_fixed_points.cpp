#include <doctest.h>

#include "collatz/fixed_points.hpp"
#include "collatz/operators.hpp"
#include "oracles.hpp"

using namespace collatz;

namespace {
Coefficient q(long p, long r = 1) { return Coefficient(Rational(p, r)); }
SparseSeries z(std::int64_t e, Degree n = kPolynomial) { return SparseSeries::monomial(e, Coefficient(1), n); }

SparseSeries subset_oracle(std::int64_t l, std::int64_t m, unsigned k, Degree n) {
  SparseSeries out(n);
  std::vector<std::int64_t> pows;
  for (std::int64_t p = 1; m * p <= n; p *= 2) pows.push_back(p);
  const std::size_t count = pows.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << count); ++mask) {
    if (static_cast<unsigned>(__builtin_popcountll(mask)) != k) continue;
    std::int64_t s = 0;
    for (std::size_t i = 0; i < count; ++i) {
      if (mask >> i & 1) s += pows[i];
    }
    if (l + m * s <= n) out.add_term(l + m * s, Coefficient(1));
  }
  return out;
}
}  // namespace

TEST_CASE("lacunary series") {
  CHECK(lacunary_g(q(1), 8) == SparseSeries({{1, q(1)}, {2, q(1)}, {4, q(1)}, {8, q(1)}}, 8));
  CHECK(lacunary_g(q(1, 2), 16) ==
        SparseSeries({{1, q(1)}, {2, q(1, 2)}, {4, q(1, 4)}, {8, q(1, 8)}, {16, q(1, 16)}}, 16));
  CHECK(lacunary_g(q(0), 8) == SparseSeries({{1, q(1)}}, 8));
}

TEST_CASE("f_m is an eigenvector up to a monomial") {
  const Coefficient lambda = q(1, 2);
  const SparseSeries f3 = build_f_m(lambda, 3, 2048);
  const SparseSeries r = apply_T(f3) - scale(f3, lambda).truncated(1024);
  CHECK(r == z(5, 1024));
}

TEST_CASE("h_m is an eigenvector") {
  for (const auto& lambda : {q(1, 2), q(1), q(-1, 3), Coefficient::parse("1/2+1/2i")}) {
    const SparseSeries h1 = build_h_m(lambda, 1, 2048);
    CHECK(h1 == build_f_m(lambda, 10, 2048) - build_f_m(lambda, 3, 2048));
    CHECK(verify_fixed_point(h1, lambda).passed());
  }
  CHECK(check_eigen_families(20, {q(1), q(1, 2)}, 512).passed());
}

TEST_CASE("Bergman partial sums of h_m below and above sqrt 2") {
  const auto below = hm_bergman_partial_sums(Coefficient(1.4), 1, 20);
  const auto above = hm_bergman_partial_sums(Coefficient(1.5), 1, 20);
  REQUIRE(below.size() == 21);
  for (std::size_t p = 1; p < below.size(); ++p) {
    CHECK(below[p - 1] <= below[p]);
    CHECK(above[p - 1] <= above[p]);
  }
  // Below the threshold the increments shrink geometrically; above they grow.
  const double db1 = below[20].to_double() - below[19].to_double();
  const double db0 = below[11].to_double() - below[10].to_double();
  const double da1 = above[20].to_double() - above[19].to_double();
  const double da0 = above[11].to_double() - above[10].to_double();
  CHECK(db1 < db0);
  CHECK(da1 > da0);
}

TEST_CASE("trajectory candidates") {
  const SparseSeries x = trajectory_candidate(3, 2, 256);
  CHECK(x == (build_f_m(q(1), 3, 256) + z(5, 256) + z(8, 256)));
  CHECK(apply_T(x) - x.truncated(128) == z(4, 128));
  const SparseSeries y = trajectory_candidate(3, 5, 256);
  CHECK(apply_T(y) - y.truncated(128) == z(2, 128));
  for (std::int64_t m = 1; m <= 30; ++m) {
    const SparseSeries c = trajectory_candidate(m, 0, 4096);
    CHECK(apply_T(c) - c.truncated(2048) == z(oracle::step(m), 2048));
    CHECK(check_trajectory_candidate(m, 4, 4096).passed());
  }
}

TEST_CASE("subset sums over powers of two") {
  CHECK(build_psi_subset(0, 1, 2, 12) == subset_oracle(0, 1, 2, 12));
  CHECK(build_psi_subset(0, 1, 2, 12) ==
        SparseSeries({{3, q(1)}, {5, q(1)}, {6, q(1)}, {9, q(1)}, {10, q(1)}, {12, q(1)}}, 12));
  CHECK(build_psi_subset(2, 3, 1, 14) == SparseSeries({{5, q(1)}, {8, q(1)}, {14, q(1)}}, 14));
  CHECK(build_psi_subset(7, 5, 0, 20) == z(7, 20));
  for (unsigned k = 0; k <= 3; ++k) {
    CHECK(build_psi_subset(4, 3, k, 300) == subset_oracle(4, 3, k, 300));
  }
}

TEST_CASE("second fixed point: exactly one form is fixed") {
  const auto a = analyse_fp2(300);
  REQUIRE(a.fixed_variant.has_value());
  CHECK(*a.fixed_variant == Fp2Variant::DerivedForm);
  CHECK(a.derived.passed());
  CHECK_FALSE(a.printed.passed());
  const auto r = check_fp2(300);
  CHECK(r.passed());
  bool named = false;
  for (const auto& [k, v] : r.parameters) named = named || (k == "fixed_variant" && v == to_string(Fp2Variant::DerivedForm));
  CHECK(named);
}

TEST_CASE("second fixed point forms at the origin") {
  const SparseSeries printed = build_fp2(Fp2Variant::PrintedForm, 300);
  const SparseSeries derived = build_fp2(Fp2Variant::DerivedForm, 300);
  CHECK(printed.coeff(0) == Coefficient(0));
  CHECK(derived.coeff(0) == Coefficient(0));
  CHECK(fp2_terms(300) == 5);
  const SparseSeries half_gap = scale(z(1, 300) - lacunary_g(q(1), 300), q(1, 2));
  CHECK(printed - derived == half_gap);
}

TEST_CASE("cycle polynomial and h_2 at one third") {
  CHECK(verify_fixed_point(z(1) + z(2), q(1)).passed());
  CHECK(verify_fixed_point(build_h_m(q(1, 3), 2, 2048), q(1, 3)).passed());
  CHECK_FALSE(verify_fixed_point(z(1) + z(3), q(1)).passed());
}
