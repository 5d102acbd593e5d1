#include <doctest.h>

#include "collatz/operators.hpp"
#include "collatz/stopping_basis.hpp"
#include "oracles.hpp"

using namespace collatz;

namespace {
Coefficient q(long p, long r = 1) { return Coefficient(Rational(p, r)); }

SparseSeries level_oracle(std::uint64_t k, Degree n) {
  SparseSeries out(n);
  for (std::int64_t m = 1; m <= n; ++m) {
    if (oracle::sigma(m) == k) out.add_term(m, q(1));
  }
  return out;
}
}  // namespace

TEST_CASE("level sets of the stopping time") {
  CHECK(build_pol_k(0, 100).series == SparseSeries({{1, q(1)}}, 100));
  CHECK(build_pol_k(4, 100).series == SparseSeries({{5, q(1)}, {16, q(1)}}, 100));
  CHECK(build_pol_k(5, 100).series == SparseSeries({{3, q(1)}, {10, q(1)}, {32, q(1)}}, 100));
  for (std::uint64_t k = 0; k <= 15; ++k) CHECK(build_pol_k(k, 3000).series == level_oracle(k, 3000));
  CHECK_THROWS_AS(build_pol_k(3, 10, 3), UnresolvedError);
}

TEST_CASE("characteristic series") {
  CharParams geometric;
  CHECK(build_char(geometric, 5) ==
        SparseSeries({{0, q(1)}, {1, q(1)}, {2, q(1)}, {3, q(1)}, {4, q(1)}, {5, q(1)}}, 5));

  CharParams half;
  half.lambda = q(1, 2);
  half.reduced = true;
  const SparseSeries s = build_char(half, 4);
  CHECK(s == SparseSeries({{0, q(1)}, {1, q(1)}, {2, q(1, 2)}, {3, q(1, 32)}, {4, q(1, 4)}}, 4));
  CHECK(s.coeff(3) == q(1, 32));

  CharParams zero;
  zero.lambda = q(0);
  CHECK(build_char(zero, 9) == SparseSeries({{0, q(1)}, {1, q(1)}}, 9));

  CharParams odd;
  odd.k = 1;
  odd.l = 2;
  odd.lambda = q(0);
  CHECK(build_char(odd, 9) == SparseSeries({{1, q(1)}}, 9));
}

TEST_CASE("characteristic series against a direct sum") {
  CharParams p;
  p.k = 3;
  p.l = 4;
  p.lambda = Coefficient::parse("1/2-1/3i");
  p.beta = Rational(2, 3);
  const Degree n = 400;
  SparseSeries expected(n);
  Coefficient b = q(1);
  for (std::int64_t m = 0; p.l * m + p.k <= n; ++m) {
    const std::int64_t e = p.l * m + p.k;
    expected.add_term(e, p.lambda.pow(*oracle::sigma(e)) * b);
    b = b * Coefficient(p.beta);
  }
  CHECK(build_char(p, n) == expected);

  p.reduced = true;
  SparseSeries reduced(50);
  for (std::int64_t m = 0; m <= 50; ++m) reduced.add_term(m, p.lambda.pow(*oracle::sigma(p.l * m + p.k)));
  CHECK(build_char(p, 50) == reduced);
}

TEST_CASE("pullback on the level basis") {
  CHECK(apply_F(SparseSeries::monomial(1)) == SparseSeries::monomial(2));
  CHECK(apply_F(SparseSeries::monomial(2)) == SparseSeries({{1, q(1)}, {4, q(1)}}));
  CHECK(apply_F(SparseSeries::monomial(4)) == SparseSeries::monomial(8));
  CHECK(check_matrix_representation(12, 20000).passed());
  CHECK(check_grading(15, 20000).passed());
}

TEST_CASE("pullback iterates of z + z^2") {
  CHECK(check_pullback_iteration(12, 20000, IterationForm::Shifted).passed());
  const auto literal = check_pullback_iteration(4, 2000, IterationForm::Literal);
  CHECK(literal.status == Status::Fail);
  CHECK_FALSE(literal.witnesses.empty());
}

TEST_CASE("functional equation of the reduced series") {
  for (const char* l : {"1/3", "-2/5", "1", "-1", "1/2+1/2i"}) {
    CHECK(check_functional_equation(Coefficient::parse(l), 200).passed());
  }
  CHECK_THROWS_AS(check_functional_equation(q(0), 50), std::domain_error);
}

TEST_CASE("minus-one eigenvector on the watermark") {
  SparseSeries s(300);
  for (std::int64_t m = 1; m <= 300; ++m) s.add_term(m, *oracle::sigma(m) % 2 == 0 ? q(1) : q(-1));
  const SparseSeries fs = apply_F(s);
  CHECK(fs == scale(s, q(-1)).truncated(fs.valid_degree()));
}

TEST_CASE("q inequality") {
  CHECK(q_bound(Rational(1, 4)) == Rational(7, 8));
  CHECK(q_bound(Rational(1, 10)) == Rational(19, 80));
  CHECK(q_bound(Rational(2, 5)) == Rational(16, 5));
  CHECK(check_q_inequality(Rational(1, 4), 10000).passed());
  CHECK(check_q_inequality(Rational(1, 10), 10000).passed());
  CHECK_THROWS_AS(check_q_inequality(Rational(1, 2), 100), std::invalid_argument);

  // Exact partial sum at small N against the oracle.
  Rational sum = 0;
  for (std::int64_t n = 2; n <= 64; ++n) {
    Rational t = 1;
    for (std::uint64_t i = 0; i < *oracle::sigma(n); ++i) t *= Rational(1, 4);
    sum += t;
  }
  CHECK(sum < Rational(7, 8));
}
