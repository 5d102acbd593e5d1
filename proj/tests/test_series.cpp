#include <doctest.h>

#include "collatz/series.hpp"

using namespace collatz;

namespace {
Coefficient q(long p, long r = 1) { return Coefficient(Rational(p, r)); }
SparseSeries poly(std::initializer_list<std::int64_t> exps) {
  SparseSeries f;
  for (auto e : exps) f.add_term(e, Coefficient(1));
  return f;
}
}  // namespace

TEST_CASE("coefficient parsing and printing") {
  CHECK(Coefficient::parse("1/2+1/3i") == Coefficient(Rational(1, 2), Rational(1, 3)));
  CHECK(Coefficient::parse("-2/4") == q(-1, 2));
  CHECK(Coefficient::parse("i") == Coefficient(Rational(0), Rational(1)));
  CHECK(Coefficient::parse("-3i") == Coefficient(Rational(0), Rational(-3)));
  CHECK(Coefficient(Rational(1, 2), Rational(1, 3)).to_string() == "1/2+1/3i");
  CHECK_THROWS_AS(Coefficient::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Coefficient::parse("abc"), std::invalid_argument);
  CHECK(rational_to_string(parse_rational("6/4")) == "3/2");
}

TEST_CASE("exact and float arithmetic") {
  const Coefficient a = Coefficient::parse("1/2+1/2i");
  CHECK(a * a == Coefficient(Rational(0), Rational(1, 2)));
  CHECK(a.pow(0) == Coefficient(1));
  CHECK(Coefficient(0).pow(0) == Coefficient(1));
  CHECK(a.norm_sq() == Real(Rational(1, 2)));
  CHECK_THROWS_AS(a / Coefficient(0), std::domain_error);
  const Coefficient mixed = a + Coefficient(0.25);
  CHECK(mixed.mode() == Arithmetic::Float);
  CHECK(mixed.to_complex().real() == doctest::Approx(0.75));
}

TEST_CASE("addition and products") {
  CHECK(poly({1, 3}) + poly({3}) == SparseSeries{{1, Coefficient(1)}, {3, Coefficient(2)}});
  CHECK(multiply(poly({1}), poly({1})) == poly({2}));
  SparseSeries g(8);
  for (auto e : {1, 2, 4, 8}) g.add_term(e, Coefficient(1));
  const SparseSeries sq = multiply(g, g);
  CHECK(sq.valid_degree() == 8);
  CHECK(sq == SparseSeries({{2, q(1)}, {3, q(2)}, {4, q(1)}, {5, q(2)}, {6, q(2)}, {8, q(1)}}, 8));
}

TEST_CASE("product watermark is the smaller one") {
  SparseSeries a(5), b(3);
  a.add_term(1, q(1));
  b.add_term(3, q(1));
  CHECK(multiply(a, b).valid_degree() == 3);
  CHECK(multiply(a, b).empty());
  CHECK(multiply(a, poly({0})).valid_degree() == 5);
}

TEST_CASE("terms above the watermark are dropped and cancellations erased") {
  SparseSeries f(4);
  f.add_term(5, q(1));
  CHECK(f.empty());
  f.add_term(2, q(1, 2));
  f.add_term(2, q(-1, 2));
  CHECK(f.empty());
  CHECK(f.max_exponent() == -1);
}

TEST_CASE("power composition") {
  CHECK(compose_power(poly({1, 2}), 3) == poly({3, 6}));
  CHECK(compose_power(poly({0}), 5) == poly({0}));
  CHECK(compose_power(poly({1, 2, 4}), 3) == poly({3, 6, 12}));
  SparseSeries t(4);
  t.add_term(4, q(1));
  CHECK(compose_power(t, 3).valid_degree() == 14);
}

TEST_CASE("even and odd parts") {
  CHECK(even_part(poly({1, 2})) == poly({2}));
  CHECK(odd_part(poly({1, 2})) == poly({1}));
  CHECK(even_part(poly({0, 4, 8})) == poly({0, 4, 8}));
  CHECK(odd_part(poly({3, 4, 5})) == poly({3, 5}));
}

TEST_CASE("Hardy pairing") {
  CHECK(hardy_inner(poly({4, 1}), poly({1})) == Coefficient(1));
  CHECK(hardy_inner(poly({1, 4}), poly({1, 4})) == Coefficient(2));
  CHECK(hardy_inner(poly({2}), poly({3})) == Coefficient(0));
  CHECK(hardy_norm_sq(poly({1, 4})) == Real(Rational(2)));
  const SparseSeries i{{1, Coefficient(Rational(0), Rational(1))}};
  CHECK(hardy_inner(i, i) == Coefficient(1));
  SparseSeries truncated(2);
  truncated.add_term(1, q(1));
  CHECK_THROWS_AS(hardy_inner(truncated, poly({5})), WatermarkError);
}

TEST_CASE("Bergman norm as a multiple of pi") {
  CHECK(bergman_norm_sq(poly({3})).factor == Real(Rational(1, 4)));
  CHECK(bergman_norm_sq(poly({0, 3}), 2).factor == Real(Rational(1, 4)));
  CHECK(bergman_norm_sq(poly({3})).value() == doctest::Approx(3.14159265358979 / 4));
}

TEST_CASE("evaluation inside the disc") {
  CHECK(evaluate(poly({1}), 0.5).value.real() == doctest::Approx(0.5));
  CHECK(evaluate(poly({0, 1, 2}), 0.5).value.real() == doctest::Approx(1.75));
  SparseSeries g(64);
  for (auto e : {1, 2, 4, 8, 16, 32, 64}) g.add_term(e, q(1));
  const auto ev = evaluate(g, 0.5, true);
  CHECK(ev.value.real() == doctest::Approx(0.816421509).epsilon(1e-9));
  REQUIRE(ev.remainder_bound);
  CHECK(*ev.remainder_bound == doctest::Approx(std::pow(0.5, 65) / 0.5));
  CHECK_THROWS_AS(evaluate(g, 1.0), std::domain_error);
}

TEST_CASE("bivariate layers and slices") {
  BiSeries b(3, 2);
  b.add_term(1, 0, q(1));
  b.add_term(1, 2, q(2));
  b.add_term(3, 1, q(3));
  b.add_term(4, 1, q(3));
  CHECK(b.size() == 3);
  CHECK(b.layer(1) == SparseSeries({{3, q(3)}}, 3));
  CHECK(b.slice(1) == SparseSeries({{0, q(1)}, {2, q(2)}}, 2));
  CHECK(b.coeff(2, 2) == Coefficient(0));
}
