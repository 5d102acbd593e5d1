#include <doctest.h>

#include <random>

#include "collatz/circle_measure.hpp"
#include "oracles.hpp"

using namespace collatz;

namespace {
bool close(const TrigPoly& a, const TrigPoly& b, double tol = 1e-12) {
  for (std::int64_t n = -200; n <= 200; ++n) {
    if (std::abs(a.coeff(n) - b.coeff(n)) > tol) return false;
  }
  return true;
}
}  // namespace

TEST_CASE("pushforward of basis functions") {
  CHECK(circle_apply_T(TrigPoly::basis(1)) == TrigPoly::basis(2));
  CHECK(circle_apply_T(TrigPoly::basis(-1)) == TrigPoly::basis(-1));
  CHECK(circle_apply_T(TrigPoly::basis(0)) == TrigPoly::basis(0));
  for (double phi = 0; phi < 1; phi += 1.0 / 64) {
    const auto g = [](double x) { return TrigPoly::basis(1)(x); };
    CHECK(std::abs(pointwise_T(g, phi) - TrigPoly::basis(2)(phi)) < 1e-12);
    const auto h = [](double x) { return TrigPoly::basis(-1)(x); };
    CHECK(std::abs(pointwise_T(h, phi) - TrigPoly::basis(-1)(phi)) < 1e-12);
  }
}

TEST_CASE("frequency map agrees with the integer step on negative frequencies") {
  for (std::int64_t n = -40; n <= 40; ++n) {
    CHECK(circle_apply_T(TrigPoly::basis(n)) == TrigPoly::basis(oracle::step(n)));
  }
}

TEST_CASE("means are preserved") {
  const TrigPoly f{{0, 3.0}, {2, 2.0}, {-3, 1.0}};
  const TrigPoly tf = circle_apply_T(f);
  CHECK(tf.coeff(0) == std::complex<double>(3.0));
  CHECK(std::abs(grid_mean([&](double x) { return f(x); }, 64) - 3.0) < 1e-12);
  CHECK(std::abs(grid_mean([&](double x) { return tf(x); }, 64) - 3.0) < 1e-12);
  CHECK(check_mean_invariance(f, 64).passed());
  CHECK(check_mean_invariance(TrigPoly::basis(1), 16).passed());
  CHECK_THROWS_AS(check_mean_invariance(f, 48), std::invalid_argument);
  CHECK_THROWS_AS(check_mean_invariance(f, 8), std::invalid_argument);
}

TEST_CASE("helper maps on the circle") {
  CHECK(circle_apply_L(TrigPoly::basis(2) + TrigPoly::basis(3)) == TrigPoly::basis(1));
  CHECK(circle_apply_B(TrigPoly::basis(-1)) == TrigPoly::basis(-2));
}

TEST_CASE("random polynomials") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const TrigPoly f = random_trig_poly(rng, 32, 10);
    CHECK(f.band_limit() <= 32);
    CHECK(close(circle_apply_L(f + circle_apply_B(f)), circle_apply_T(f)));
    CHECK(check_circle_factorization(f).passed());
    CHECK(check_pointwise_agreement(f, 256).passed());
    CHECK(check_mean_invariance(f, 128).passed());
    CHECK(check_b_mean_zero(f).passed());
  }
}

TEST_CASE("mean invariance for a non-polynomial function") {
  const auto g = [](double x) { return std::complex<double>(std::exp(std::cos(2 * M_PI * x)), 0.0); };
  CHECK(check_mean_invariance(g, 1024).passed());
}
