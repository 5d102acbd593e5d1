#include "collatz/circle_measure.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "collatz/collatz_core.hpp"

namespace collatz {
namespace {

std::string complex_text(std::complex<double> c) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "(%.17g,%.17g)", c.real(), c.imag());
  return buf;
}

bool power_of_two(std::size_t m) { return m != 0 && (m & (m - 1)) == 0; }

}  // namespace

TrigPoly::TrigPoly(std::initializer_list<std::pair<std::int64_t, std::complex<double>>> terms) {
  for (const auto& [n, c] : terms) add_term(n, c);
}

TrigPoly TrigPoly::basis(std::int64_t frequency, std::complex<double> c) {
  TrigPoly p;
  p.add_term(frequency, c);
  return p;
}

std::int64_t TrigPoly::band_limit() const {
  if (terms_.empty()) return 0;
  return std::max(std::abs(terms_.begin()->first), std::abs(terms_.rbegin()->first));
}

std::complex<double> TrigPoly::coeff(std::int64_t frequency) const {
  auto it = terms_.find(frequency);
  return it == terms_.end() ? std::complex<double>{} : it->second;
}

void TrigPoly::add_term(std::int64_t frequency, std::complex<double> c) {
  auto [it, inserted] = terms_.emplace(frequency, c);
  if (!inserted) it->second += c;
  if (it->second == std::complex<double>{}) terms_.erase(it);
}

std::complex<double> TrigPoly::operator()(double phi) const {
  std::complex<double> sum{};
  for (const auto& [n, c] : terms_) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(n) * phi;
    sum += c * std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return sum;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& other) {
  for (const auto& [n, c] : other.terms_) add_term(n, c);
  return *this;
}

TrigPoly circle_apply_T(const TrigPoly& f) {
  TrigPoly out;
  for (const auto& [n, c] : f.terms()) out.add_term(collatz_step(n), c);
  return out;
}

TrigPoly circle_apply_L(const TrigPoly& f) {
  TrigPoly out;
  for (const auto& [n, c] : f.terms()) {
    if (n % 2 == 0) out.add_term(n / 2, c);
  }
  return out;
}

TrigPoly circle_apply_B(const TrigPoly& f) {
  TrigPoly out;
  for (const auto& [n, c] : f.terms()) out.add_term(3 * n + 1, c);
  return out;
}

std::complex<double> pointwise_T(const CircleFunction& g, double phi) {
  const std::complex<double> half_phase = std::polar(1.0, std::numbers::pi * phi);
  return 0.5 * (g(phi / 2) + g((phi + 1) / 2)) + 0.5 * half_phase * (g(1.5 * phi) - g((3 * phi + 1) / 2));
}

std::complex<double> grid_mean(const CircleFunction& g, std::size_t m) {
  if (m == 0) throw std::invalid_argument("grid_mean: empty grid");
  std::complex<double> sum{};
  for (std::size_t j = 0; j < m; ++j) sum += g(static_cast<double>(j) / static_cast<double>(m));
  return sum / static_cast<double>(m);
}

VerificationReport check_mean_invariance(const TrigPoly& f, std::size_t m, double tol) {
  VerificationReport report;
  report.suite = "measure";
  ReportTimer timer(report);
  report.arithmetic = Arithmetic::Float;
  report.tolerance = tol;
  report.param("band_limit", std::to_string(f.band_limit()));
  report.param("grid", std::to_string(m));
  if (!power_of_two(m) || m < 4 * static_cast<std::size_t>(f.band_limit())) {
    throw std::invalid_argument("check_mean_invariance: grid must be a power of two >= 4 * band limit");
  }
  const TrigPoly tf = circle_apply_T(f);
  if (tf.coeff(0) != f.coeff(0)) {
    report.fail({"frequency 0", complex_text(f.coeff(0)), complex_text(tf.coeff(0))});
  }
  const auto mean_f = grid_mean([&](double x) { return f(x); }, m);
  const auto mean_tf = grid_mean([&](double x) { return tf(x); }, m);
  const double gap = std::abs(mean_f - mean_tf);
  report.residual = gap;
  report.note("mean f = " + complex_text(mean_f) + ", mean Tf = " + complex_text(mean_tf));
  if (gap > tol) report.fail({"grid mean", complex_text(mean_f), complex_text(mean_tf)});
  report.finalize();
  return report;
}

VerificationReport check_mean_invariance(const CircleFunction& g, std::size_t m, double tol) {
  VerificationReport report;
  report.suite = "measure/sampled";
  ReportTimer timer(report);
  report.arithmetic = Arithmetic::Float;
  report.tolerance = tol;
  report.param("grid", std::to_string(m));
  if (!power_of_two(m)) throw std::invalid_argument("check_mean_invariance: grid must be a power of two");
  const auto mean_g = grid_mean(g, m);
  const auto mean_tg = grid_mean([&](double x) { return pointwise_T(g, x); }, m);
  const double gap = std::abs(mean_g - mean_tg);
  report.residual = gap;
  report.note("mean g = " + complex_text(mean_g) + ", mean Tg = " + complex_text(mean_tg));
  if (gap > tol) report.fail({"grid mean", complex_text(mean_g), complex_text(mean_tg)});
  report.finalize();
  return report;
}

VerificationReport check_pointwise_agreement(const TrigPoly& f, std::size_t angles, double tol) {
  VerificationReport report;
  report.suite = "measure/pointwise";
  ReportTimer timer(report);
  report.arithmetic = Arithmetic::Float;
  report.tolerance = tol;
  report.param("band_limit", std::to_string(f.band_limit()));
  report.param("angles", std::to_string(angles));
  const TrigPoly tf = circle_apply_T(f);
  const CircleFunction g = [&](double x) { return f(x); };
  double worst = 0.0;
  for (std::size_t j = 0; j < angles; ++j) {
    const double phi = static_cast<double>(j) / static_cast<double>(angles);
    const auto a = tf(phi);
    const auto b = pointwise_T(g, phi);
    const double d = std::abs(a - b);
    if (d > tol) report.fail({"phi=" + std::to_string(phi), complex_text(a), complex_text(b)});
    worst = std::max(worst, d);
  }
  report.residual = worst;
  report.finalize();
  return report;
}

VerificationReport check_circle_factorization(const TrigPoly& f) {
  VerificationReport report;
  report.suite = "measure/factorization";
  ReportTimer timer(report);
  report.arithmetic = Arithmetic::Float;
  // Colliding frequencies may be summed in a different order on the two sides.
  report.tolerance = 1e-12;
  const TrigPoly lhs = circle_apply_L(f + circle_apply_B(f));
  const TrigPoly rhs = circle_apply_T(f);
  double worst = 0.0;
  std::map<std::int64_t, bool> keys;
  for (const auto& [n, c] : lhs.terms()) keys[n] = true;
  for (const auto& [n, c] : rhs.terms()) keys[n] = true;
  for (const auto& [n, unused] : keys) {
    const double d = std::abs(lhs.coeff(n) - rhs.coeff(n));
    if (d > report.tolerance) report.fail({"e_" + std::to_string(n), complex_text(rhs.coeff(n)), complex_text(lhs.coeff(n))});
    worst = std::max(worst, d);
  }
  report.residual = worst;
  report.finalize();
  return report;
}

VerificationReport check_b_mean_zero(const TrigPoly& f) {
  VerificationReport report;
  report.suite = "measure/b-mean";
  ReportTimer timer(report);
  report.arithmetic = Arithmetic::Float;
  const auto c0 = circle_apply_B(f).coeff(0);
  report.residual = std::abs(c0);
  if (c0 != std::complex<double>{}) report.fail({"frequency 0", "0", complex_text(c0)});
  report.finalize();
  return report;
}

TrigPoly random_trig_poly(std::mt19937_64& rng, std::int64_t k, std::size_t count) {
  if (k < 0) throw std::invalid_argument("random_trig_poly: negative band limit");
  count = std::min<std::size_t>(count, static_cast<std::size_t>(2 * k + 1));
  std::uniform_int_distribution<std::int64_t> freq(-k, k);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  TrigPoly p;
  while (p.terms().size() < count) {
    const std::int64_t n = freq(rng);
    if (p.terms().count(n) != 0) continue;
    p.add_term(n, {unit(rng), unit(rng)});
  }
  return p;
}

}  // namespace collatz
