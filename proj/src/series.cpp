#include "collatz/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace collatz {

std::string degree_to_string(Degree d) { return d == kPolynomial ? "poly" : std::to_string(d); }

SparseSeries::SparseSeries(Degree valid_degree) : valid_degree_(valid_degree) {
  if (valid_degree < 0) throw std::invalid_argument("negative valid_degree");
}

SparseSeries::SparseSeries(std::initializer_list<std::pair<std::int64_t, Coefficient>> terms, Degree valid_degree)
    : SparseSeries(valid_degree) {
  for (const auto& [e, c] : terms) add_term(e, c);
}

SparseSeries SparseSeries::monomial(std::int64_t exponent, Coefficient c, Degree valid_degree) {
  SparseSeries s(valid_degree);
  s.add_term(exponent, c);
  return s;
}

Coefficient SparseSeries::coeff(std::int64_t exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Coefficient(0) : it->second;
}

void SparseSeries::add_term(std::int64_t exponent, const Coefficient& c) {
  if (exponent < 0) throw std::invalid_argument("negative exponent");
  if (exponent > valid_degree_ || c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Arithmetic SparseSeries::mode() const {
  for (const auto& [e, c] : terms_) {
    if (!c.is_exact()) return Arithmetic::Float;
  }
  return Arithmetic::Exact;
}

SparseSeries SparseSeries::truncated(Degree n) const {
  SparseSeries out(std::min(valid_degree_, n));
  for (auto it = terms_.begin(); it != terms_.end() && it->first <= out.valid_degree_; ++it) {
    out.terms_.emplace_hint(out.terms_.end(), it->first, it->second);
  }
  return out;
}

SparseSeries& SparseSeries::operator+=(const SparseSeries& other) {
  if (other.valid_degree_ < valid_degree_) *this = truncated(other.valid_degree_);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

SparseSeries& SparseSeries::operator-=(const SparseSeries& other) {
  if (other.valid_degree_ < valid_degree_) *this = truncated(other.valid_degree_);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

SparseSeries SparseSeries::operator-() const {
  SparseSeries out(valid_degree_);
  for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e, -c);
  return out;
}

bool operator==(const SparseSeries& a, const SparseSeries& b) {
  return a.valid_degree_ == b.valid_degree_ && a.terms_ == b.terms_;
}

SparseSeries add(const SparseSeries& a, const SparseSeries& b) { return a + b; }

SparseSeries scale(const SparseSeries& a, const Coefficient& c) {
  SparseSeries out(a.valid_degree());
  for (const auto& [e, v] : a.terms()) out.add_term(e, v * c);
  return out;
}

SparseSeries multiply(const SparseSeries& a, const SparseSeries& b) {
  SparseSeries out(std::min(a.valid_degree(), b.valid_degree()));
  const Degree limit = out.valid_degree();
  for (const auto& [ea, ca] : a.terms()) {
    if (ea > limit) break;
    for (const auto& [eb, cb] : b.terms()) {
      if (eb > limit - ea) break;
      out.add_term(ea + eb, ca * cb);
    }
  }
  return out;
}

SparseSeries compose_power(const SparseSeries& f, std::int64_t m) {
  if (m < 1) throw std::invalid_argument("compose_power: m must be positive");
  Degree vd = kPolynomial;
  if (!f.is_polynomial()) {
    Degree scaled = 0;
    if (__builtin_mul_overflow(f.valid_degree(), m, &scaled) || __builtin_add_overflow(scaled, m - 1, &vd) ||
        vd == kPolynomial) {
      throw std::overflow_error("compose_power: watermark overflow");
    }
  }
  SparseSeries out(vd);
  for (const auto& [e, c] : f.terms()) {
    std::int64_t target = 0;
    if (__builtin_mul_overflow(e, m, &target)) throw std::overflow_error("compose_power: exponent overflow");
    out.add_term(target, c);
  }
  return out;
}

SparseSeries even_part(const SparseSeries& f) {
  SparseSeries out(f.valid_degree());
  for (const auto& [e, c] : f.terms()) {
    if (e % 2 == 0) out.add_term(e, c);
  }
  return out;
}

SparseSeries odd_part(const SparseSeries& f) {
  SparseSeries out(f.valid_degree());
  for (const auto& [e, c] : f.terms()) {
    if (e % 2 != 0) out.add_term(e, c);
  }
  return out;
}

Coefficient hardy_inner(const SparseSeries& f, const SparseSeries& g) {
  if (f.valid_degree() < g.max_exponent() || g.valid_degree() < f.max_exponent()) {
    throw WatermarkError("hardy_inner: pairing indeterminate (watermark " + degree_to_string(f.valid_degree()) +
                         "/" + degree_to_string(g.valid_degree()) + " below a stored exponent of the other)");
  }
  Coefficient sum(0);
  auto it = f.terms().begin();
  auto jt = g.terms().begin();
  while (it != f.terms().end() && jt != g.terms().end()) {
    if (it->first < jt->first) {
      ++it;
    } else if (jt->first < it->first) {
      ++jt;
    } else {
      sum += it->second * jt->second.conj();
      ++it;
      ++jt;
    }
  }
  return sum;
}

Real hardy_norm_sq(const SparseSeries& f) {
  Real sum(Rational(0));
  for (const auto& [e, c] : f.terms()) sum += c.norm_sq();
  return sum;
}

double PiMultiple::value() const { return factor.to_double() * std::numbers::pi; }

PiMultiple bergman_norm_sq(const SparseSeries& f, std::optional<std::int64_t> quotient_cutoff) {
  Real sum(Rational(0));
  for (const auto& [e, c] : f.terms()) {
    if (quotient_cutoff && e <= *quotient_cutoff) continue;
    Real weight = c.is_exact() ? Real(Rational(1, e + 1)) : Real(1.0 / static_cast<double>(e + 1));
    sum += c.norm_sq() * weight;
  }
  return PiMultiple{sum};
}

Evaluation evaluate(const SparseSeries& f, std::complex<double> z0, bool with_remainder) {
  const double r = std::abs(z0);
  if (!(r < 1.0)) throw std::domain_error("evaluate: |z0| must be < 1");
  std::complex<double> sum = 0.0;
  double max_coeff = 0.0;
  for (const auto& [e, c] : f.terms()) {
    std::complex<double> v = c.to_complex();
    sum += v * std::pow(z0, static_cast<double>(e));
    max_coeff = std::max(max_coeff, std::abs(v));
  }
  Evaluation out{sum, std::nullopt};
  if (with_remainder) {
    if (f.is_polynomial()) {
      out.remainder_bound = 0.0;
    } else {
      out.remainder_bound = std::pow(r, static_cast<double>(f.valid_degree()) + 1.0) / (1.0 - r) * max_coeff;
    }
  }
  return out;
}

BiSeries::BiSeries(Degree valid_degree_z, Degree valid_degree_w)
    : valid_degree_z_(valid_degree_z), valid_degree_w_(valid_degree_w) {
  if (valid_degree_z < 0 || valid_degree_w < 0) throw std::invalid_argument("negative valid_degree");
}

Coefficient BiSeries::coeff(std::int64_t n, std::int64_t m) const {
  auto it = terms_.find({n, m});
  return it == terms_.end() ? Coefficient(0) : it->second;
}

void BiSeries::add_term(std::int64_t n, std::int64_t m, const Coefficient& c) {
  if (n < 0 || m < 0) throw std::invalid_argument("negative exponent");
  if (n > valid_degree_z_ || m > valid_degree_w_ || c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(Key{n, m}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

SparseSeries BiSeries::layer(std::int64_t m) const {
  SparseSeries out(valid_degree_z_);
  for (const auto& [key, c] : terms_) {
    if (key.second == m) out.add_term(key.first, c);
  }
  return out;
}

SparseSeries BiSeries::slice(std::int64_t n) const {
  SparseSeries out(valid_degree_w_);
  for (auto it = terms_.lower_bound({n, 0}); it != terms_.end() && it->first.first == n; ++it) {
    out.add_term(it->first.second, it->second);
  }
  return out;
}

bool operator==(const BiSeries& a, const BiSeries& b) {
  return a.valid_degree_z_ == b.valid_degree_z_ && a.valid_degree_w_ == b.valid_degree_w_ && a.terms_ == b.terms_;
}

}  // namespace collatz
