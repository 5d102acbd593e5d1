#include "collatz/operators.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "collatz/collatz_core.hpp"

namespace collatz {
namespace {

constexpr std::int64_t kMaxExponent = std::int64_t{1} << 61;

void check_exponent(std::int64_t e) {
  if (e >= kMaxExponent) throw std::overflow_error("exponent too large for operator application");
}

SparseSeries project_quotient(SparseSeries s) {
  SparseSeries out(s.valid_degree());
  for (const auto& [e, c] : s.terms()) {
    if (e > 2) out.add_term(e, c);
  }
  return out;
}

}  // namespace

std::string to_string(OperatorTag tag) {
  switch (tag) {
    case OperatorTag::T:
      return "T";
    case OperatorTag::F:
      return "F";
    case OperatorTag::L:
      return "L";
    case OperatorTag::B:
      return "B";
    case OperatorTag::SInv:
      return "Sinv";
  }
  return "?";
}

OperatorTag parse_operator_tag(const std::string& name) {
  std::string s;
  for (char c : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s == "t") return OperatorTag::T;
  if (s == "f") return OperatorTag::F;
  if (s == "l") return OperatorTag::L;
  if (s == "b") return OperatorTag::B;
  if (s == "sinv" || s == "s_inv" || s == "s") return OperatorTag::SInv;
  throw std::invalid_argument("unknown operator '" + name + "'");
}

Degree output_degree(OperatorTag tag, Degree n) {
  if (n == kPolynomial) return kPolynomial;
  switch (tag) {
    case OperatorTag::T:
    case OperatorTag::L:
      return n / 2;
    case OperatorTag::F:
      return std::max<Degree>(0, (2 * n - 1) / 3);
    case OperatorTag::B:
      if (n > (kPolynomial - 2) / 3) throw std::overflow_error("watermark overflow");
      return 3 * n + 1;
    case OperatorTag::SInv:
      if (n > (kPolynomial - 2) / 2) throw std::overflow_error("watermark overflow");
      return 2 * n + 1;
  }
  return n;
}

SparseSeries apply_T(const SparseSeries& f, bool quotient) {
  SparseSeries out(output_degree(OperatorTag::T, f.valid_degree()));
  for (const auto& [e, c] : f.terms()) {
    check_exponent(e);
    out.add_term(collatz_step(e), c);
  }
  return quotient ? project_quotient(std::move(out)) : out;
}

SparseSeries apply_F(const SparseSeries& g) {
  SparseSeries out(output_degree(OperatorTag::F, g.valid_degree()));
  for (const auto& [n, c] : g.terms()) {
    check_exponent(n);
    // Preimages of n under T.
    out.add_term(2 * n, c);
    if (n % 3 == 2) out.add_term((2 * n - 1) / 3, c);
  }
  return out;
}

SparseSeries apply_L(const SparseSeries& f) {
  SparseSeries out(output_degree(OperatorTag::L, f.valid_degree()));
  for (const auto& [e, c] : f.terms()) {
    if (e % 2 == 0) out.add_term(e / 2, c);
  }
  return out;
}

SparseSeries apply_B(const SparseSeries& f) {
  SparseSeries out(output_degree(OperatorTag::B, f.valid_degree()));
  for (const auto& [e, c] : f.terms()) {
    check_exponent(e);
    out.add_term(3 * e + 1, c);
  }
  return out;
}

SparseSeries apply_S_inv(const SparseSeries& g) {
  SparseSeries out(output_degree(OperatorTag::SInv, g.valid_degree()));
  for (const auto& [e, c] : g.terms()) {
    check_exponent(e);
    out.add_term(2 * e, c);
  }
  return out;
}

SparseSeries apply(const OperatorKind& kind, const SparseSeries& f) {
  switch (kind.tag) {
    case OperatorTag::T:
      return apply_T(f, kind.quotient);
    case OperatorTag::F:
      return apply_F(f);
    case OperatorTag::L:
      return apply_L(f);
    case OperatorTag::B:
      return apply_B(f);
    case OperatorTag::SInv:
      return apply_S_inv(f);
  }
  return f;
}

SparseSeries operator_power(const OperatorKind& kind, std::uint64_t n, const SparseSeries& f,
                            std::optional<Degree> requested_degree) {
  if (requested_degree) {
    Degree d = f.valid_degree();
    for (std::uint64_t i = 0; i < n && d != kPolynomial; ++i) d = output_degree(kind.tag, d);
    if (d < *requested_degree) {
      throw WatermarkError("operator_power: " + std::to_string(n) + " applications of " + to_string(kind.tag) +
                           " leave watermark " + degree_to_string(d) + " < requested " +
                           degree_to_string(*requested_degree));
    }
  }
  SparseSeries x = f;
  for (std::uint64_t i = 0; i < n; ++i) x = apply(kind, x);
  return x;
}

GenMonomialSum GenMonomialSum::monomial(std::complex<double> exponent, std::complex<double> amplitude) {
  return GenMonomialSum{{GenTerm{amplitude, exponent, std::norm(amplitude)}}};
}

double GenMonomialSum::coherent_l2() const {
  double s = 0.0;
  for (const auto& t : terms) s += std::norm(t.amplitude);
  return s;
}

double GenMonomialSum::branch_l2() const {
  double s = 0.0;
  for (const auto& t : terms) s += t.weight;
  return s;
}

std::pair<double, double> GenMonomialSum::exponent_range() const {
  if (terms.empty()) return {0.0, 0.0};
  double lo = terms.front().exponent.real();
  double hi = lo;
  for (const auto& t : terms) {
    lo = std::min(lo, t.exponent.real());
    hi = std::max(hi, t.exponent.real());
  }
  return {lo, hi};
}

GenMonomialSum apply_T_genmonomial(const GenMonomialSum& x, const GenMonomialOptions& options) {
  const std::complex<double> i_pi(0.0, std::numbers::pi);
  GenMonomialSum out;
  auto emit = [&](std::complex<double> amp, std::complex<double> exponent, double weight) {
    if (std::abs(amp) < options.prune_threshold) return;
    for (auto& t : out.terms) {
      if (std::abs(t.exponent - exponent) < options.merge_tolerance) {
        t.amplitude += amp;
        t.weight += weight;
        return;
      }
    }
    out.terms.push_back(GenTerm{amp, exponent, weight});
  };
  for (const auto& t : x.terms) {
    const std::complex<double> phase = std::exp(t.exponent * i_pi);
    const std::complex<double> even = (1.0 + phase) / 2.0;
    const std::complex<double> odd = (1.0 - phase) / 2.0;
    emit(t.amplitude * even, t.exponent / 2.0, t.weight * std::norm(even));
    emit(t.amplitude * odd, (3.0 * t.exponent + 1.0) / 2.0, t.weight * std::norm(odd));
  }
  out.terms.erase(std::remove_if(out.terms.begin(), out.terms.end(),
                                 [&](const GenTerm& t) { return std::abs(t.amplitude) < options.prune_threshold; }),
                  out.terms.end());
  return out;
}

}  // namespace collatz
