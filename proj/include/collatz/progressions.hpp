#pragma once

// Symbolic calculus for T on two families of series:
//
//   g_{k,l}^{L,b} = sum_m L^{sigma(lm+k)} b^m z^{lm+k}
//   Psi^k_{l,m}   = sum over k-sets S of powers of two of z^{l + m sum(S)}
//
// One rewrite step maps each symbol to one or two symbols according to the
// parities of (k, l), resp. (l, m). Order-0 Psi symbols are monomials z^l.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "collatz/coefficient.hpp"
#include "collatz/collatz_core.hpp"
#include "collatz/report.hpp"
#include "collatz/series.hpp"

namespace collatz {

struct GSymbol {
  std::int64_t k = 0;
  std::int64_t l = 1;
  Coefficient lambda = Coefficient(1);
  Rational beta = Rational(1);
};

struct PsiSymbol {
  std::int64_t offset = 0;
  std::int64_t step = 1;
  std::uint64_t order = 0;
};

struct ProgressionTerm {
  Coefficient scalar = Coefficient(1);
  std::variant<GSymbol, PsiSymbol> symbol;

  /// Throws std::invalid_argument unless l >= 1, k >= 0 and beta in (0, 1].
  static ProgressionTerm g(std::int64_t k, std::int64_t l, Coefficient lambda, Rational beta,
                           Coefficient scalar = Coefficient(1));
  /// Throws std::invalid_argument unless l >= 0 and m >= 1.
  static ProgressionTerm psi(std::int64_t l, std::int64_t m, std::uint64_t order, Coefficient scalar = Coefficient(1));

  bool is_g() const { return std::holds_alternative<GSymbol>(symbol); }
  const GSymbol& as_g() const { return std::get<GSymbol>(symbol); }
  const PsiSymbol& as_psi() const { return std::get<PsiSymbol>(symbol); }

  /// Identifies the symbol without the scalar; order-0 Psi symbols ignore m.
  std::string key() const;
  std::string to_string() const;
};

/// Sum of terms with distinct symbols; equal symbols merge by adding
/// scalars, and zero scalars are dropped.
class TermSum {
 public:
  TermSum() = default;
  explicit TermSum(const std::vector<ProgressionTerm>& terms);

  void add(const ProgressionTerm& term);
  TermSum& operator+=(const TermSum& other);
  TermSum& operator-=(const TermSum& other);

  std::vector<ProgressionTerm> terms() const;
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  std::string to_string() const;

  friend bool operator==(const TermSum& a, const TermSum& b);

 private:
  std::map<std::string, ProgressionTerm> terms_;
};

/// One application of T, without merging (one or two terms; scalars may be 0).
std::vector<ProgressionTerm> rewrite_T_terms(const ProgressionTerm& term);
TermSum rewrite_T(const ProgressionTerm& term);
TermSum rewrite_T(const TermSum& sum);

/// Truncated series with watermark N.
SparseSeries expand(const ProgressionTerm& term, Degree n, std::uint64_t cap = default_cap());
SparseSeries expand(const TermSum& sum, Degree n, std::uint64_t cap = default_cap());

/// Compares apply_T(expand(term, N)) with expand(rewrite_T(term), N/2),
/// after removing from both sides the contributions of source exponents 0
/// and 1 (where sigma(n) = 1 + sigma(T(n)) fails). The size of the removed
/// discrepancy is reported separately.
VerificationReport oracle_compare(const ProgressionTerm& term, Degree n, std::uint64_t cap = default_cap());

/// Iterates rewrite_T from `start` (a G symbol) and tracks the unmerged
/// term count and sum |scalar| against (2 lambda)^n / (1 - beta).
VerificationReport decay_experiment(const ProgressionTerm& start, std::uint64_t steps, Degree n,
                                    std::uint64_t cap = default_cap());

/// Unmerged count after each rewrite equals 2^{number of odd-l steps}.
VerificationReport check_term_count_law(const ProgressionTerm& start, std::uint64_t steps);

/// Each Psi rewrite yields orders {k} or {k, k-1}.
bool psi_order_conserved(const ProgressionTerm& term, const std::vector<ProgressionTerm>& image);

/// T S - S = Psi^1_{2,3^{M+1}} + sum_{k<=M} (z^{T(1+3^k)} + z^{T(2+3^k)}) for
/// S = Psi^2_{0,1} + sum_{k<=M} (Psi^1_{1,3^k} + Psi^1_{2,3^k}); checked
/// symbolically and on coefficients.
VerificationReport check_telescoping(std::uint64_t m_max);

/// A random G (k, l <= 20) or Psi (l, m <= 20, order <= 3) term with small
/// rational parameters.
ProgressionTerm random_term(std::mt19937_64& rng);

}  // namespace collatz
