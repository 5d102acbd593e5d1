#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "collatz/coefficient.hpp"
#include "collatz/series.hpp"

namespace collatz {

enum class Status { Pass, Fail, Skipped };

std::string to_string(Status status);

struct Witness {
  std::string location;  // e.g. "z^5" or "(3,5)"
  std::string expected;
  std::string actual;
};

struct DegreeRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

/// Outcome of one identity check. PASS requires an exactly zero residual in
/// EXACT mode, or residual <= tolerance in FLOAT mode; FAIL carries witnesses.
struct VerificationReport {
  std::string suite;
  std::vector<std::pair<std::string, std::string>> parameters;
  Status status = Status::Skipped;
  std::string skip_reason;
  Real residual;
  std::vector<DegreeRange> degrees_checked;
  Arithmetic arithmetic = Arithmetic::Exact;
  double tolerance = 0.0;
  double elapsed_seconds = 0.0;
  std::vector<Witness> witnesses;
  std::vector<std::string> notes;

  bool passed() const { return status == Status::Pass; }
  void param(std::string key, std::string value) { parameters.emplace_back(std::move(key), std::move(value)); }
  void note(std::string text) { notes.push_back(std::move(text)); }
  /// Records a checked range unless an identical one is already listed.
  void cover(DegreeRange r) {
    for (const auto& d : degrees_checked) {
      if (d.lo == r.lo && d.hi == r.hi) return;
    }
    degrees_checked.push_back(r);
  }

  /// Sets status from the residual (and the tolerance in FLOAT mode). A FAIL
  /// without witnesses is promoted to carry a summary witness.
  void finalize();
  /// Forces FAIL with a witness.
  void fail(Witness w);
  /// Folds another report into this one (worst status, max residual).
  void absorb(const VerificationReport& other);
};

/// Maximum witnesses recorded per report.
inline constexpr std::size_t kMaxWitnesses = 16;

/// Compares two series coefficientwise on [lo, hi] (hi clamped to both
/// watermarks). Exponents for which skip(e) is true are ignored. Updates
/// residual, witnesses and degrees_checked; does not finalize.
template <typename Skip>
void compare_series(VerificationReport& report, const SparseSeries& expected, const SparseSeries& actual,
                    std::int64_t lo, std::int64_t hi, Skip skip);

void compare_series(VerificationReport& report, const SparseSeries& expected, const SparseSeries& actual,
                    std::int64_t lo = 0, std::int64_t hi = kPolynomial);

nlohmann::json to_json(const VerificationReport& report, bool include_elapsed = true);

/// One-line human summary.
std::string summary_line(const VerificationReport& report);

/// Wall-clock timer writing elapsed_seconds on destruction.
class ReportTimer {
 public:
  explicit ReportTimer(VerificationReport& report)
      : report_(report), start_(std::chrono::steady_clock::now()) {}
  ~ReportTimer() {
    report_.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }
  ReportTimer(const ReportTimer&) = delete;
  ReportTimer& operator=(const ReportTimer&) = delete;

 private:
  VerificationReport& report_;
  std::chrono::steady_clock::time_point start_;
};

// ---- implementation of the template ----

template <typename Skip>
void compare_series(VerificationReport& report, const SparseSeries& expected, const SparseSeries& actual,
                    std::int64_t lo, std::int64_t hi, Skip skip) {
  hi = std::min({hi, expected.valid_degree(), actual.valid_degree()});
  if (combine(expected.mode(), actual.mode()) == Arithmetic::Float) report.arithmetic = Arithmetic::Float;
  if (hi < lo) return;
  report.cover({lo, hi});
  auto check = [&](std::int64_t e) {
    if (e < lo || e > hi || skip(e)) return;
    Coefficient a = expected.coeff(e);
    Coefficient b = actual.coeff(e);
    Coefficient diff = a - b;
    if (diff.is_zero()) return;
    Real mag = diff.magnitude_proxy();
    if (report.residual < mag) report.residual = mag;
    if (report.witnesses.size() < kMaxWitnesses && (mag.is_exact() || mag.to_double() > report.tolerance)) {
      report.witnesses.push_back({"z^" + std::to_string(e), a.to_string(), b.to_string()});
    }
  };
  // Only exponents stored in either operand can differ.
  auto it = expected.terms().lower_bound(lo);
  auto jt = actual.terms().lower_bound(lo);
  while (it != expected.terms().end() || jt != actual.terms().end()) {
    std::int64_t e;
    if (jt == actual.terms().end() || (it != expected.terms().end() && it->first < jt->first)) {
      e = it->first;
      ++it;
    } else if (it == expected.terms().end() || jt->first < it->first) {
      e = jt->first;
      ++jt;
    } else {
      e = it->first;
      ++it;
      ++jt;
    }
    if (e > hi) break;
    check(e);
  }
}

}  // namespace collatz
