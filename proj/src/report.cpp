#include "collatz/report.hpp"

#include <iomanip>
#include <sstream>

namespace collatz {

std::string to_string(Status status) {
  switch (status) {
    case Status::Pass:
      return "PASS";
    case Status::Fail:
      return "FAIL";
    case Status::Skipped:
      return "SKIPPED";
  }
  return "?";
}

void VerificationReport::finalize() {
  if (status == Status::Skipped && !skip_reason.empty()) return;
  bool ok = arithmetic == Arithmetic::Exact ? residual.is_zero() : residual.to_double() <= tolerance;
  if (status == Status::Fail) ok = false;
  status = ok ? Status::Pass : Status::Fail;
  if (!ok && witnesses.empty()) witnesses.push_back({"residual", "<= " + std::to_string(tolerance), residual.to_string()});
}

void VerificationReport::fail(Witness w) {
  status = Status::Fail;
  if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(w));
}

void VerificationReport::absorb(const VerificationReport& other) {
  if (other.status == Status::Fail) status = Status::Fail;
  if (residual < other.residual) residual = other.residual;
  if (other.arithmetic == Arithmetic::Float) arithmetic = Arithmetic::Float;
  for (const auto& w : other.witnesses) {
    if (witnesses.size() < kMaxWitnesses) witnesses.push_back(w);
  }
  for (const auto& r : other.degrees_checked) cover(r);
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

void compare_series(VerificationReport& report, const SparseSeries& expected, const SparseSeries& actual,
                    std::int64_t lo, std::int64_t hi) {
  compare_series(report, expected, actual, lo, hi, [](std::int64_t) { return false; });
}

nlohmann::json to_json(const VerificationReport& report, bool include_elapsed) {
  nlohmann::json j;
  j["suite"] = report.suite;
  nlohmann::json params = nlohmann::json::array();
  for (const auto& [k, v] : report.parameters) params.push_back({k, v});
  j["parameters"] = params;
  j["status"] = to_string(report.status);
  if (report.status == Status::Skipped) j["skip_reason"] = report.skip_reason;
  j["residual"] = report.residual.to_string();
  nlohmann::json ranges = nlohmann::json::array();
  for (const auto& r : report.degrees_checked) ranges.push_back({r.lo, r.hi});
  j["degrees_checked"] = ranges;
  j["arithmetic"] = to_string(report.arithmetic);
  if (report.arithmetic == Arithmetic::Float) j["tolerance"] = report.tolerance;
  nlohmann::json witnesses = nlohmann::json::array();
  for (const auto& w : report.witnesses) {
    witnesses.push_back({{"location", w.location}, {"expected", w.expected}, {"actual", w.actual}});
  }
  j["witnesses"] = witnesses;
  j["notes"] = report.notes;
  if (include_elapsed) j["elapsed"] = report.elapsed_seconds;
  return j;
}

std::string summary_line(const VerificationReport& report) {
  std::ostringstream os;
  os << std::left << std::setw(8) << to_string(report.status) << std::setw(16) << report.suite
     << " residual=" << report.residual.to_string() << " mode=" << to_string(report.arithmetic);
  if (!report.degrees_checked.empty()) {
    std::int64_t lo = report.degrees_checked.front().lo;
    std::int64_t hi = report.degrees_checked.front().hi;
    for (const auto& r : report.degrees_checked) {
      lo = std::min(lo, r.lo);
      hi = std::max(hi, r.hi);
    }
    os << " degrees=[" << lo << "," << degree_to_string(hi) << "]";
  }
  os << std::fixed << std::setprecision(3) << " t=" << report.elapsed_seconds << "s";
  if (report.status == Status::Skipped) os << " (" << report.skip_reason << ")";
  return os.str();
}

}  // namespace collatz
