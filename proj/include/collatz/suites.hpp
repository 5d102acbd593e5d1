#pragma once

// Named verification suites. Each entry maps a configuration to a list of
// reports; the CLI and the acceptance runner only go through this table.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "collatz/coefficient.hpp"
#include "collatz/collatz_core.hpp"
#include "collatz/report.hpp"

namespace collatz {

struct SuiteConfig {
  /// Principal size of the suite (degree, watermark or range); the suite
  /// default when absent.
  std::optional<std::int64_t> degree;
  /// Overrides the suite's lambda sample grid.
  std::optional<std::vector<Coefficient>> lambdas;
  /// Overrides FLOAT tolerances.
  std::optional<double> tolerance;
  /// Random cases per randomized check.
  std::size_t cases = 100;
  std::uint64_t seed = 20240611;
  std::uint64_t cap = default_cap();
};

/// Reads {"degree", "lambdas": ["1/2", ...], "tolerance", "cases", "seed",
/// "cap"}; unknown keys are rejected. Throws FormatError.
SuiteConfig suite_config_from_json(const nlohmann::json& j, SuiteConfig base = {});

struct SuiteInfo {
  std::string name;
  std::string description;
  std::int64_t default_degree = 0;
  std::function<std::vector<VerificationReport>(const SuiteConfig&)> run;
};

const std::vector<SuiteInfo>& suite_registry();
const SuiteInfo* find_suite(const std::string& name);

struct SuiteResult {
  std::string name;
  std::vector<VerificationReport> reports;
  bool passed() const;
};

/// Runs the named suites, up to `jobs` at a time, returning results in the
/// order given. Exceptions inside a suite become a FAIL report.
std::vector<SuiteResult> run_suites(const std::vector<std::string>& names, const SuiteConfig& config,
                                    unsigned jobs = 1);

}  // namespace collatz
