#pragma once

// JSON documents for series, bivariate series, trigonometric polynomials,
// progression terms and reports.
//
//   series:   {"mode": "exact"|"float", "valid_degree": N, "coeffs": [[e, re, im], ...]}
//   bseries:  {"mode": ..., "valid_degree_z": Nz, "valid_degree_w": Nw, "entries": [[n, m, re, im], ...]}
//   trigpoly: {"band_limit": K, "coeffs": [[freq, re, im], ...]}
//   terms:    {"terms": [{"kind": "G"|"PSI", "params": {...}, "scalar": "p/q"}, ...]}
//
// EXACT values are "p/q" strings, FLOAT values are JSON numbers.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "collatz/circle_measure.hpp"
#include "collatz/progressions.hpp"
#include "collatz/series.hpp"

namespace collatz {

/// Malformed or inconsistent input document.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json series_to_json(const SparseSeries& f);
SparseSeries series_from_json(const nlohmann::json& j);

nlohmann::json bi_series_to_json(const BiSeries& f);
BiSeries bi_series_from_json(const nlohmann::json& j);

nlohmann::json trig_poly_to_json(const TrigPoly& f);
TrigPoly trig_poly_from_json(const nlohmann::json& j);

nlohmann::json term_to_json(const ProgressionTerm& t);
ProgressionTerm term_from_json(const nlohmann::json& j);
nlohmann::json terms_to_json(const std::vector<ProgressionTerm>& terms);
std::vector<ProgressionTerm> terms_from_json(const nlohmann::json& j);

/// Reads and parses a JSON file; FormatError on I/O or syntax errors.
nlohmann::json read_json_file(const std::filesystem::path& path);
/// Writes pretty JSON (2-space indent) with a trailing newline.
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace collatz
