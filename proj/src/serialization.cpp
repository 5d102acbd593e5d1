#include "collatz/serialization.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace collatz {

using nlohmann::json;

namespace {

std::int64_t require_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw FormatError(std::string(what) + ": expected an integer");
  return j.get<std::int64_t>();
}

const json& field(const json& j, const char* name) {
  if (!j.is_object()) throw FormatError("expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw FormatError(std::string("missing field '") + name + "'");
  return *it;
}

Arithmetic parse_mode(const json& j) {
  if (!j.is_string()) throw FormatError("mode: expected \"exact\" or \"float\"");
  const auto s = j.get<std::string>();
  if (s == "exact") return Arithmetic::Exact;
  if (s == "float") return Arithmetic::Float;
  throw FormatError("mode: expected \"exact\" or \"float\", got \"" + s + "\"");
}

Rational exact_part(const json& j) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw FormatError(std::string("bad rational: ") + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw FormatError("EXACT values must be \"p/q\" strings");
}

double float_part(const json& j) {
  if (!j.is_number()) throw FormatError("FLOAT values must be numbers");
  return j.get<double>();
}

Coefficient read_value(Arithmetic mode, const json& re, const json& im) {
  if (mode == Arithmetic::Exact) return Coefficient(exact_part(re), exact_part(im));
  return Coefficient(std::complex<double>(float_part(re), float_part(im)));
}

void push_value(json& row, Arithmetic mode, const Coefficient& c) {
  if (mode == Arithmetic::Exact) {
    row.push_back(rational_to_string(c.exact().re));
    row.push_back(rational_to_string(c.exact().im));
  } else {
    const auto z = c.to_complex();
    row.push_back(z.real());
    row.push_back(z.imag());
  }
}

Coefficient parse_coefficient(const json& j) {
  if (j.is_string()) {
    try {
      return Coefficient::parse(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw FormatError(std::string("bad coefficient: ") + e.what());
    }
  }
  if (j.is_number_integer()) return Coefficient(j.get<long>());
  throw FormatError("coefficient: expected a string such as \"1/2+1/3i\"");
}

}  // namespace

json series_to_json(const SparseSeries& f) {
  const Arithmetic mode = f.mode();
  json coeffs = json::array();
  for (const auto& [e, c] : f.terms()) {
    json row = json::array({e});
    push_value(row, mode, c);
    coeffs.push_back(std::move(row));
  }
  return json{{"mode", to_string(mode)}, {"valid_degree", f.valid_degree()}, {"coeffs", std::move(coeffs)}};
}

SparseSeries series_from_json(const json& j) {
  const Arithmetic mode = parse_mode(field(j, "mode"));
  const Degree n = require_int(field(j, "valid_degree"), "valid_degree");
  if (n < 0) throw FormatError("valid_degree must be nonnegative");
  const json& coeffs = field(j, "coeffs");
  if (!coeffs.is_array()) throw FormatError("coeffs: expected an array");
  SparseSeries out(n);
  std::set<std::int64_t> seen;
  for (const auto& row : coeffs) {
    if (!row.is_array() || row.size() != 3) throw FormatError("coeffs entries must be [exponent, re, im]");
    const std::int64_t e = require_int(row[0], "exponent");
    if (e < 0) throw FormatError("negative exponent " + std::to_string(e));
    if (e > n) throw FormatError("exponent " + std::to_string(e) + " above valid_degree");
    if (!seen.insert(e).second) throw FormatError("duplicate exponent " + std::to_string(e));
    out.add_term(e, read_value(mode, row[1], row[2]));
  }
  return out;
}

json bi_series_to_json(const BiSeries& f) {
  Arithmetic mode = Arithmetic::Exact;
  for (const auto& [key, c] : f.terms()) mode = combine(mode, c.mode());
  json entries = json::array();
  for (const auto& [key, c] : f.terms()) {
    json row = json::array({key.first, key.second});
    push_value(row, mode, c);
    entries.push_back(std::move(row));
  }
  return json{{"mode", to_string(mode)},
              {"valid_degree_z", f.valid_degree_z()},
              {"valid_degree_w", f.valid_degree_w()},
              {"entries", std::move(entries)}};
}

BiSeries bi_series_from_json(const json& j) {
  const Arithmetic mode = j.contains("mode") ? parse_mode(j["mode"]) : Arithmetic::Exact;
  const Degree nz = require_int(field(j, "valid_degree_z"), "valid_degree_z");
  const Degree nw = require_int(field(j, "valid_degree_w"), "valid_degree_w");
  if (nz < 0 || nw < 0) throw FormatError("valid degrees must be nonnegative");
  const json& entries = field(j, "entries");
  if (!entries.is_array()) throw FormatError("entries: expected an array");
  BiSeries out(nz, nw);
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  for (const auto& row : entries) {
    if (!row.is_array() || row.size() != 4) throw FormatError("entries must be [n, m, re, im]");
    const std::int64_t n = require_int(row[0], "n");
    const std::int64_t m = require_int(row[1], "m");
    if (n < 0 || m < 0 || n > nz || m > nw) throw FormatError("entry outside the valid rectangle");
    if (!seen.insert({n, m}).second) throw FormatError("duplicate entry");
    out.add_term(n, m, read_value(mode, row[2], row[3]));
  }
  return out;
}

json trig_poly_to_json(const TrigPoly& f) {
  json coeffs = json::array();
  for (const auto& [n, c] : f.terms()) coeffs.push_back(json::array({n, c.real(), c.imag()}));
  return json{{"band_limit", f.band_limit()}, {"coeffs", std::move(coeffs)}};
}

TrigPoly trig_poly_from_json(const json& j) {
  const json& coeffs = field(j, "coeffs");
  if (!coeffs.is_array()) throw FormatError("coeffs: expected an array");
  std::optional<std::int64_t> band;
  if (j.contains("band_limit")) band = require_int(j["band_limit"], "band_limit");
  TrigPoly out;
  std::set<std::int64_t> seen;
  for (const auto& row : coeffs) {
    if (!row.is_array() || row.size() != 3) throw FormatError("coeffs entries must be [frequency, re, im]");
    const std::int64_t n = require_int(row[0], "frequency");
    if (band && std::abs(n) > *band) throw FormatError("frequency " + std::to_string(n) + " exceeds band_limit");
    if (!seen.insert(n).second) throw FormatError("duplicate frequency " + std::to_string(n));
    out.add_term(n, {float_part(row[1]), float_part(row[2])});
  }
  return out;
}

json term_to_json(const ProgressionTerm& t) {
  json params;
  std::string kind;
  if (t.is_g()) {
    const auto& s = t.as_g();
    kind = "G";
    params = {{"k", s.k}, {"l", s.l}, {"lambda", s.lambda.to_string()}, {"beta", rational_to_string(s.beta)}};
  } else {
    const auto& s = t.as_psi();
    kind = "PSI";
    params = {{"l", s.offset}, {"m", s.step}, {"order", s.order}};
  }
  return json{{"kind", kind}, {"params", std::move(params)}, {"scalar", t.scalar.to_string()}};
}

ProgressionTerm term_from_json(const json& j) {
  const json& kind = field(j, "kind");
  if (!kind.is_string()) throw FormatError("kind: expected \"G\" or \"PSI\"");
  const json& params = field(j, "params");
  const Coefficient scalar = j.contains("scalar") ? parse_coefficient(j["scalar"]) : Coefficient(1);
  if (scalar.is_zero()) throw FormatError("term scalar must be nonzero");
  try {
    if (kind == "G") {
      const Coefficient lambda = parse_coefficient(field(params, "lambda"));
      const Rational beta = params.contains("beta") ? exact_part(params["beta"]) : Rational(1);
      return ProgressionTerm::g(require_int(field(params, "k"), "k"), require_int(field(params, "l"), "l"), lambda,
                                beta, scalar);
    }
    if (kind == "PSI") {
      const std::int64_t order = require_int(field(params, "order"), "order");
      if (order < 0) throw FormatError("order must be nonnegative");
      return ProgressionTerm::psi(require_int(field(params, "l"), "l"), require_int(field(params, "m"), "m"),
                                  static_cast<std::uint64_t>(order), scalar);
    }
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  throw FormatError("kind: expected \"G\" or \"PSI\"");
}

json terms_to_json(const std::vector<ProgressionTerm>& terms) {
  json list = json::array();
  for (const auto& t : terms) list.push_back(term_to_json(t));
  return json{{"terms", std::move(list)}};
}

std::vector<ProgressionTerm> terms_from_json(const json& j) {
  const json& list = field(j, "terms");
  if (!list.is_array()) throw FormatError("terms: expected an array");
  std::vector<ProgressionTerm> out;
  for (const auto& t : list) out.push_back(term_from_json(t));
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace collatz
