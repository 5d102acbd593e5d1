#include <doctest.h>

#include <filesystem>
#include <random>

#include "collatz/identities.hpp"
#include "collatz/report.hpp"
#include "collatz/resolvent.hpp"
#include "collatz/serialization.hpp"
#include "collatz/suites.hpp"

using namespace collatz;
using nlohmann::json;

TEST_CASE("series documents round-trip bit-exactly") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) {
    SparseSeries f = random_exact_polynomial(rng, 80).truncated(80 + i);
    const json j = series_to_json(f);
    CHECK(series_from_json(j) == f);
    CHECK(series_to_json(series_from_json(json::parse(j.dump()))).dump() == j.dump());
  }
  const SparseSeries poly = SparseSeries{{0, Coefficient(Rational(-7, 3), Rational(1, 2))}};
  CHECK(series_from_json(series_to_json(poly)) == poly);
  CHECK(series_to_json(poly)["coeffs"][0] == json::array({0, "-7/3", "1/2"}));
}

TEST_CASE("float series documents") {
  SparseSeries f(4);
  f.add_term(1, Coefficient(std::complex<double>(0.1, -2.5)));
  const json j = series_to_json(f);
  CHECK(j["mode"] == "float");
  CHECK(series_from_json(j) == f);
}

TEST_CASE("malformed series documents") {
  const auto bad = [](const char* text) { return series_from_json(json::parse(text)); };
  CHECK_THROWS_AS(bad(R"({"mode":"exact","valid_degree":4,"coeffs":[[1,"1","0"],[1,"2","0"]]})"), FormatError);
  CHECK_THROWS_AS(bad(R"({"mode":"exact","valid_degree":4,"coeffs":[[5,"1","0"]]})"), FormatError);
  CHECK_THROWS_AS(bad(R"({"mode":"exact","valid_degree":4,"coeffs":[[-1,"1","0"]]})"), FormatError);
  CHECK_THROWS_AS(bad(R"({"mode":"exact","valid_degree":4,"coeffs":[[1,"1/0","0"]]})"), FormatError);
  CHECK_THROWS_AS(bad(R"({"mode":"exact","valid_degree":4,"coeffs":[[1,0.5,0]]})"), FormatError);
  CHECK_THROWS_AS(bad(R"({"mode":"weird","valid_degree":4,"coeffs":[]})"), FormatError);
  CHECK_THROWS_AS(bad(R"({"mode":"exact","coeffs":[]})"), FormatError);
  CHECK_THROWS_AS(bad(R"([1,2,3])"), FormatError);
}

TEST_CASE("bivariate documents") {
  const BiSeries b = build_resolvent(PhiSpec::identity(), 12, 5);
  CHECK(bi_series_from_json(json::parse(bi_series_to_json(b).dump())) == b);
  CHECK_THROWS_AS(bi_series_from_json(json::parse(
                      R"({"valid_degree_z":2,"valid_degree_w":2,"entries":[[1,1,"1","0"],[1,1,"1","0"]]})")),
                  FormatError);
}

TEST_CASE("trigonometric polynomial documents") {
  std::mt19937_64 rng(3);
  const TrigPoly f = random_trig_poly(rng, 16, 9);
  CHECK(trig_poly_from_json(json::parse(trig_poly_to_json(f).dump())) == f);
  CHECK_THROWS_AS(trig_poly_from_json(json::parse(R"({"band_limit":2,"coeffs":[[3,1,0]]})")), FormatError);
}

TEST_CASE("term documents") {
  const std::vector<ProgressionTerm> terms{
      ProgressionTerm::g(2, 4, Coefficient::parse("1/2+1/3i"), Rational(1, 3), Coefficient(Rational(5, 7))),
      ProgressionTerm::psi(0, 1, 2)};
  const auto back = terms_from_json(json::parse(terms_to_json(terms).dump()));
  REQUIRE(back.size() == 2);
  CHECK(back[0].key() == terms[0].key());
  CHECK(back[0].scalar == terms[0].scalar);
  CHECK(back[1].key() == terms[1].key());
  CHECK_THROWS_AS(term_from_json(json::parse(R"({"kind":"X","params":{}})")), FormatError);
  CHECK_THROWS_AS(term_from_json(json::parse(R"({"kind":"G","params":{"k":0,"l":0,"lambda":"1"}})")), FormatError);
}

TEST_CASE("files") {
  const auto path = std::filesystem::temp_directory_path() / "collatz_series_roundtrip.json";
  const SparseSeries f{{3, Coefficient(Rational(1, 3))}};
  write_json_file(path, series_to_json(f));
  CHECK(series_from_json(read_json_file(path)) == f);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_json_file("/nonexistent/file.json"), FormatError);
}

TEST_CASE("reports") {
  VerificationReport r;
  r.suite = "demo";
  compare_series(r, SparseSeries{{2, Coefficient(1)}}, SparseSeries{{2, Coefficient(Rational(1, 2))}});
  r.finalize();
  CHECK(r.status == Status::Fail);
  REQUIRE(r.witnesses.size() == 1);
  CHECK(r.witnesses[0].location == "z^2");
  const json j = to_json(r, false);
  CHECK(j["status"] == "FAIL");
  CHECK(j["residual"] == "1/2");
  CHECK_FALSE(j.contains("elapsed"));

  VerificationReport ok;
  compare_series(ok, SparseSeries{{2, Coefficient(1)}}, SparseSeries{{2, Coefficient(1)}});
  ok.finalize();
  CHECK(ok.passed());

  VerificationReport flt;
  flt.tolerance = 1e-6;
  compare_series(flt, SparseSeries{{1, Coefficient(1.0)}}, SparseSeries{{1, Coefficient(1.0 + 1e-9)}});
  flt.finalize();
  CHECK(flt.arithmetic == Arithmetic::Float);
  CHECK(flt.passed());
}

TEST_CASE("suite configuration") {
  const SuiteConfig c = suite_config_from_json(
      json::parse(R"({"degree": 50, "lambdas": ["1/2", "-1/3+i"], "tolerance": 1e-8, "cases": 5, "seed": 9})"));
  CHECK(c.degree == 50);
  REQUIRE(c.lambdas);
  CHECK(c.lambdas->at(1) == Coefficient::parse("-1/3+i"));
  CHECK(c.cases == 5);
  CHECK_THROWS_AS(suite_config_from_json(json::parse(R"({"bogus": 1})")), FormatError);
  CHECK_THROWS_AS(suite_config_from_json(json::parse(R"({"lambdas": ["x"]})")), FormatError);
}

TEST_CASE("suite registry") {
  for (const char* name : {"adjoint", "expansive", "kernel", "factorization", "fixedpoint", "fp2", "polbasis",
                           "funceq", "resolvent", "measure", "inequality", "progressions"}) {
    CHECK_MESSAGE(find_suite(name) != nullptr, name);
  }
  CHECK(find_suite("nope") == nullptr);
  CHECK_THROWS_AS(run_suites({"nope"}, {}), std::invalid_argument);

  SuiteConfig small;
  small.degree = 40;
  small.cases = 5;
  const auto serial = run_suites({"adjoint", "kernel", "funceq"}, small, 1);
  const auto parallel = run_suites({"adjoint", "kernel", "funceq"}, small, 3);
  REQUIRE(serial.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(serial[i].name == parallel[i].name);
    CHECK(serial[i].passed());
    REQUIRE(serial[i].reports.size() == parallel[i].reports.size());
    for (std::size_t k = 0; k < serial[i].reports.size(); ++k) {
      CHECK(to_json(serial[i].reports[k], false) == to_json(parallel[i].reports[k], false));
    }
  }
}
