#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include <json.hpp>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(COLLATZ_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "collatz_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("sigma table") {
  const Run r = run("sigma --max 5");
  CHECK(r.code == 0);
  CHECK(r.out == "n,sigma\n1,0\n2,1\n3,5\n4,2\n5,4\n");
  CHECK(run("sigma --max 1").out == "n,sigma\n1,0\n");
}

TEST_CASE("sigma with a small cap") {
  const Run r = run("sigma --max 10 --cap 3 --format structured");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  std::vector<int> unresolved;
  for (const auto& row : j["rows"]) {
    if (row["sigma"] == "UNRESOLVED") unresolved.push_back(row["n"].get<int>());
  }
  CHECK(unresolved == std::vector<int>{3, 5, 6, 7, 9, 10});
}

TEST_CASE("cap from the environment") {
  const std::string cmd = "COLLATZ_CAP=3 " + std::string(COLLATZ_CLI) + " sigma --max 3";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::array<char, 256> buf{};
  std::string out;
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  pclose(pipe);
  CHECK(out == "n,sigma\n1,0\n2,1\n3,UNRESOLVED\n");
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("").code == 2);
  CHECK(run("sigma").code == 2);
  CHECK(run("sigma --max 5 --format xml").code == 2);
  CHECK(run("verify --suite nope").code == 2);
  CHECK(run("verify").code == 2);
  CHECK(run("verify --suite kernel --lambda 1/0").code == 2);
  CHECK(run("apply --op Q --input /dev/null").code == 2);
  CHECK(run("resolvent --phi squares").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("verify passes and fails with the right codes") {
  CHECK(run("verify --suite kernel --degree 1000").code == 0);
  CHECK(run("verify --suite adjoint --degree 200").code == 0);
  const Run fp2 = run("verify --suite fp2 --degree 300 --report - --omit-elapsed");
  CHECK(fp2.code == 0);
  const json j = json::parse(fp2.out);
  bool named = false;
  for (const auto& p : j["suites"][0]["reports"][0]["parameters"]) {
    named = named || (p[0] == "fixed_variant" && p[1] == "DERIVED_FORM");
  }
  CHECK(named);
  // The literal pullback iteration check fails, so the suite exits with 1.
  CHECK(run("verify --suite polbasis --degree 2000").code == 1);
}

TEST_CASE("reports are deterministic modulo timing") {
  const fs::path a = scratch("report_a.json");
  const fs::path b = scratch("report_b.json");
  REQUIRE(run("verify --suite adjoint --suite funceq --degree 60 --omit-elapsed --report " + a.string()).code == 0);
  REQUIRE(run("verify --suite funceq --suite adjoint --degree 60 --jobs 2 --omit-elapsed --report " + b.string())
              .code == 0);
  const json ja = json::parse(slurp(a));
  const json jb = json::parse(slurp(b));
  CHECK(ja["suites"][0] == jb["suites"][1]);
  CHECK(ja["suites"][1] == jb["suites"][0]);
  const fs::path c = scratch("report_c.json");
  REQUIRE(run("verify --suite adjoint --suite funceq --degree 60 --omit-elapsed --report " + c.string()).code == 0);
  CHECK(slurp(a) == slurp(c));

  const fs::path d = scratch("report_d.json");
  REQUIRE(run("verify --suite kernel --degree 20 --report " + d.string()).code == 0);
  json jd = json::parse(slurp(d));
  CHECK(jd["suites"][0]["reports"][0].contains("elapsed"));
}

TEST_CASE("verify with a configuration file") {
  const fs::path cfg = scratch("config.json");
  write(cfg, R"({"degree": 64, "lambdas": ["1/3", "-2/5"], "cases": 10})");
  CHECK(run("verify --suite funceq --config " + cfg.string()).code == 0);
  write(cfg, R"({"degree": 64, "unknown": true})");
  CHECK(run("verify --suite funceq --config " + cfg.string()).code == 2);
}

TEST_CASE("apply the pushforward to a kernel element") {
  const fs::path in = scratch("kernel.json");
  const fs::path out = scratch("kernel_out.json");
  write(in, R"({"mode":"exact","valid_degree":9223372036854775807,"coeffs":[[1,"1","0"],[4,"-1","0"]]})");
  REQUIRE(run("apply --op T --input " + in.string() + " --out " + out.string()).code == 0);
  const json j = json::parse(slurp(out));
  CHECK(j["coeffs"].empty());
  CHECK(j["mode"] == "exact");
}

TEST_CASE("apply round-trips exactly") {
  const fs::path in = scratch("rt.json");
  const fs::path out = scratch("rt_out.json");
  write(in, R"({"mode":"exact","valid_degree":40,"coeffs":[[3,"1/3","-2/7"],[10,"5","0"],[40,"-1/9","1"]]})");
  REQUIRE(run("apply --op F --input " + in.string() + " --power 0 --out " + out.string()).code == 0);
  CHECK(json::parse(slurp(out)) == json::parse(slurp(in)));
  REQUIRE(run("apply --op Sinv --input " + in.string() + " --out " + out.string()).code == 0);
  const fs::path back = scratch("rt_back.json");
  REQUIRE(run("apply --op T --input " + out.string() + " --out " + back.string()).code == 0);
  CHECK(json::parse(slurp(back)) == json::parse(slurp(in)));
}

TEST_CASE("malformed input files exit with 2") {
  const fs::path in = scratch("bad.json");
  write(in, R"({"mode":"exact","valid_degree":4,"coeffs":[[1,"1","0"],[1,"1","0"]]})");
  CHECK(run("apply --op T --input " + in.string()).code == 2);
  write(in, "not json");
  CHECK(run("apply --op T --input " + in.string()).code == 2);
  CHECK(run("apply --op T --input /nonexistent.json").code == 2);
  CHECK(run("rewrite --input " + in.string()).code == 2);
}

TEST_CASE("resolvent file") {
  const fs::path out = scratch("resolvent.json");
  REQUIRE(run("resolvent --phi delta1 --nz 50 --nw 10 --out " + out.string()).code == 0);
  const json j = json::parse(slurp(out));
  CHECK(j["valid_degree_z"] == 50);
  bool found = false;
  for (const auto& e : j["entries"]) found = found || (e[0] == 3 && e[1] == 5 && e[2] == "1");
  CHECK(found);
}

TEST_CASE("orbit of a fractional exponent") {
  const Run r = run("orbit --alpha 1/3 --steps 5");
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    const auto c3 = line.find(',', c2 + 1);
    CHECK(std::abs(std::stod(line.substr(c2 + 1, c3 - c2 - 1)) - 1.0) < 1e-9);
  }
  CHECK(rows == 6);
}

TEST_CASE("constructors and symbolic rewriting") {
  const Run f = run("build --family f --lambda 1/2 --m 3 --degree 64");
  REQUIRE(f.code == 0);
  CHECK(json::parse(f.out)["coeffs"][0] == json::array({3, "1", "0"}));
  CHECK(run("build --family char --lambda 1/2 --reduced --degree 4").code == 0);
  CHECK(run("build --family unknown").code == 2);
  CHECK(run("build --family pol --k 3 --degree 100 --cap 2").code == 2);

  const fs::path terms = scratch("terms.json");
  write(terms, R"({"terms":[{"kind":"PSI","params":{"l":0,"m":1,"order":2},"scalar":"1"}]})");
  const Run r = run("rewrite --input " + terms.string());
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["terms"].size() == 2);
  const Run e = run("rewrite --input " + terms.string() + " --expand 10");
  REQUIRE(e.code == 0);
  CHECK(json::parse(e.out)["coeffs"][1] == json::array({5, "2", "0"}));
}

TEST_CASE("circle pushforward") {
  const fs::path in = scratch("trig.json");
  write(in, R"({"band_limit":3,"coeffs":[[0,3,0],[2,2,0],[-3,1,0]]})");
  const Run r = run("circle --input " + in.string());
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["coeffs"][0] == json::array({-4, 1.0, 0.0}));
  CHECK(run("circle --random 16 --seed 4").code == 0);
  CHECK(run("circle --input " + in.string() + " --grid 6").code == 2);
}
