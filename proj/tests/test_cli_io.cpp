#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "beamtrain/config.hpp"
#include "beamtrain/experiment.hpp"
#include "beamtrain/kernels.hpp"

using namespace beamtrain;
using Catch::Matchers::ContainsSubstring;

namespace {

std::vector<std::string> violations_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.violations();
  }
  return {};
}

bool any_contains(const std::vector<std::string>& v, const std::string& needle) {
  for (const auto& s : v)
    if (s.find(needle) != std::string::npos) return true;
  return false;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "beamtrain_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

ExperimentConfig small_config() {
  ExperimentConfig c = parse_config(R"({"trials": 300, "master_seed": 4,
                                        "snr_db": [2, -6], "budget": [2000, 1280]})");
  return c;
}

}  // namespace

TEST_CASE("config defaults", "[config]") {
  const ExperimentConfig c = parse_config(R"({"trials": 10, "master_seed": 3})");
  CHECK(c.l_beams == 64);
  CHECK(c.phi == 0.47);
  CHECK(c.resolved_phi() == 0.47);
  CHECK(c.alpha == Complex(1.0, 0.0));
  CHECK(c.snr_db == std::vector<double>{-2.0});
  CHECK(c.budget == std::vector<std::uint64_t>{1280});
  CHECK(c.algorithms.size() == 2);
  CHECK(c.output_path == "results.csv");
  CHECK(c.workers == 0);
}

TEST_CASE("config accepts comments and complex alpha", "[config]") {
  const ExperimentConfig c = parse_config(R"({
    // path coefficient
    "alpha": [0.5, -0.5],
    "algorithms": ["adaptive"],
    "trials": 10, "master_seed": 3
  })");
  CHECK(c.alpha == Complex(0.5, -0.5));
  CHECK(c.algorithms == std::vector<Algorithm>{Algorithm::adaptive});
}

TEST_CASE("config violations", "[config]") {
  CHECK(any_contains(violations_of(R"({"trials": 0, "master_seed": 1})"), "trials"));

  const auto two = violations_of(R"({"trials": 0, "master_seed": 1, "l_beams": 1})");
  CHECK(two.size() == 2);
  CHECK(any_contains(two, "trials"));
  CHECK(any_contains(two, "l_beams"));

  const auto unknown = violations_of(R"({"trials": 5, "master_seed": 1, "trails": 5})");
  CHECK(unknown == std::vector<std::string>{"trails: unknown key"});

  const auto missing = violations_of("{}");
  CHECK(any_contains(missing, "trials: required key is missing"));
  CHECK(any_contains(missing, "master_seed: required key is missing"));

  const auto typed = violations_of(R"({"trials": 5, "master_seed": 1, "budget": [1280, "x"]})");
  REQUIRE(typed.size() == 1);
  CHECK_THAT(typed[0], ContainsSubstring("budget[1]"));

  const auto algo = violations_of(R"({"trials": 5, "master_seed": 1, "algorithms": ["greedy"]})");
  CHECK(any_contains(algo, "greedy"));

  CHECK(any_contains(violations_of(R"({"trials": 5, "master_seed": 1, "budget": [10]})"),
                     "budget[0]"));
  CHECK(any_contains(violations_of(R"({"trials": 5, "master_seed": 1, "phi": 2.0})"), "phi"));
  CHECK(any_contains(violations_of(R"({"trials": 5, "master_seed": 1, "snr_db": []})"), "snr_db"));
  CHECK(any_contains(violations_of("[1, 2]"), "document"));
  CHECK(any_contains(violations_of("{ not json"), "document"));
  CHECK_THROWS_AS(load_config("/nonexistent/dir/config.json"), ConfigError);
}

TEST_CASE("random angle of arrival", "[config]") {
  const auto a = parse_config(R"({"trials": 5, "master_seed": 1, "phi": "random"})");
  const auto b = parse_config(R"({"trials": 5, "master_seed": 2, "phi": "random"})");
  const auto c = parse_config(R"({"trials": 5, "master_seed": 2, "phi": "random", "phi_seed": 1})");
  CHECK_FALSE(a.phi.has_value());
  CHECK(std::abs(a.resolved_phi()) <= std::numbers::pi / 2);
  CHECK(a.resolved_phi() == a.resolved_phi());
  CHECK(a.resolved_phi() != b.resolved_phi());
  CHECK(c.resolved_phi() == a.resolved_phi());
}

TEST_CASE("experiment rows", "[cli_io]") {
  const auto rows = run_experiment(small_config(), {2});
  REQUIRE(rows.size() == 8);
  // exhaustive first, then ascending snr, then ascending budget
  CHECK(rows[0].algorithm == Algorithm::exhaustive);
  CHECK(rows[0].snr_db == -6.0);
  CHECK(rows[0].budget == 1280);
  CHECK(rows[1].budget == 2000);
  CHECK(rows[2].snr_db == 2.0);
  CHECK(rows[4].algorithm == Algorithm::adaptive);
  for (const auto& r : rows) {
    CHECK(r.status == "ok");
    CHECK(r.trials == 300u);
    REQUIRE(r.theory_exponent);
    CHECK(*r.theory_exponent < 0.0);
    CHECK(*r.ci_low <= *r.p_hat);
    CHECK(*r.p_hat <= *r.ci_high);
  }
}

TEST_CASE("degenerate ground truth produces flagged rows", "[cli_io]") {
  ExperimentConfig c = small_config();
  c.alpha = 0.0;
  const auto rows = run_experiment(c);
  REQUIRE(rows.size() == 8);
  for (const auto& r : rows) {
    CHECK(r.status == "degenerate");
    CHECK_FALSE(r.p_hat);
    CHECK_FALSE(r.theory_exponent);
  }
  std::ostringstream out;
  write_csv(rows, out);
  CHECK(parse_csv(out.str()) == rows);
}

TEST_CASE("CSV format", "[cli_io]") {
  SECTION("header is pinned") {
    CHECK(std::string(kResultHeader) ==
          "algorithm,snr_db,budget,p_hat,ci_low,ci_high,trials,theory_exponent,status");
  }
  SECTION("empty result set") {
    std::ostringstream out;
    write_csv(std::vector<ResultRow>{}, out);
    CHECK(out.str() == std::string(kResultHeader) + "\n");
    CHECK(parse_csv(out.str()).empty());
  }
  SECTION("round trip is exact") {
    ResultRow a;
    a.algorithm = Algorithm::adaptive;
    a.snr_db = -2.0;
    a.budget = 1280;
    a.p_hat = 0.1 + 0.2;
    a.ci_low = 1.0 / 3.0;
    a.ci_high = std::nextafter(0.5, 1.0);
    a.trials = 100000;
    a.theory_exponent = -8.998279e-4;
    ResultRow b;
    b.status = "odd, \"quoted\"";
    const auto path = scratch("roundtrip.csv");
    write_csv(std::vector<ResultRow>{a, b}, path);
    const auto back = read_csv(path);
    REQUIRE(back.size() == 2);
    CHECK(back[0] == b);  // exhaustive sorts first
    CHECK(back[1] == a);
    CHECK_THAT(slurp(path), ContainsSubstring("\"odd, \"\"quoted\"\"\""));
  }
  SECTION("doubles print shortest") {
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(-2.0) == "-2");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  }
  SECTION("errors") {
    CHECK_THROWS(parse_csv("wrong,header\n"));
    CHECK_THROWS(parse_csv(std::string(kResultHeader) + "\nadaptive,1\n"));
    try {
      write_csv(std::vector<ResultRow>{}, std::filesystem::path("/nonexistent/dir/out.csv"));
      FAIL("expected an I/O error");
    } catch (const std::runtime_error& e) {
      CHECK_THAT(e.what(), ContainsSubstring("/nonexistent/dir/out.csv"));
    }
  }
}

TEST_CASE("result files are byte-identical across worker counts and kernels", "[cli_io]") {
  const ExperimentConfig c = small_config();
  const auto p1 = scratch("w1.csv"), p4 = scratch("w4.csv"), ps = scratch("scalar.csv");
  write_csv(run_experiment(c, {1}), p1);
  write_csv(run_experiment(c, {4}), p4);
  const auto before = kernels::active().level;
  kernels::select(kernels::Level::scalar);
  write_csv(run_experiment(c, {3}), ps);
  kernels::select(before);
  CHECK(slurp(p1) == slurp(p4));
  CHECK(slurp(p1) == slurp(ps));
}

TEST_CASE("exponents report", "[cli_io]") {
  const ExperimentConfig c = parse_config(R"({"trials": 1, "master_seed": 1})");
  const ExponentReport r = exponent_report(c, -2.0);
  CHECK(r.gaps.opt_index == 18);
  CHECK(r.gaps.second_best == 17);
  REQUIRE(r.hardness);
  CHECK(r.hardness->l_h == 2);
  CHECK(*r.adaptive_dominates);
  CHECK(*r.adaptive_bound < *r.exhaustive_exponent);

  std::ostringstream out;
  write_exponents(c, out);
  const std::string text = out.str();
  CHECK_THAT(text, ContainsSubstring("opt_index 18"));
  CHECK_THAT(text, ContainsSubstring("exhaustive_exponent -0.000119"));
  CHECK_THAT(text, ContainsSubstring("adaptive_bound -0.000899"));
  CHECK_THAT(text, ContainsSubstring("adaptive_dominates yes"));
  CHECK_THAT(text, ContainsSubstring("rank,beam,xi,delta"));
}

TEST_CASE("gains table", "[cli_io]") {
  const ExperimentConfig c = parse_config(R"({"trials": 1, "master_seed": 1})");
  std::ostringstream out;
  write_gains(c, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "beam,theta,gain,xi,symbols_adaptive,symbols_exhaustive,discard_phase");
  int lines = 0, survivors = 0;
  std::uint64_t adaptive_total = 0;
  while (std::getline(in, line)) {
    ++lines;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    REQUIRE(f.size() == 7);
    adaptive_total += std::stoull(f[4]);
    CHECK(f[5] == "20");
    if (f[6] == "0") ++survivors;
  }
  CHECK(lines == 64);
  CHECK(survivors == 1);
  CHECK(adaptive_total <= 1280);
}
