#include "doctest.h"

#include <cstdlib>
#include <filesystem>

#include "strcalc/harness.hpp"

using namespace strcalc;

namespace {

RunConfig verify_config(const std::string& suite, int n, int m) {
  RunConfig c;
  c.command = "verify";
  c.suite = suite;
  c.echelon = EchelonSpec{n, m};
  c.use_cache = false;
  c.samples = 50;
  return c;
}

const CheckResult* find_check(const VerificationReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("config validation") {
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  c.budget = 0;
  CHECK_THROWS_AS(c.validate(), PreconditionError);
  c = RunConfig{};
  c.max_subset = 1;
  CHECK_THROWS_AS(c.validate(), PreconditionError);
  c = RunConfig{};
  c.echelon = EchelonSpec{0, 1};
  CHECK_THROWS_AS(c.validate(), PreconditionError);
  c = RunConfig{};
  c.cap = 13;
  CHECK_THROWS_AS(c.validate(), PreconditionError);
}

TEST_CASE("cache directory follows the environment") {
  ::setenv("STRTOOL_CACHE", "/tmp/strcalc-env-cache", 1);
  CHECK(default_cache_dir() == "/tmp/strcalc-env-cache");
  ::unsetenv("STRTOOL_CACHE");
  CHECK(default_cache_dir() == ".strtool-cache");
}

TEST_CASE("unknown suites are rejected") {
  auto c = verify_config("nope", 1, 1);
  CHECK_THROWS_AS(run_verify(c), PreconditionError);
}

TEST_CASE("sat suite on (2,2)") {
  const auto r = run_verify(verify_config("sat", 2, 2));
  CHECK(r.pass());
  const auto* w = find_check(r, "sat.wizards");
  REQUIRE(w != nullptr);
  CHECK(w->holds);
  CHECK(w->details["wizards"] == 0);
  const auto text = r.to_text();
  CHECK(text.find("wizards: 0") != std::string::npos);
}

TEST_CASE("report json layout") {
  const auto r = run_verify(verify_config("events", 2, 2));
  const auto j = r.to_json();
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"schema", "tool", "version", "command", "config", "checks", "findings",
                                         "data", "pass"});
  CHECK(j["schema"] == 1);
  CHECK(j["version"] == kToolVersion);
  CHECK(j["pass"] == r.pass());
  for (const auto& c : j["checks"]) CHECK_FALSE(c.contains("elapsed"));
  for (const auto& c : r.to_json(true)["checks"]) CHECK(c.contains("elapsed"));
}

TEST_CASE("reports are deterministic") {
  auto c = verify_config("closure", 2, 2);
  c.seed = 7;
  CHECK(run_verify(c).to_json().dump() == run_verify(c).to_json().dump());
  c.seed = 8;
  CHECK(run_verify(c).pass());
}

TEST_CASE("region suite modes") {
  auto c = verify_config("regions", 2, 2);
  c.ignore_bewitched = true;
  const auto filtered = run_verify(c);
  CHECK(filtered.pass());
  CHECK(filtered.checks.size() == 3);
  CHECK(filtered.findings.size() == 1);
  c.ignore_bewitched = false;
  CHECK_FALSE(run_verify(c).pass());
}

TEST_CASE("logogram command") {
  RunConfig c;
  c.command = "logogram";
  c.echelon = EchelonSpec{2, 2};
  c.reduced_only = true;
  c.use_cache = false;
  const auto r = run_logogram(c);
  CHECK(r.pass());
  CHECK(r.data["reduced_count"] == 12);
  CHECK(r.data["reduced"].size() == 12);
  CHECK(r.data["consistent_selections"] == 12);

  c.echelon = EchelonSpec{1, 1};
  c.reduced_only = true;
  CHECK(run_logogram(c).data["reduced"].size() == 2);

  c.echelon = EchelonSpec{4, 4};
  CHECK_THROWS_AS(run_logogram(c), BudgetExceeded);
}

TEST_CASE("logogram command with the cache") {
  const auto dir = std::filesystem::temp_directory_path() / "strcalc_harness_cache";
  std::filesystem::remove_all(dir);
  RunConfig c;
  c.command = "logogram";
  c.echelon = EchelonSpec{2, 1};
  c.cache_dir = dir.string();
  const auto first = run_logogram(c).to_json().dump();
  CHECK(std::filesystem::exists(dir));
  CHECK(run_logogram(c).to_json().dump() == first);
  std::filesystem::remove_all(dir);
}

TEST_CASE("classify command") {
  RunConfig c;
  c.command = "classify";
  c.echelon = EchelonSpec{1, 1};
  c.string = "____1";
  auto r = run_classify(c);
  CHECK(r.pass());
  CHECK(r.data["verdict"]["kind"] == "ProperWitness");

  c.string = "1";
  CHECK_FALSE(run_classify(c).pass());
  c.string = "9";
  CHECK_THROWS_AS(run_classify(c), ParseError);

  RunConfig f;
  f.command = "classify";
  f.variables = 4;
  f.formula = "1,3,-4;2,-3";
  r = run_classify(f);
  CHECK(r.data["size"] == 4);
  CHECK(r.data["effective_size"] == 2);
  CHECK(r.data["bewitched"] == true);
  CHECK(r.data["encoded"] == "0000100110120120");
  CHECK(r.data["included_logogram_strings"].size() > 0);
  for (const auto& v : r.data["included_logogram_strings"]) CHECK(v["kind"] == "ImproperWitness");
}

TEST_CASE("dump command") {
  RunConfig c;
  c.command = "dump";
  c.echelon = EchelonSpec{1, 1};
  CHECK(run_dump(c).find("01010") != std::string::npos);
  c.string = "F";
  CHECK(run_dump(c).find("01010") == std::string::npos);
  c.string = "region:2";
  CHECK(run_dump(c).find("01011") != std::string::npos);
  c.string = "region:3";
  CHECK_THROWS_AS(run_dump(c), PreconditionError);
  c.string = "G";
  CHECK_THROWS_AS(run_dump(c), PreconditionError);
}

TEST_CASE("toy wizard problem shape") {
  const auto p = toy_wizard_problem();
  CHECK_NOTHROW(p.validate());
  REQUIRE(p.regions.has_value());
  CHECK(p.regions->size() == 3);
  CHECK(p.F.size() == 3);
}

}  // TEST_SUITE
