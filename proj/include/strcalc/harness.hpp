#pragma once

// Command plumbing shared by the strtool binary and the Python module:
// configuration, verification suites and JSON/text reports.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "strcalc/independence.hpp"

namespace strcalc {

enum class OutputFormat { Json, Text };

struct RunConfig {
  std::string command;  // logogram | verify | classify | dump
  std::optional<EchelonSpec> echelon;
  /// Variable count for --formula when no full echelon is given.
  std::optional<int> variables;
  std::optional<std::string> e_file;
  std::optional<std::string> f_file;
  std::vector<std::string> region_files;
  std::uint64_t budget = kDefaultCandidateBudget;
  std::uint64_t seed = 1;
  std::uint64_t samples = 1000;
  int cap = 6;
  std::string cache_dir = ".strtool-cache";
  bool use_cache = true;
  OutputFormat format = OutputFormat::Json;
  bool reduced_only = false;
  bool ignore_bewitched = false;
  int max_subset = 4;
  std::string suite = "all";
  std::optional<std::string> string;
  std::optional<std::string> formula;
  unsigned threads = 1;
  bool timings = false;

  /// Throws PreconditionError on non-positive budgets or bad values.
  void validate() const;
  nlohmann::ordered_json to_json() const;
};

/// Cache directory: $STRTOOL_CACHE when set, else ".strtool-cache".
std::string default_cache_dir();

struct CheckResult {
  std::string name;
  bool holds = false;
  bool partial = false;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  std::optional<std::string> counterexample;
  double elapsed = 0;
};

struct VerificationReport {
  std::string command;
  nlohmann::ordered_json config;
  std::vector<CheckResult> checks;
  std::vector<std::string> findings;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();

  /// AND of check holds; partial checks never pass.
  bool pass() const noexcept;
  nlohmann::ordered_json to_json(bool timings = false) const;
  std::string to_text(bool timings = false) const;
  std::string render(OutputFormat format, bool timings = false) const;
};

inline const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> suites{"closure", "logogram", "sat", "theorem8",
                                               "regions", "events",   "all"};
  return suites;
}

/// Echelon when given, else the E/F (and optional region) files.
DecisionProblem load_problem(const RunConfig& config);
LogogramOptions logogram_options(const RunConfig& config);

VerificationReport run_logogram(const RunConfig& config);
/// Throws PreconditionError for an unknown suite.
VerificationReport run_verify(const RunConfig& config);
VerificationReport run_classify(const RunConfig& config);
/// Language file text for E, F or one region of an echelon (config.string
/// selects "E", "F" or "region:<i>").
std::string run_dump(const RunConfig& config);

/// The toy problem E = {0,1}^2, F = {01, 10, 11} with singleton regions,
/// whose reduced logogram consists of two wizards.
DecisionProblem toy_wizard_problem();

}  // namespace strcalc
