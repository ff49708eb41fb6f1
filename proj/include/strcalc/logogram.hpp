#pragma once

// Brute-force logograms. For a reference set E and target F, the logogram is
// the set of strings g occurring in E such that every E-word including g lies
// in the relative cylindrification of F; the reduced logogram is its set of
// minimal elements.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "strcalc/language.hpp"

namespace strcalc {

/// One SAT echelon: n variables, m clauses.
struct EchelonSpec {
  int n = 1;
  int m = 1;

  int prefix_length() const noexcept { return n + m + 2; }
  int word_length() const noexcept { return prefix_length() + n * m; }
  /// Position of clause j (1..m), variable i (1..n).
  int body_position(int clause, int var) const noexcept {
    return prefix_length() + (clause - 1) * n + var;
  }

  friend bool operator==(const EchelonSpec&, const EchelonSpec&) = default;
};

struct DecisionProblem {
  FiniteLanguage E;
  FiniteLanguage F;
  /// Solution regions, indexed from 1 in reports.
  std::optional<std::vector<FiniteLanguage>> regions;
  /// Set when the problem is an enumerated SAT echelon.
  std::optional<EchelonSpec> echelon;

  /// F subset of E; regions subsets of F whose union is F.
  void validate() const;
};

inline constexpr std::uint64_t kDefaultCandidateBudget = std::uint64_t{1} << 24;  // 4^12

struct LogogramOptions {
  /// Restrict candidates to these positions. Default: every position of E
  /// except, when restrict_constant_prefix is set, the leading positions on
  /// which all E-words agree.
  std::optional<std::vector<int>> candidate_positions;
  bool restrict_constant_prefix = true;
  std::uint64_t budget = kDefaultCandidateBudget;
  unsigned threads = 1;
};

struct LogogramResult {
  StringSet full;
  StringSet reduced;
  std::vector<int> candidate_positions;
  std::uint64_t candidate_space_size = 0;
  std::chrono::duration<double> elapsed{};
};

/// Positions 1..k on which every word of E is defined and equal.
std::vector<int> constant_prefix(const FiniteLanguage& E);

/// (|alphabet| + 1) ^ positions, saturating at UINT64_MAX.
std::uint64_t candidate_space(std::size_t alphabet_size, std::size_t positions);

/// E^F: F itself when E is prefix-free, else its cylindrification in E.
FiniteLanguage relative_target(const FiniteLanguage& E, const FiniteLanguage& F);

/// Relative logogram of problem.F to base problem.E.
LogogramResult log_rel(const DecisionProblem& problem, const LogogramOptions& options = {});
LogogramResult log_rel(const FiniteLanguage& E, const FiniteLanguage& F,
                       const LogogramOptions& options = {});

/// Absolute logogram within a capped universe: strings whose every including
/// universe word lies in cylindrify(F, universe).
LogogramResult log_abs(const FiniteLanguage& F, const FiniteLanguage& universe,
                       const LogogramOptions& options = {});

/// Log(Exp(H)) within a capped universe.
StringSet log_exp(const StringSet& H, const FiniteLanguage& universe,
                  const LogogramOptions& options = {});

struct LogExpReport {
  bool extensive = true;
  bool monotone = true;
  bool idempotent = true;
  std::uint64_t samples = 0;
  std::optional<std::string> counterexample;
  /// (H, K, collective string) with LogExp(H | K) strictly above LogExp(H) | LogExp(K).
  std::optional<std::string> non_topological_witness;

  bool holds() const noexcept { return extensive && monotone && idempotent; }
};

/// Checks extensiveness, monotonicity and idempotence of LogExp on H and on
/// H | K for the given pair, and reports whether the pair is a
/// non-topological witness.
LogExpReport logexp_closure_check(const StringSet& H, const StringSet& K,
                                  const FiniteLanguage& universe);
/// Same over random H, K drawn from the capped universe over alphabet.
LogExpReport logexp_closure_check(const Alphabet& alphabet, int cap, std::uint64_t samples,
                                  std::uint64_t seed);
/// Exhaustive search over pairs of singletons {h}, {k} in the capped universe
/// for a collective string; returns the first in canonical order.
std::optional<std::string> find_non_topological(const Alphabet& alphabet, int cap);

struct Theorem7Result {
  bool full_holds = false;
  bool reduced_holds = false;

  bool holds() const noexcept { return full_holds && reduced_holds; }
};

/// Exp_E(Log_E(F)) = E^F, for the full and the reduced logogram.
Theorem7Result verify_theorem7(const DecisionProblem& problem, const LogogramResult& logogram);
bool verify_theorem7(const DecisionProblem& problem, const LogogramOptions& options = {});

struct CoverRegion {
  PartialString signature;
  FiniteLanguage region;
};

/// Pairs (g, Exp_E(g)) for g in H; H defaults to the reduced logogram and must
/// be a subset of it.
std::vector<CoverRegion> cover_of(const DecisionProblem& problem, const LogogramResult& logogram,
                                  const std::optional<StringSet>& H = {});

// Logogram cache: "logogram-<hash>.txt" holding a JSON header line and one
// rendered string per line, reduced members prefixed with "R ".

std::string problem_hash(const DecisionProblem& problem, const LogogramOptions& options);
std::string cache_file_name(const std::string& hash);
std::string serialize_logogram(const std::string& hash, const LogogramOptions& options,
                               const LogogramResult& result);
/// nullopt when the text is malformed or its hashes do not match.
std::optional<LogogramResult> deserialize_logogram(std::string_view text,
                                                   const std::string& expected_hash,
                                                   const Alphabet& alphabet);

struct CachedLogogram {
  LogogramResult result;
  bool from_cache = false;
};

/// Loads from cache_dir when a valid entry exists, else computes and writes it.
CachedLogogram cached_log_rel(const DecisionProblem& problem, const LogogramOptions& options,
                              const std::string& cache_dir);

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace strcalc
