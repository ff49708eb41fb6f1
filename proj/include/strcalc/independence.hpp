#pragma once

// Entanglement, witness/wizard classification and the independence
// properties of a decision problem's reduced logogram.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "strcalc/logogram.hpp"

namespace strcalc {

// ---------------------------------------------------------------------------
// Entanglement

/// f entangles g relative to E: every E-word including f includes g.
/// Throws PreconditionError when f or g does not occur in E.
bool entangles(const PartialString& f, const PartialString& g, const FiniteLanguage& E);
bool entangles(const PartialString& f, const PartialString& g, const WordIndex& E);
/// Neither f entangles g nor g entangles f.
bool pairwise_independent(const PartialString& f, const PartialString& g, const FiniteLanguage& E);
bool pairwise_independent(const PartialString& f, const PartialString& g, const WordIndex& E);
/// Exp_E(H) subset of Exp_E(K). Vacuously true for empty H.
bool entangles_sets(const StringSet& H, const StringSet& K, const FiniteLanguage& E);
bool entangles_sets(const StringSet& H, const StringSet& K, const WordIndex& E);

// ---------------------------------------------------------------------------
// A problem together with its reduced logogram and cylinder masks.

class Analysis {
 public:
  explicit Analysis(DecisionProblem problem, const LogogramOptions& options = {});
  Analysis(DecisionProblem problem, LogogramResult logogram);

  const DecisionProblem& problem() const noexcept { return problem_; }
  const LogogramResult& logogram() const noexcept { return logogram_; }
  const StringSet& reduced() const noexcept { return logogram_.reduced; }
  /// Reduced logogram in canonical order; cylinder(i) belongs to members()[i].
  const std::vector<PartialString>& members() const noexcept { return members_; }
  std::optional<std::size_t> member_index(const PartialString& g) const;

  const WordIndex& index() const noexcept { return index_; }
  const WordMask& cylinder(std::size_t i) const { return cylinders_.at(i); }
  /// Mask of E^F.
  const WordMask& target() const noexcept { return target_; }

  bool has_regions() const noexcept { return problem_.regions.has_value(); }
  std::size_t region_count() const noexcept { return region_targets_.size(); }
  /// Mask of E^{F_i}, i from 0.
  const WordMask& region_target(std::size_t i) const { return region_targets_.at(i); }
  /// 1-based indices of the regions whose target contains cyl.
  std::vector<int> containing_regions(const WordMask& cyl) const;

  /// For each word of E, how many reduced-logogram cylinders contain it.
  const std::vector<std::uint32_t>& coverage() const noexcept { return coverage_; }

 private:
  void build();

  DecisionProblem problem_;
  LogogramResult logogram_;
  WordIndex index_;
  std::vector<PartialString> members_;
  std::vector<WordMask> cylinders_;
  WordMask target_;
  std::vector<WordMask> region_targets_;
  std::vector<std::uint32_t> coverage_;
};

// ---------------------------------------------------------------------------
// Witnesses and wizards

enum class WitnessKind { ProperWitness, ImproperWitness, Wizard };
const char* to_string(WitnessKind kind) noexcept;

struct StringVerdict {
  PartialString string;
  WitnessKind kind = WitnessKind::Wizard;
  std::vector<int> containing_regions;
};

/// Requires g in the reduced logogram and regions present.
StringVerdict classify(const PartialString& g, const Analysis& analysis);
std::vector<StringVerdict> classify_all(const Analysis& analysis);

/// Region reduced logograms |Log_E(F_i)|, i from 0.
std::vector<StringSet> region_logograms(const Analysis& analysis, const LogogramOptions& options = {});

struct WizardCase {
  PartialString wizard;
  /// Members of the union of region reduced logograms whose cylinders meet Exp_E(g).
  std::vector<PartialString> witnesses;
  bool union_covers = false;       // Exp_E(g) within the union of the witness cylinders
  bool proper_inclusion = false;   // and strictly smaller than it
  bool witness_inside = false;     // some witness cylinder lies within Exp_E(g)
};

struct Theorem8Report {
  std::size_t reduced_size = 0;
  std::size_t wizards = 0;
  std::vector<WizardCase> cases;

  bool holds() const noexcept;
};

/// Throws PreconditionError when the problem has no regions.
Theorem8Report verify_theorem8(const Analysis& analysis, const LogogramOptions& options = {});

// ---------------------------------------------------------------------------
// Independence properties

enum class IndependenceProperty { Internal, Strong, Complete };
const char* to_string(IndependenceProperty p) noexcept;

struct IndependenceVerdict {
  IndependenceProperty property = IndependenceProperty::Internal;
  bool holds = true;
  /// Set when only subsets up to max_subset were checked.
  bool partial = false;
  std::optional<std::string> counterexample;
  std::uint64_t subsets_checked = 0;
};

IndependenceVerdict internal_independence(const Analysis& analysis);
IndependenceVerdict strong_independence(const Analysis& analysis);

inline constexpr std::uint64_t kExhaustiveSubsetLimit = 1'000'000;

/// Every pairwise-compatible subset of the reduced logogram has a separating
/// word. Exhaustive when there are at most subset_limit such subsets, else
/// subsets of size <= max_subset only and the verdict is partial.
IndependenceVerdict complete_independence(const Analysis& analysis, int max_subset = 4,
                                          std::uint64_t subset_limit = kExhaustiveSubsetLimit);

/// Number of nonempty pairwise-compatible subsets of the reduced logogram,
/// counted up to limit (returns limit + 1 when exceeded).
std::uint64_t count_compatible_subsets(const Analysis& analysis, std::uint64_t limit);

/// Encoded word whose body carries every code prescribed by some member of fs
/// and '0' elsewhere. Throws PreconditionError for incompatible members or
/// prescriptions outside the body.
Word construct_separator(const StringSet& fs, const EchelonSpec& spec);

/// x includes every member of fs, and every reduced-logogram string that x
/// includes lies below the join of fs.
bool separates(const Word& x, const StringSet& fs, const Analysis& analysis);

/// Exp_E(H) = E^F. Throws PreconditionError unless H is within the reduced logogram.
bool completeness_of_subset(const StringSet& H, const Analysis& analysis);
/// No proper subset of the reduced logogram is complete.
bool irreducible(const Analysis& analysis);

// ---------------------------------------------------------------------------
// Events

struct EventFamily {
  FiniteLanguage universe;
  std::vector<FiniteLanguage> events;

  void validate() const;
};

inline constexpr int kDefaultEventBits = 20;

/// Nonvoid intersections U_1..U_m, U_i in {E_i, universe - E_i}. Pattern bit
/// i - 1 set selects E_i; patterns run from all-complement to all-events.
std::vector<FiniteLanguage> atomic_constituents(const EventFamily& family,
                                                int max_events = kDefaultEventBits);
bool completely_independent_events(const EventFamily& family, int max_events = kDefaultEventBits);

struct EventScan {
  int arity = 2;
  std::uint64_t families = 0;     // pairwise intersecting families examined
  std::uint64_t independent = 0;
  std::optional<std::string> first_dependent;
};

/// Examines every pairwise intersecting family of `arity` reduced-logogram
/// cylinders (as events in the universe F), stopping after limit families.
EventScan scan_cover_events(const Analysis& analysis, int arity, std::uint64_t limit = 1'000'000);

// ---------------------------------------------------------------------------
// SAT-specific checks

struct RegionRow {
  int region = 2;  // i + 1 in the relation against regions 1..i
  std::size_t next_size = 0;
  std::size_t earlier_size = 0;
  bool disjoint = true;
  bool earlier_entangles_next = false;
  bool next_entangles_earlier = false;

  bool holds() const noexcept {
    return disjoint && !earlier_entangles_next && !next_entangles_earlier;
  }
};

struct RegionReport {
  EchelonSpec spec;
  bool ignore_bewitched = false;
  std::vector<std::size_t> region_sizes;      // after filtering
  std::vector<std::size_t> removed_improper;  // per region
  std::vector<RegionRow> rows;

  bool holds() const noexcept;
};

/// Disjointness and two-way non-entanglement of each region logogram against
/// the union of the earlier ones. With ignore_bewitched, strings whose
/// cylinders lie in two or more regions are removed from both sides first.
RegionReport region_relations(const Analysis& analysis, bool ignore_bewitched,
                              const LogogramOptions& options = {});
RegionReport region_relations(const EchelonSpec& spec, bool ignore_bewitched,
                              const LogogramOptions& options = {});

struct SatShapeReport {
  std::size_t members = 0;
  std::uint64_t expected_members = 0;  // consistent-selection count
  std::size_t wizards = 0;
  std::size_t proper = 0;
  std::size_t improper = 0;
  std::size_t non_literal_code = 0;     // prescribes '0' or touches the prefix
  std::size_t not_one_per_clause = 0;
  std::size_t inconsistent = 0;         // x and -x across clauses
  std::optional<std::string> first_refutation;

  bool shape_holds() const noexcept {
    return non_literal_code == 0 && not_one_per_clause == 0 && inconsistent == 0;
  }
};

/// Requires analysis.problem().echelon.
SatShapeReport sat_shape(const Analysis& analysis);

}  // namespace strcalc
