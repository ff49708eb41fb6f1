#pragma once

// CNF formulas as words over {0,1,2}. A formula with n variables and m
// clauses is encoded as the prefix 0^n 1 0^m 1 followed by m blocks of n codes:
// 0 = variable absent, 1 = positive literal, 2 = negative literal.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "strcalc/logogram.hpp"

namespace strcalc::sat {

struct Literal {
  int var = 1;  // 1..n
  bool negated = false;

  char code() const noexcept { return negated ? '2' : '1'; }
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

/// Sorted, duplicate-free literal set. Empty means the empty clause.
using Clause = std::vector<Literal>;

struct CnfInstance {
  int n = 1;
  std::vector<Clause> clauses;

  int m() const noexcept { return static_cast<int>(clauses.size()); }
  EchelonSpec echelon() const noexcept { return {n, m()}; }

  /// Throws PreconditionError for n < 1, m < 1, or a variable out of range.
  /// With allow_complementary = false also rejects clauses holding both x and -x.
  void validate(bool allow_complementary = false) const;

  friend bool operator==(const CnfInstance&, const CnfInstance&) = default;
};

/// Builds an instance, sorting and deduplicating each clause.
CnfInstance make_instance(int n, std::vector<Clause> clauses);

/// "1,3,-4;2,-3": clauses separated by ';', literals by ',', '-' negates.
/// An empty clause is written as an empty field.
CnfInstance parse_formula(std::string_view text, int n);
std::string format_formula(const CnfInstance& inst);

struct Assignment {
  std::vector<bool> values;  // values[i - 1] is x_i

  int n() const noexcept { return static_cast<int>(values.size()); }
  bool value(int var) const { return values.at(var - 1); }
};

Word echelon_prefix(const EchelonSpec& spec);
/// Throws PreconditionError for a clause with complementary literals, which
/// the one-code-per-variable block cannot represent.
Word encode(const CnfInstance& inst);
/// Throws ParseError on a malformed prefix, wrong body length, or non-code symbol.
CnfInstance decode(const Word& w);

/// y_1..y_{2^n}; y_j sets x_i to bit i-1 of j-1.
std::vector<Assignment> solutions(int n);
bool satisfies(const CnfInstance& inst, const Assignment& y);
bool is_satisfiable(const CnfInstance& inst);

/// Number of distinct variables with occurrences.
int occurrence_size(const CnfInstance& inst);
/// Fewest variable assignments forcing every clause true; n when unsatisfiable.
int effective_size(const CnfInstance& inst);
/// Satisfiable and occurrence_size != effective_size. Unsatisfiable formulas
/// have effective size equal to their size by definition, so are never bewitched.
bool is_bewitched(const CnfInstance& inst);

inline constexpr std::uint64_t kDefaultEchelonBudget = std::uint64_t{1} << 24;

/// E = all 3^(nm) encodings, F = satisfiable ones, regions F_j = instances
/// satisfied by y_j.
DecisionProblem enumerate_echelon(const EchelonSpec& spec,
                                  std::uint64_t budget = kDefaultEchelonBudget);

/// Number of consistent one-literal-per-clause selections:
/// sum_k S(m, k) * n!/(n-k)! * 2^k.
std::uint64_t consistent_selection_count(int n, int m);

}  // namespace strcalc::sat
