#pragma once

// Finite languages and the expansion / cylindrification operators on them.
// Infinite sets such as the set of all words are replaced by capped slices
// (all words of length <= cap), on which the closure laws hold echelon-wise.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "strcalc/strings.hpp"

namespace strcalc {

struct LengthCap {
  int max_len = 0;

  explicit LengthCap(int len) : max_len(len) {
    if (len < 0) throw PreconditionError("length cap must be >= 0");
  }
};

class FiniteLanguage {
 public:
  explicit FiniteLanguage(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}
  FiniteLanguage(Alphabet alphabet, std::vector<Word> words);
  FiniteLanguage(Alphabet alphabet, std::initializer_list<std::string_view> words);

  /// All words of length <= cap.
  static FiniteLanguage full_slice(const Alphabet& alphabet, LengthCap cap);
  /// All words of length exactly len.
  static FiniteLanguage exact_slice(const Alphabet& alphabet, int len);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const std::vector<Word>& words() const noexcept { return words_; }
  std::size_t size() const noexcept { return words_.size(); }
  bool empty() const noexcept { return words_.empty(); }
  auto begin() const noexcept { return words_.begin(); }
  auto end() const noexcept { return words_.end(); }

  bool contains(const Word& w) const;
  std::optional<std::size_t> index_of(const Word& w) const;
  int max_length() const noexcept;
  /// No member is a proper prefix of another.
  bool prefix_free() const;
  bool subset_of(const FiniteLanguage& other) const;

  friend bool operator==(const FiniteLanguage& a, const FiniteLanguage& b) {
    return a.alphabet_ == b.alphabet_ && a.words_ == b.words_;
  }

 private:
  Alphabet alphabet_;
  std::vector<Word> words_;  // sorted, unique
};

FiniteLanguage lang_union(const FiniteLanguage& a, const FiniteLanguage& b);
FiniteLanguage lang_intersection(const FiniteLanguage& a, const FiniteLanguage& b);
FiniteLanguage lang_difference(const FiniteLanguage& a, const FiniteLanguage& b);

/// Membership masks over the words of one language, by language index.
using WordMask = boost::dynamic_bitset<std::uint64_t>;

/// Per-position, per-symbol index of a language: column(p, s) is the mask of
/// words whose symbol at position p is s. A string's cylinder is the AND of
/// the columns of its entries.
class WordIndex {
 public:
  explicit WordIndex(FiniteLanguage language);

  const FiniteLanguage& language() const noexcept { return language_; }
  std::size_t word_count() const noexcept { return language_.size(); }

  WordMask none() const { return WordMask(word_count()); }
  WordMask all() const { return ~none(); }

  /// Words including g.
  WordMask cylinder(const PartialString& g) const;
  /// Words including some member of H.
  WordMask cylinder(const StringSet& H) const;
  /// Mask of a sublanguage; throws PreconditionError when sub is not a subset.
  WordMask mask_of(const FiniteLanguage& sub) const;
  FiniteLanguage words_of(const WordMask& mask) const;

  /// Empty mask when pos exceeds every word length.
  const WordMask& column(int pos, int symbol_index) const;

 private:
  FiniteLanguage language_;
  int max_len_ = 0;
  std::vector<WordMask> columns_;  // (pos - 1) * |alphabet| + symbol
  WordMask empty_;
};

/// Words of L including at least one member of H (relative expansion).
FiniteLanguage expand_in(const StringSet& H, const FiniteLanguage& L);
/// Words of L having a member of A as a prefix.
FiniteLanguage cylindrify(const FiniteLanguage& A, const FiniteLanguage& L);
/// A is closed under cylindrification relative to E. Requires A subset of E.
bool is_cylinder_in(const FiniteLanguage& A, const FiniteLanguage& E);
/// All restrictions of words of E, optionally to the given positions.
StringSet strings_of(const FiniteLanguage& E, const std::optional<std::vector<int>>& positions = {});
bool occurs_in(const PartialString& g, const FiniteLanguage& E);

StringSet as_strings(const FiniteLanguage& A);

// Language files: "alphabet=..." header, one word per line, '#' comments,
// "_" for the empty word.
FiniteLanguage parse_language(std::string_view text);
FiniteLanguage read_language_file(const std::string& path);
std::string format_language(const FiniteLanguage& L, std::string_view comment = {});
void write_language_file(const std::string& path, const FiniteLanguage& L,
                         std::string_view comment = {});

/// Seeded generator of random languages and string sets. Word lengths are
/// uniform in [0, cap]; symbols are uniform.
class LanguageSampler {
 public:
  explicit LanguageSampler(std::uint64_t seed) : rng_(seed) {}

  Word word(const Alphabet& alphabet, int cap);
  /// String of size <= cap; each position undefined with probability 1/(|alphabet|+1).
  PartialString string(const Alphabet& alphabet, int cap);
  FiniteLanguage language(const Alphabet& alphabet, int cap, std::size_t max_words);
  StringSet string_set(const Alphabet& alphabet, int cap, std::size_t max_members);
  /// Each word of L kept with probability p.
  FiniteLanguage sublanguage(const FiniteLanguage& L, double p);
  std::size_t uniform(std::size_t lo, std::size_t hi);

  std::mt19937_64& engine() noexcept { return rng_; }

 private:
  std::mt19937_64 rng_;
};

struct LawOutcome {
  std::string law;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::optional<std::string> counterexample;
};

struct LawReport {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  int cap = 0;
  std::vector<LawOutcome> laws;

  bool holds() const;
};

/// Randomized check of the expansion laws: extensiveness, idempotence,
/// monotonicity and union distribution of cylindrification (absolute and
/// relative), the intersection law Exp(H) & Exp(K) = Exp(H + K), the union law
/// Exp(H | K) = Exp(H) | Exp(K), and Exp(reduce(H)) = Exp(H). Samples are split
/// between the binary and ternary alphabets.
LawReport check_expansion_laws(std::uint64_t samples, std::uint64_t seed, int cap = 6);

}  // namespace strcalc
