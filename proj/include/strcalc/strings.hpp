#pragma once

// Strings in the sense of partial words: finite partial maps from positions
// (1-based) to alphabet symbols, ordered by extension.

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "strcalc/error.hpp"

namespace strcalc {

/// Rendering marker for an undefined position. Never an alphabet symbol.
inline constexpr char kBlank = '_';

class Alphabet {
 public:
  /// Symbols in order. Must be nonempty, duplicate-free, contain '0' and '1'
  /// and must not contain the blank marker.
  explicit Alphabet(std::string_view symbols);

  static Alphabet binary() { return Alphabet("01"); }
  static Alphabet ternary() { return Alphabet("012"); }

  const std::string& symbols() const noexcept { return symbols_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  char symbol(std::size_t index) const { return symbols_.at(index); }
  char first() const noexcept { return symbols_.front(); }
  bool contains(char c) const noexcept { return index_of(c) >= 0; }
  int index_of(char c) const noexcept;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::string symbols_;
};

void require_same_alphabet(const Alphabet& a, const Alphabet& b, std::string_view context);

class Word;

/// A finite partial function N+ -> symbols. Stored as a dense cell string
/// with kBlank in undefined positions and no trailing blanks, so equal
/// partial functions have equal representations.
class PartialString {
 public:
  /// The empty string (bottom element).
  PartialString() = default;

  /// Dense form ("1_2", trailing blanks allowed and dropped) or sparse form
  /// ("1:1,3:2"). Symbols are not validated; use the Alphabet overload.
  static PartialString parse(std::string_view text);
  static PartialString parse(std::string_view text, const Alphabet& alphabet);

  /// Takes cells verbatim after trimming trailing blanks.
  static PartialString from_cells(std::string cells);
  static PartialString from_entries(const std::vector<std::pair<int, char>>& entries);

  static PartialString bottom() { return {}; }

  /// Max position in the domain; 0 for bottom.
  int size() const noexcept { return static_cast<int>(cells_.size()); }
  int domain_size() const noexcept { return domain_size_; }
  bool is_bottom() const noexcept { return cells_.empty(); }
  bool is_word() const noexcept { return domain_size_ == size(); }

  bool defined(int pos) const noexcept {
    return pos >= 1 && pos <= size() && cells_[pos - 1] != kBlank;
  }
  /// Symbol at pos, or kBlank when undefined.
  char at(int pos) const noexcept { return (pos >= 1 && pos <= size()) ? cells_[pos - 1] : kBlank; }

  std::vector<int> domain() const;
  std::vector<std::pair<int, char>> entries() const;

  /// Copy with pos undefined / set.
  PartialString without(int pos) const;
  PartialString with(int pos, char symbol) const;

  const std::string& cells() const noexcept { return cells_; }
  const std::string& render() const noexcept { return cells_; }
  std::string render_sparse() const;

  bool over(const Alphabet& alphabet) const noexcept;

  friend bool operator==(const PartialString& a, const PartialString& b) noexcept {
    return a.cells_ == b.cells_;
  }

 private:
  std::string cells_;
  int domain_size_ = 0;
};

/// Canonical order: by domain size, then by rendering.
struct StringOrder {
  bool operator()(const PartialString& a, const PartialString& b) const noexcept {
    if (a.domain_size() != b.domain_size()) return a.domain_size() < b.domain_size();
    return a.cells() < b.cells();
  }
};

/// A full string: domain {1..length}.
class Word {
 public:
  Word() = default;
  explicit Word(std::string chars);

  static Word parse(std::string_view text, const Alphabet& alphabet);
  /// Throws PreconditionError unless s is a word.
  static Word from_string(const PartialString& s);

  int length() const noexcept { return static_cast<int>(chars_.size()); }
  bool empty() const noexcept { return chars_.empty(); }
  /// 1-based.
  char at(int pos) const { return chars_.at(pos - 1); }
  const std::string& chars() const noexcept { return chars_; }
  PartialString to_string() const { return PartialString::from_cells(chars_); }

  /// True iff this word includes (extends) g.
  bool includes(const PartialString& g) const noexcept;
  bool has_prefix(const Word& prefix) const noexcept;

  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::string chars_;
};

// Order and lattice operations on single strings.

/// f <= g: g extends f.
bool extends(const PartialString& g, const PartialString& f) noexcept;
bool properly_extends(const PartialString& g, const PartialString& f) noexcept;
bool compatible(const PartialString& f, const PartialString& g) noexcept;
/// Least common extension; nullopt when f and g are incompatible.
std::optional<PartialString> join(const PartialString& f, const PartialString& g);
/// Restriction to the part of the common domain where f and g agree.
PartialString meet(const PartialString& f, const PartialString& g);

/// Finite set of strings over one alphabet, iterated in StringOrder.
class StringSet {
 public:
  using container = std::set<PartialString, StringOrder>;
  using const_iterator = container::const_iterator;

  explicit StringSet(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}
  StringSet(Alphabet alphabet, std::initializer_list<std::string_view> members);

  const Alphabet& alphabet() const noexcept { return alphabet_; }

  /// Throws AlphabetMismatch when s uses a symbol outside the alphabet.
  bool insert(PartialString s);
  bool erase(const PartialString& s) { return members_.erase(s) > 0; }
  bool contains(const PartialString& s) const { return members_.count(s) > 0; }

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  const_iterator begin() const noexcept { return members_.begin(); }
  const_iterator end() const noexcept { return members_.end(); }

  std::vector<PartialString> to_vector() const { return {members_.begin(), members_.end()}; }
  bool subset_of(const StringSet& other) const;

  friend bool operator==(const StringSet& a, const StringSet& b) {
    return a.alphabet_ == b.alphabet_ && a.members_ == b.members_;
  }

 private:
  Alphabet alphabet_;
  container members_;
};

StringSet set_union(const StringSet& a, const StringSet& b);

/// H + K: all defined joins a + b.
StringSet join_sets(const StringSet& H, const StringSet& K);
/// Minimal elements of H under extension.
StringSet reduce(const StringSet& H);
bool is_reduced(const StringSet& H);
/// A word including every member of H, of length max size over H, with free
/// positions set to the alphabet's first symbol; nullopt when H contains an
/// incompatible pair.
std::optional<Word> consistent(const StringSet& H);

}  // namespace strcalc

template <>
struct std::hash<strcalc::PartialString> {
  std::size_t operator()(const strcalc::PartialString& s) const noexcept {
    return std::hash<std::string>{}(s.cells());
  }
};
