#include "strcalc/strings.hpp"

#include <algorithm>
#include <charconv>
#include <map>

namespace strcalc {

Alphabet::Alphabet(std::string_view symbols) : symbols_(symbols) {
  if (symbols_.empty()) throw PreconditionError("alphabet must be nonempty");
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    char c = symbols_[i];
    if (c == kBlank) throw PreconditionError("blank marker '_' cannot be an alphabet symbol");
    if (symbols_.find(c, i + 1) != std::string::npos)
      throw PreconditionError(std::string("duplicate alphabet symbol '") + c + "'");
  }
  if (!contains('0') || !contains('1'))
    throw PreconditionError("alphabet must include '0' and '1'");
}

int Alphabet::index_of(char c) const noexcept {
  auto p = symbols_.find(c);
  return p == std::string::npos ? -1 : static_cast<int>(p);
}

void require_same_alphabet(const Alphabet& a, const Alphabet& b, std::string_view context) {
  if (!(a == b))
    throw AlphabetMismatch(std::string(context) + ": alphabets '" + a.symbols() + "' and '" +
                           b.symbols() + "' differ");
}

// ---------------------------------------------------------------------------

PartialString PartialString::from_cells(std::string cells) {
  while (!cells.empty() && cells.back() == kBlank) cells.pop_back();
  PartialString s;
  s.domain_size_ = static_cast<int>(std::count_if(cells.begin(), cells.end(),
                                                  [](char c) { return c != kBlank; }));
  s.cells_ = std::move(cells);
  return s;
}

PartialString PartialString::from_entries(const std::vector<std::pair<int, char>>& entries) {
  std::string cells;
  for (auto [pos, sym] : entries) {
    if (pos < 1) throw PreconditionError("string positions start at 1");
    if (sym == kBlank) throw PreconditionError("blank is not a symbol");
    if (static_cast<int>(cells.size()) < pos) cells.resize(pos, kBlank);
    if (cells[pos - 1] != kBlank && cells[pos - 1] != sym)
      throw PreconditionError("conflicting entries at position " + std::to_string(pos));
    cells[pos - 1] = sym;
  }
  return from_cells(std::move(cells));
}

PartialString PartialString::parse(std::string_view text) {
  if (text.find(':') == std::string_view::npos) {
    for (char c : text)
      if (c == ',' || c == ' ' || c == '\t')
        throw ParseError("malformed string '" + std::string(text) + "'");
    return from_cells(std::string(text));
  }
  // Sparse "pos:sym,pos:sym".
  std::vector<std::pair<int, char>> entries;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    auto item = text.substr(start, end - start);
    auto colon = item.find(':');
    if (colon == std::string_view::npos || colon + 2 != item.size() || colon == 0)
      throw ParseError("malformed sparse entry '" + std::string(item) + "'");
    int pos = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + colon, pos);
    if (ec != std::errc() || ptr != item.data() + colon || pos < 1)
      throw ParseError("bad position in '" + std::string(item) + "'");
    char sym = item[colon + 1];
    if (sym == kBlank) throw ParseError("blank is not a symbol");
    for (auto& [p, s] : entries)
      if (p == pos) throw ParseError("duplicate position " + std::to_string(pos));
    entries.emplace_back(pos, sym);
    start = end + 1;
  }
  return from_entries(entries);
}

PartialString PartialString::parse(std::string_view text, const Alphabet& alphabet) {
  auto s = parse(text);
  if (!s.over(alphabet))
    throw ParseError("string '" + std::string(text) + "' uses symbols outside alphabet '" +
                     alphabet.symbols() + "'");
  return s;
}

std::vector<int> PartialString::domain() const {
  std::vector<int> out;
  out.reserve(domain_size_);
  for (int i = 0; i < size(); ++i)
    if (cells_[i] != kBlank) out.push_back(i + 1);
  return out;
}

std::vector<std::pair<int, char>> PartialString::entries() const {
  std::vector<std::pair<int, char>> out;
  out.reserve(domain_size_);
  for (int i = 0; i < size(); ++i)
    if (cells_[i] != kBlank) out.emplace_back(i + 1, cells_[i]);
  return out;
}

PartialString PartialString::without(int pos) const {
  if (!defined(pos)) return *this;
  std::string cells = cells_;
  cells[pos - 1] = kBlank;
  return from_cells(std::move(cells));
}

PartialString PartialString::with(int pos, char symbol) const {
  if (pos < 1) throw PreconditionError("string positions start at 1");
  std::string cells = cells_;
  if (static_cast<int>(cells.size()) < pos) cells.resize(pos, kBlank);
  cells[pos - 1] = symbol;
  return from_cells(std::move(cells));
}

std::string PartialString::render_sparse() const {
  std::string out;
  for (auto [pos, sym] : entries()) {
    if (!out.empty()) out += ',';
    out += std::to_string(pos);
    out += ':';
    out += sym;
  }
  return out;
}

bool PartialString::over(const Alphabet& alphabet) const noexcept {
  return std::all_of(cells_.begin(), cells_.end(),
                     [&](char c) { return c == kBlank || alphabet.contains(c); });
}

// ---------------------------------------------------------------------------

Word::Word(std::string chars) : chars_(std::move(chars)) {
  if (chars_.find(kBlank) != std::string::npos)
    throw PreconditionError("words have no undefined positions: '" + chars_ + "'");
}

Word Word::parse(std::string_view text, const Alphabet& alphabet) {
  for (char c : text)
    if (!alphabet.contains(c))
      throw ParseError("word '" + std::string(text) + "' uses symbols outside alphabet '" +
                       alphabet.symbols() + "'");
  return Word(std::string(text));
}

Word Word::from_string(const PartialString& s) {
  if (!s.is_word()) throw PreconditionError("'" + s.render() + "' is not a word");
  return Word(s.cells());
}

bool Word::includes(const PartialString& g) const noexcept {
  if (g.size() > length()) return false;
  const auto& cells = g.cells();
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i] != kBlank && cells[i] != chars_[i]) return false;
  return true;
}

bool Word::has_prefix(const Word& prefix) const noexcept {
  return chars_.size() >= prefix.chars_.size() &&
         std::equal(prefix.chars_.begin(), prefix.chars_.end(), chars_.begin());
}

// ---------------------------------------------------------------------------

bool extends(const PartialString& g, const PartialString& f) noexcept {
  if (f.size() > g.size()) return false;
  const auto& fc = f.cells();
  const auto& gc = g.cells();
  for (std::size_t i = 0; i < fc.size(); ++i)
    if (fc[i] != kBlank && fc[i] != gc[i]) return false;
  return true;
}

bool properly_extends(const PartialString& g, const PartialString& f) noexcept {
  return g.domain_size() > f.domain_size() && extends(g, f);
}

bool compatible(const PartialString& f, const PartialString& g) noexcept {
  const auto& fc = f.cells();
  const auto& gc = g.cells();
  auto n = std::min(fc.size(), gc.size());
  for (std::size_t i = 0; i < n; ++i)
    if (fc[i] != kBlank && gc[i] != kBlank && fc[i] != gc[i]) return false;
  return true;
}

std::optional<PartialString> join(const PartialString& f, const PartialString& g) {
  if (!compatible(f, g)) return std::nullopt;
  const auto& longer = f.size() >= g.size() ? f.cells() : g.cells();
  const auto& shorter = f.size() >= g.size() ? g.cells() : f.cells();
  std::string cells = longer;
  for (std::size_t i = 0; i < shorter.size(); ++i)
    if (shorter[i] != kBlank) cells[i] = shorter[i];
  return PartialString::from_cells(std::move(cells));
}

PartialString meet(const PartialString& f, const PartialString& g) {
  const auto& fc = f.cells();
  const auto& gc = g.cells();
  auto n = std::min(fc.size(), gc.size());
  std::string cells(n, kBlank);
  for (std::size_t i = 0; i < n; ++i)
    if (fc[i] != kBlank && fc[i] == gc[i]) cells[i] = fc[i];
  return PartialString::from_cells(std::move(cells));
}

// ---------------------------------------------------------------------------

StringSet::StringSet(Alphabet alphabet, std::initializer_list<std::string_view> members)
    : alphabet_(std::move(alphabet)) {
  for (auto m : members) insert(PartialString::parse(m, alphabet_));
}

bool StringSet::insert(PartialString s) {
  if (!s.over(alphabet_))
    throw AlphabetMismatch("string '" + s.render() + "' is not over alphabet '" +
                           alphabet_.symbols() + "'");
  return members_.insert(std::move(s)).second;
}

bool StringSet::subset_of(const StringSet& other) const {
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                       members_.end(), StringOrder{});
}

StringSet set_union(const StringSet& a, const StringSet& b) {
  require_same_alphabet(a.alphabet(), b.alphabet(), "set_union");
  StringSet out = a;
  for (const auto& s : b) out.insert(s);
  return out;
}

StringSet join_sets(const StringSet& H, const StringSet& K) {
  require_same_alphabet(H.alphabet(), K.alphabet(), "join_sets");
  StringSet out(H.alphabet());
  for (const auto& a : H)
    for (const auto& b : K)
      if (auto j = join(a, b)) out.insert(std::move(*j));
  return out;
}

StringSet reduce(const StringSet& H) {
  // Iteration is by increasing domain size, so every potential proper
  // substring of s has already been seen when s is considered.
  StringSet out(H.alphabet());
  std::vector<const PartialString*> kept;
  for (const auto& s : H) {
    bool minimal = std::none_of(kept.begin(), kept.end(), [&](const PartialString* k) {
      return k->domain_size() < s.domain_size() && extends(s, *k);
    });
    if (minimal) {
      kept.push_back(&s);
      out.insert(s);
    }
  }
  return out;
}

bool is_reduced(const StringSet& H) { return reduce(H).size() == H.size(); }

std::optional<Word> consistent(const StringSet& H) {
  auto members = H.to_vector();
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (!compatible(members[i], members[j])) return std::nullopt;
  int len = 0;
  for (const auto& s : members) len = std::max(len, s.size());
  std::string chars(len, H.alphabet().first());
  for (const auto& s : members)
    for (auto [pos, sym] : s.entries()) chars[pos - 1] = sym;
  return Word(std::move(chars));
}

}  // namespace strcalc
