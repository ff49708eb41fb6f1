#include "strcalc/language.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

namespace strcalc {

namespace {

void validate_words(const Alphabet& alphabet, const std::vector<Word>& words) {
  for (const auto& w : words)
    for (char c : w.chars())
      if (!alphabet.contains(c))
        throw AlphabetMismatch("word '" + w.chars() + "' is not over alphabet '" +
                               alphabet.symbols() + "'");
}

std::string describe(const FiniteLanguage& L) {
  std::string out = "{";
  for (const auto& w : L) {
    if (out.size() > 1) out += ',';
    out += w.empty() ? std::string("_") : w.chars();
  }
  return out + "}";
}

std::string describe(const StringSet& H) {
  std::string out = "{";
  for (const auto& s : H) {
    if (out.size() > 1) out += ',';
    out += s.is_bottom() ? std::string("_") : s.render();
  }
  return out + "}";
}

}  // namespace

FiniteLanguage::FiniteLanguage(Alphabet alphabet, std::vector<Word> words)
    : alphabet_(std::move(alphabet)), words_(std::move(words)) {
  validate_words(alphabet_, words_);
  std::sort(words_.begin(), words_.end());
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
}

FiniteLanguage::FiniteLanguage(Alphabet alphabet, std::initializer_list<std::string_view> words)
    : alphabet_(std::move(alphabet)) {
  std::vector<Word> ws;
  for (auto w : words) ws.push_back(Word::parse(w, alphabet_));
  *this = FiniteLanguage(alphabet_, std::move(ws));
}

FiniteLanguage FiniteLanguage::full_slice(const Alphabet& alphabet, LengthCap cap) {
  std::vector<Word> words;
  std::vector<std::string> layer{""};
  for (int len = 0; len <= cap.max_len; ++len) {
    for (const auto& s : layer) words.emplace_back(s);
    if (len == cap.max_len) break;
    std::vector<std::string> next;
    next.reserve(layer.size() * alphabet.size());
    for (const auto& s : layer)
      for (char c : alphabet.symbols()) next.push_back(s + c);
    layer = std::move(next);
  }
  return FiniteLanguage(alphabet, std::move(words));
}

FiniteLanguage FiniteLanguage::exact_slice(const Alphabet& alphabet, int len) {
  if (len < 0) throw PreconditionError("slice length must be >= 0");
  std::vector<std::string> layer{""};
  for (int i = 0; i < len; ++i) {
    std::vector<std::string> next;
    for (const auto& s : layer)
      for (char c : alphabet.symbols()) next.push_back(s + c);
    layer = std::move(next);
  }
  std::vector<Word> words(layer.begin(), layer.end());
  return FiniteLanguage(alphabet, std::move(words));
}

bool FiniteLanguage::contains(const Word& w) const {
  return std::binary_search(words_.begin(), words_.end(), w);
}

std::optional<std::size_t> FiniteLanguage::index_of(const Word& w) const {
  auto it = std::lower_bound(words_.begin(), words_.end(), w);
  if (it == words_.end() || !(*it == w)) return std::nullopt;
  return static_cast<std::size_t>(it - words_.begin());
}

int FiniteLanguage::max_length() const noexcept {
  int len = 0;
  for (const auto& w : words_) len = std::max(len, w.length());
  return len;
}

bool FiniteLanguage::prefix_free() const {
  // In lexicographic order a word's proper extensions directly follow it.
  for (std::size_t i = 0; i + 1 < words_.size(); ++i)
    if (words_[i + 1].has_prefix(words_[i])) return false;
  return true;
}

bool FiniteLanguage::subset_of(const FiniteLanguage& other) const {
  return alphabet_ == other.alphabet_ &&
         std::includes(other.words_.begin(), other.words_.end(), words_.begin(), words_.end());
}

FiniteLanguage lang_union(const FiniteLanguage& a, const FiniteLanguage& b) {
  require_same_alphabet(a.alphabet(), b.alphabet(), "lang_union");
  std::vector<Word> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return FiniteLanguage(a.alphabet(), std::move(out));
}

FiniteLanguage lang_intersection(const FiniteLanguage& a, const FiniteLanguage& b) {
  require_same_alphabet(a.alphabet(), b.alphabet(), "lang_intersection");
  std::vector<Word> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return FiniteLanguage(a.alphabet(), std::move(out));
}

FiniteLanguage lang_difference(const FiniteLanguage& a, const FiniteLanguage& b) {
  require_same_alphabet(a.alphabet(), b.alphabet(), "lang_difference");
  std::vector<Word> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return FiniteLanguage(a.alphabet(), std::move(out));
}

// ---------------------------------------------------------------------------

WordIndex::WordIndex(FiniteLanguage language)
    : language_(std::move(language)), max_len_(language_.max_length()) {
  const auto k = language_.alphabet().size();
  const auto n = language_.size();
  empty_ = WordMask(n);
  columns_.assign(static_cast<std::size_t>(max_len_) * k, WordMask(n));
  for (std::size_t w = 0; w < n; ++w) {
    const auto& chars = language_.words()[w].chars();
    for (std::size_t i = 0; i < chars.size(); ++i)
      columns_[i * k + language_.alphabet().index_of(chars[i])].set(w);
  }
}

const WordMask& WordIndex::column(int pos, int symbol_index) const {
  if (pos < 1 || pos > max_len_ || symbol_index < 0) return empty_;
  return columns_[static_cast<std::size_t>(pos - 1) * language_.alphabet().size() + symbol_index];
}

WordMask WordIndex::cylinder(const PartialString& g) const {
  WordMask m = all();
  for (auto [pos, sym] : g.entries()) {
    m &= column(pos, language_.alphabet().index_of(sym));
    if (m.none()) break;
  }
  return m;
}

WordMask WordIndex::cylinder(const StringSet& H) const {
  require_same_alphabet(H.alphabet(), language_.alphabet(), "cylinder");
  WordMask m = none();
  for (const auto& g : H) m |= cylinder(g);
  return m;
}

WordMask WordIndex::mask_of(const FiniteLanguage& sub) const {
  require_same_alphabet(sub.alphabet(), language_.alphabet(), "mask_of");
  WordMask m = none();
  for (const auto& w : sub) {
    auto idx = language_.index_of(w);
    if (!idx) throw PreconditionError("word '" + w.chars() + "' is not in the reference language");
    m.set(*idx);
  }
  return m;
}

FiniteLanguage WordIndex::words_of(const WordMask& mask) const {
  std::vector<Word> out;
  out.reserve(mask.count());
  for (auto i = mask.find_first(); i != WordMask::npos; i = mask.find_next(i))
    out.push_back(language_.words()[i]);
  return FiniteLanguage(language_.alphabet(), std::move(out));
}

// ---------------------------------------------------------------------------

StringSet as_strings(const FiniteLanguage& A) {
  StringSet out(A.alphabet());
  for (const auto& w : A) out.insert(w.to_string());
  return out;
}

FiniteLanguage expand_in(const StringSet& H, const FiniteLanguage& L) {
  require_same_alphabet(H.alphabet(), L.alphabet(), "expand_in");
  std::vector<Word> out;
  for (const auto& x : L)
    if (std::any_of(H.begin(), H.end(), [&](const PartialString& g) { return x.includes(g); }))
      out.push_back(x);
  return FiniteLanguage(L.alphabet(), std::move(out));
}

FiniteLanguage cylindrify(const FiniteLanguage& A, const FiniteLanguage& L) {
  require_same_alphabet(A.alphabet(), L.alphabet(), "cylindrify");
  std::vector<Word> out;
  for (const auto& x : L)
    if (std::any_of(A.begin(), A.end(), [&](const Word& a) { return x.has_prefix(a); }))
      out.push_back(x);
  return FiniteLanguage(L.alphabet(), std::move(out));
}

bool is_cylinder_in(const FiniteLanguage& A, const FiniteLanguage& E) {
  require_same_alphabet(A.alphabet(), E.alphabet(), "is_cylinder_in");
  if (!A.subset_of(E)) throw PreconditionError("is_cylinder_in: A is not a subset of E");
  return cylindrify(A, E) == A;
}

StringSet strings_of(const FiniteLanguage& E, const std::optional<std::vector<int>>& positions) {
  StringSet out(E.alphabet());
  for (const auto& x : E) {
    std::vector<int> dom;
    for (int p = 1; p <= x.length(); ++p)
      if (!positions || std::find(positions->begin(), positions->end(), p) != positions->end())
        dom.push_back(p);
    if (dom.size() >= 63) throw BudgetExceeded("strings_of: too many positions", dom.size(), 62);
    const std::uint64_t subsets = std::uint64_t{1} << dom.size();
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
      std::string cells(x.length(), kBlank);
      for (std::size_t i = 0; i < dom.size(); ++i)
        if (mask >> i & 1) cells[dom[i] - 1] = x.at(dom[i]);
      out.insert(PartialString::from_cells(std::move(cells)));
    }
  }
  return out;
}

bool occurs_in(const PartialString& g, const FiniteLanguage& E) {
  return std::any_of(E.begin(), E.end(), [&](const Word& x) { return x.includes(g); });
}

// ---------------------------------------------------------------------------

FiniteLanguage parse_language(std::string_view text) {
  std::optional<Alphabet> alphabet;
  std::vector<Word> words;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    if (!alphabet) {
      if (line.rfind("alphabet=", 0) != 0)
        throw ParseError("line " + std::to_string(lineno) + ": expected 'alphabet=' header");
      try {
        alphabet.emplace(line.substr(9));
      } catch (const Error& e) {
        throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
      }
      continue;
    }
    if (line == "_") {
      words.emplace_back();
      continue;
    }
    try {
      words.push_back(Word::parse(line, *alphabet));
    } catch (const Error& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!alphabet) throw ParseError("missing 'alphabet=' header");
  return FiniteLanguage(*alphabet, std::move(words));
}

FiniteLanguage read_language_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open language file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_language(buf.str());
}

std::string format_language(const FiniteLanguage& L, std::string_view comment) {
  std::string out;
  if (!comment.empty()) out += "# " + std::string(comment) + "\n";
  out += "alphabet=" + L.alphabet().symbols() + "\n";
  for (const auto& w : L) out += (w.empty() ? std::string("_") : w.chars()) + "\n";
  return out;
}

void write_language_file(const std::string& path, const FiniteLanguage& L, std::string_view comment) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write language file '" + path + "'");
  out << format_language(L, comment);
}

// ---------------------------------------------------------------------------

std::size_t LanguageSampler::uniform(std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
}

Word LanguageSampler::word(const Alphabet& alphabet, int cap) {
  auto len = uniform(0, static_cast<std::size_t>(cap));
  std::string chars(len, '0');
  for (auto& c : chars) c = alphabet.symbol(uniform(0, alphabet.size() - 1));
  return Word(std::move(chars));
}

PartialString LanguageSampler::string(const Alphabet& alphabet, int cap) {
  auto len = uniform(0, static_cast<std::size_t>(cap));
  std::string cells(len, kBlank);
  for (auto& c : cells) {
    auto k = uniform(0, alphabet.size());
    c = k == alphabet.size() ? kBlank : alphabet.symbol(k);
  }
  return PartialString::from_cells(std::move(cells));
}

FiniteLanguage LanguageSampler::language(const Alphabet& alphabet, int cap, std::size_t max_words) {
  auto count = uniform(0, max_words);
  std::vector<Word> words;
  for (std::size_t i = 0; i < count; ++i) words.push_back(word(alphabet, cap));
  return FiniteLanguage(alphabet, std::move(words));
}

StringSet LanguageSampler::string_set(const Alphabet& alphabet, int cap, std::size_t max_members) {
  auto count = uniform(0, max_members);
  StringSet out(alphabet);
  for (std::size_t i = 0; i < count; ++i) out.insert(string(alphabet, cap));
  return out;
}

FiniteLanguage LanguageSampler::sublanguage(const FiniteLanguage& L, double p) {
  std::bernoulli_distribution keep(p);
  std::vector<Word> out;
  for (const auto& w : L)
    if (keep(rng_)) out.push_back(w);
  return FiniteLanguage(L.alphabet(), std::move(out));
}

// ---------------------------------------------------------------------------

bool LawReport::holds() const {
  return std::all_of(laws.begin(), laws.end(), [](const LawOutcome& l) { return l.failures == 0; });
}

namespace {

class LawTally {
 public:
  LawOutcome& operator[](const std::string& name) {
    for (auto& l : laws_)
      if (l.law == name) return l;
    laws_.push_back(LawOutcome{name, 0, 0, std::nullopt});
    return laws_.back();
  }

  void check(const std::string& name, bool ok, const std::string& witness) {
    auto& l = (*this)[name];
    ++l.checks;
    if (!ok) {
      ++l.failures;
      if (!l.counterexample) l.counterexample = witness;
    }
  }

  std::vector<LawOutcome> take() { return std::move(laws_); }

 private:
  std::vector<LawOutcome> laws_;
};

WordMask cyl(const WordIndex& idx, const FiniteLanguage& A) {
  return idx.cylinder(as_strings(A));
}

void check_cylindrification(LawTally& tally, const std::string& tag, const WordIndex& idx,
                            const FiniteLanguage& A, const FiniteLanguage& B,
                            const FiniteLanguage& C) {
  const std::string ctx = " A=" + describe(A) + " B=" + describe(B) + " C=" + describe(C);
  auto a = idx.mask_of(A);
  auto ca = cyl(idx, A);
  tally.check(tag + "extensive", a.is_subset_of(ca), ctx);
  tally.check(tag + "idempotent", cyl(idx, idx.words_of(ca)) == ca, ctx);
  // B is built as a superset of A.
  tally.check(tag + "monotone", ca.is_subset_of(cyl(idx, B)), ctx);
  tally.check(tag + "union", cyl(idx, lang_union(A, C)) == (ca | cyl(idx, C)), ctx);
}

}  // namespace

LawReport check_expansion_laws(std::uint64_t samples, std::uint64_t seed, int cap) {
  if (samples < 1) throw PreconditionError("check_expansion_laws: samples must be >= 1");
  LanguageSampler rng(seed);
  const std::vector<Alphabet> alphabets{Alphabet::binary(), Alphabet::ternary()};
  std::vector<WordIndex> universes;
  for (const auto& a : alphabets) universes.emplace_back(FiniteLanguage::full_slice(a, LengthCap(cap)));

  LawTally tally;
  for (std::uint64_t i = 0; i < samples; ++i) {
    const auto& U = universes[i % universes.size()];
    const auto& alphabet = U.language().alphabet();

    // Absolute (within the capped universe).
    auto A = rng.language(alphabet, cap, 6);
    auto B = lang_union(A, rng.language(alphabet, cap, 4));
    auto C = rng.language(alphabet, cap, 6);
    check_cylindrification(tally, "abs.", U, A, B, C);

    // Relative to a random reference set E.
    WordIndex E(lang_union(rng.sublanguage(U.language(), 0.3), lang_union(B, C)));
    check_cylindrification(tally, "rel.", E, A, B, C);

    auto H = rng.string_set(alphabet, cap, 5);
    auto K = rng.string_set(alphabet, cap, 5);
    const std::string ctx = " H=" + describe(H) + " K=" + describe(K);
    for (const WordIndex* L : std::array<const WordIndex*, 2>{&U, &E}) {
      const std::string tag = L == &U ? "abs." : "rel.";
      auto eh = L->cylinder(H);
      auto ek = L->cylinder(K);
      tally.check(tag + "intersection_join", (eh & ek) == L->cylinder(join_sets(H, K)), ctx);
      tally.check(tag + "union_strings", (eh | ek) == L->cylinder(set_union(H, K)), ctx);
      tally.check(tag + "isoexpansive_reduce", L->cylinder(reduce(H)) == eh, ctx);
    }
  }
  return LawReport{samples, seed, cap, tally.take()};
}

}  // namespace strcalc
