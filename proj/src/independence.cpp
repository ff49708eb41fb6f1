#include "strcalc/independence.hpp"

#include <algorithm>

#include "strcalc/packed.hpp"
#include "strcalc/sat.hpp"

namespace strcalc {

namespace {

std::string show(const PartialString& g) { return g.is_bottom() ? std::string("_") : g.render(); }

std::string show(const std::vector<PartialString>& gs) {
  std::string out = "{";
  for (std::size_t i = 0; i < gs.size(); ++i) {
    if (i) out += ", ";
    out += show(gs[i]);
  }
  return out + "}";
}

void require_occurs(const PartialString& g, const WordIndex& E, const char* who) {
  if (E.cylinder(g).none())
    throw PreconditionError(std::string(who) + ": string '" + show(g) + "' does not occur in E");
}

template <class F>
void for_each_bit(const WordMask& m, F&& f) {
  for (auto i = m.find_first(); i != WordMask::npos; i = m.find_next(i)) f(i);
}

}  // namespace

// ---------------------------------------------------------------------------

bool entangles(const PartialString& f, const PartialString& g, const WordIndex& E) {
  require_occurs(f, E, "entangles");
  require_occurs(g, E, "entangles");
  return E.cylinder(f).is_subset_of(E.cylinder(g));
}

bool entangles(const PartialString& f, const PartialString& g, const FiniteLanguage& E) {
  return entangles(f, g, WordIndex(E));
}

bool pairwise_independent(const PartialString& f, const PartialString& g, const WordIndex& E) {
  return !entangles(f, g, E) && !entangles(g, f, E);
}

bool pairwise_independent(const PartialString& f, const PartialString& g, const FiniteLanguage& E) {
  return pairwise_independent(f, g, WordIndex(E));
}

bool entangles_sets(const StringSet& H, const StringSet& K, const WordIndex& E) {
  for (const auto& h : H) require_occurs(h, E, "entangles_sets");
  for (const auto& k : K) require_occurs(k, E, "entangles_sets");
  return E.cylinder(H).is_subset_of(E.cylinder(K));
}

bool entangles_sets(const StringSet& H, const StringSet& K, const FiniteLanguage& E) {
  return entangles_sets(H, K, WordIndex(E));
}

// ---------------------------------------------------------------------------

Analysis::Analysis(DecisionProblem problem, const LogogramOptions& options)
    : problem_(std::move(problem)),
      logogram_(log_rel(problem_, options)),
      index_(problem_.E) {
  build();
}

Analysis::Analysis(DecisionProblem problem, LogogramResult logogram)
    : problem_(std::move(problem)), logogram_(std::move(logogram)), index_(problem_.E) {
  problem_.validate();
  build();
}

void Analysis::build() {
  members_ = logogram_.reduced.to_vector();
  target_ = index_.mask_of(relative_target(problem_.E, problem_.F));
  coverage_.assign(index_.word_count(), 0);
  cylinders_.reserve(members_.size());
  for (const auto& g : members_) {
    cylinders_.push_back(index_.cylinder(g));
    for_each_bit(cylinders_.back(), [&](std::size_t w) { ++coverage_[w]; });
  }
  if (problem_.regions)
    for (const auto& region : *problem_.regions)
      region_targets_.push_back(index_.mask_of(relative_target(problem_.E, region)));
}

std::optional<std::size_t> Analysis::member_index(const PartialString& g) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), g, StringOrder{});
  if (it == members_.end() || !(*it == g)) return std::nullopt;
  return static_cast<std::size_t>(it - members_.begin());
}

std::vector<int> Analysis::containing_regions(const WordMask& cyl) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < region_targets_.size(); ++i)
    if (cyl.is_subset_of(region_targets_[i])) out.push_back(static_cast<int>(i + 1));
  return out;
}

// ---------------------------------------------------------------------------

const char* to_string(WitnessKind kind) noexcept {
  switch (kind) {
    case WitnessKind::ProperWitness: return "ProperWitness";
    case WitnessKind::ImproperWitness: return "ImproperWitness";
    case WitnessKind::Wizard: return "Wizard";
  }
  return "?";
}

namespace {

StringVerdict verdict_for(std::size_t i, const Analysis& a) {
  StringVerdict v{a.members()[i], WitnessKind::Wizard, a.containing_regions(a.cylinder(i))};
  if (v.containing_regions.size() == 1)
    v.kind = WitnessKind::ProperWitness;
  else if (v.containing_regions.size() >= 2)
    v.kind = WitnessKind::ImproperWitness;
  return v;
}

void require_regions(const Analysis& a, const char* who) {
  if (!a.has_regions()) throw PreconditionError(std::string(who) + ": problem has no solution regions");
}

}  // namespace

StringVerdict classify(const PartialString& g, const Analysis& analysis) {
  require_regions(analysis, "classify");
  auto i = analysis.member_index(g);
  if (!i) throw PreconditionError("classify: '" + show(g) + "' is not in the reduced logogram");
  return verdict_for(*i, analysis);
}

std::vector<StringVerdict> classify_all(const Analysis& analysis) {
  require_regions(analysis, "classify_all");
  std::vector<StringVerdict> out;
  out.reserve(analysis.members().size());
  for (std::size_t i = 0; i < analysis.members().size(); ++i) out.push_back(verdict_for(i, analysis));
  return out;
}

std::vector<StringSet> region_logograms(const Analysis& analysis, const LogogramOptions& options) {
  require_regions(analysis, "region_logograms");
  std::vector<StringSet> out;
  for (const auto& region : *analysis.problem().regions)
    out.push_back(log_rel(analysis.problem().E, region, options).reduced);
  return out;
}

bool Theorem8Report::holds() const noexcept {
  return std::all_of(cases.begin(), cases.end(), [](const WizardCase& c) { return c.union_covers; });
}

Theorem8Report verify_theorem8(const Analysis& analysis, const LogogramOptions& options) {
  require_regions(analysis, "verify_theorem8");
  Theorem8Report report;
  report.reduced_size = analysis.members().size();
  std::vector<std::size_t> wizards;
  for (std::size_t i = 0; i < analysis.members().size(); ++i)
    if (verdict_for(i, analysis).kind == WitnessKind::Wizard) wizards.push_back(i);
  report.wizards = wizards.size();
  if (wizards.empty()) return report;

  StringSet pool(analysis.problem().E.alphabet());
  for (const auto& L : region_logograms(analysis, options))
    for (const auto& f : L) pool.insert(f);
  const auto& idx = analysis.index();

  for (auto i : wizards) {
    const auto& cyl = analysis.cylinder(i);
    WizardCase c;
    c.wizard = analysis.members()[i];
    WordMask covered = idx.none();
    for (const auto& f : pool) {
      auto cf = idx.cylinder(f);
      if (!cf.intersects(cyl)) continue;
      c.witnesses.push_back(f);
      covered |= cf;
      if (cf.is_subset_of(cyl)) c.witness_inside = true;
    }
    c.union_covers = cyl.is_subset_of(covered);
    c.proper_inclusion = c.union_covers && covered != cyl;
    report.cases.push_back(std::move(c));
  }
  return report;
}

// ---------------------------------------------------------------------------

const char* to_string(IndependenceProperty p) noexcept {
  switch (p) {
    case IndependenceProperty::Internal: return "Internal";
    case IndependenceProperty::Strong: return "Strong";
    case IndependenceProperty::Complete: return "Complete";
  }
  return "?";
}

IndependenceVerdict internal_independence(const Analysis& analysis) {
  IndependenceVerdict v;
  v.property = IndependenceProperty::Internal;
  const auto& ms = analysis.members();
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      ++v.subsets_checked;
      const auto& a = analysis.cylinder(i);
      const auto& b = analysis.cylinder(j);
      const bool ab = a.is_subset_of(b), ba = b.is_subset_of(a);
      if ((ab || ba) && v.holds) {
        v.holds = false;
        v.counterexample = show({ms[i], ms[j]}) + ": Exp_E(" + show(ab ? ms[i] : ms[j]) +
                           ") is included in Exp_E(" + show(ab ? ms[j] : ms[i]) + ")";
      }
    }
  return v;
}

namespace {

/// Index of a word in the cylinder covered by no other member.
std::optional<std::size_t> sole_cover(const Analysis& a, std::size_t i) {
  const auto& cov = a.coverage();
  const auto& cyl = a.cylinder(i);
  for (auto w = cyl.find_first(); w != WordMask::npos; w = cyl.find_next(w))
    if (cov[w] == 1) return w;
  return std::nullopt;
}

}  // namespace

IndependenceVerdict strong_independence(const Analysis& analysis) {
  IndependenceVerdict v;
  v.property = IndependenceProperty::Strong;
  for (std::size_t i = 0; i < analysis.members().size(); ++i) {
    ++v.subsets_checked;
    if (!sole_cover(analysis, i)) {
      v.holds = false;
      v.counterexample = show({analysis.members()[i]}) +
                         ": every E-word including it includes another reduced-logogram string";
      break;
    }
  }
  return v;
}

bool irreducible(const Analysis& analysis) {
  for (std::size_t i = 0; i < analysis.members().size(); ++i)
    if (!sole_cover(analysis, i)) return false;
  return true;
}

bool completeness_of_subset(const StringSet& H, const Analysis& analysis) {
  require_same_alphabet(H.alphabet(), analysis.problem().E.alphabet(), "completeness_of_subset");
  if (!H.subset_of(analysis.reduced()))
    throw PreconditionError("completeness_of_subset: H is not within the reduced logogram");
  return analysis.index().cylinder(H) == analysis.target();
}

// ---------------------------------------------------------------------------

Word construct_separator(const StringSet& fs, const EchelonSpec& spec) {
  if (!fs.alphabet().contains('2') || fs.alphabet().size() != 3)
    throw PreconditionError("construct_separator: strings must be over {0,1,2}");
  std::string body(static_cast<std::size_t>(spec.n * spec.m), kBlank);
  for (const auto& f : fs)
    for (auto [pos, sym] : f.entries()) {
      if (pos <= spec.prefix_length() || pos > spec.word_length())
        throw PreconditionError("construct_separator: '" + show(f) + "' prescribes position " +
                                std::to_string(pos) + " outside the clause body");
      char& cell = body[pos - spec.prefix_length() - 1];
      if (cell != kBlank && cell != sym)
        throw PreconditionError("construct_separator: incompatible prescriptions at position " +
                                std::to_string(pos));
      cell = sym;
    }
  std::replace(body.begin(), body.end(), kBlank, '0');
  return Word(sat::echelon_prefix(spec).chars() + body);
}

bool separates(const Word& x, const StringSet& fs, const Analysis& analysis) {
  if (!analysis.problem().E.contains(x)) return false;
  PartialString j;
  for (const auto& f : fs) {
    if (!x.includes(f)) return false;
    j = *join(j, f);  // x includes both, so they are compatible
  }
  for (const auto& g : analysis.members())
    if (x.includes(g) && !extends(j, g)) return false;
  return true;
}

namespace {

// Depth-first walk over pairwise-compatible subsets in lexicographic order of
// member-index sequences.
class SubsetWalk {
 public:
  explicit SubsetWalk(const Analysis& a) : a_(a), alphabet_(a.problem().E.alphabet()) {
    const auto& ms = a.members();
    int max_size = std::max(1, a.problem().E.max_length());
    for (const auto& g : ms) max_size = std::max(max_size, g.size());
    packed_ok_ = packable(alphabet_, max_size);
    if (packed_ok_) {
      for (const auto& g : ms) packed_.push_back(pack(g, alphabet_));
      for (const auto& w : a.problem().E) words_.push_back(pack(w, alphabet_));
    }
    if (packed_ok_ && a.problem().echelon && alphabet_ == Alphabet::ternary()) {
      const auto& spec = *a.problem().echelon;
      sat_fast_ = spec.word_length() <= kMaxPackedPositions;
      if (sat_fast_) {
        prefix_ = pack(sat::echelon_prefix(spec), alphabet_);
        for (int p = spec.prefix_length() + 1; p <= spec.word_length(); ++p)
          body_mask_ |= std::uint64_t{1} << (p - 1);
      }
    }
    compat_.assign(ms.size(), std::vector<char>(ms.size(), 0));
    for (std::size_t i = 0; i < ms.size(); ++i)
      for (std::size_t j = 0; j < ms.size(); ++j) compat_[i][j] = compatible(ms[i], ms[j]);
  }

  std::uint64_t count(std::uint64_t limit) {
    std::uint64_t n = 0;
    std::vector<std::size_t> chosen;
    count_rec(0, chosen, n, limit);
    return n;
  }

  IndependenceVerdict check(int max_size) {
    IndependenceVerdict v;
  v.property = IndependenceProperty::Complete;
    std::vector<std::size_t> chosen;
    check_rec(0, chosen, PartialString{}, PackedString{}, max_size, v);
    return v;
  }

 private:
  bool fits(const std::vector<std::size_t>& chosen, std::size_t k) const {
    return std::all_of(chosen.begin(), chosen.end(), [&](std::size_t c) { return compat_[c][k]; });
  }

  void count_rec(std::size_t from, std::vector<std::size_t>& chosen, std::uint64_t& n,
                 std::uint64_t limit) {
    for (std::size_t k = from; k < a_.members().size() && n <= limit; ++k) {
      if (!fits(chosen, k)) continue;
      ++n;
      chosen.push_back(k);
      count_rec(k + 1, chosen, n, limit);
      chosen.pop_back();
    }
  }

  bool check_rec(std::size_t from, std::vector<std::size_t>& chosen, const PartialString& j,
                 const PackedString& pj, int max_size, IndependenceVerdict& v) {
    if (max_size > 0 && static_cast<int>(chosen.size()) >= max_size) return true;
    for (std::size_t k = from; k < a_.members().size(); ++k) {
      if (!fits(chosen, k)) continue;
      chosen.push_back(k);
      const PartialString jk = *join(j, a_.members()[k]);
      const PackedString pjk = packed_ok_ ? join_compatible(pj, packed_[k]) : PackedString{};
      ++v.subsets_checked;
      if (!separated(jk, pjk)) {
        v.holds = false;
        std::vector<PartialString> fs;
        for (auto c : chosen) fs.push_back(a_.members()[c]);
        v.counterexample = show(fs) + ": no E-word includes the join " + show(jk) +
                           " while avoiding every reduced-logogram string not below it";
        return false;
      }
      if (!check_rec(k + 1, chosen, jk, pjk, max_size, v)) return false;
      chosen.pop_back();
    }
    return true;
  }

  bool admissible(const PackedString& x, const PackedString& pj) const {
    for (const auto& g : packed_)
      if (extends(x, g) && !extends(pj, g)) return false;
    return true;
  }

  bool separated(const PartialString& j, const PackedString& pj) {
    // SAT echelons: try the literal-union word first (packed form of
    // construct_separator).
    if (sat_fast_ && (pj.domain & ~body_mask_) == 0) {
      PackedString x = prefix_;
      x.domain |= body_mask_;
      for (int k = 0; k < 3; ++k) x.planes[k] |= pj.planes[k];
      if (admissible(x, pj)) return true;
    }
    const auto cyl = a_.index().cylinder(j);
    if (packed_ok_) {
      for (auto w = cyl.find_first(); w != WordMask::npos; w = cyl.find_next(w))
        if (admissible(words_[w], pj)) return true;
      return false;
    }
    WordMask forbidden = a_.index().none();
    for (std::size_t k = 0; k < a_.members().size(); ++k)
      if (!extends(j, a_.members()[k])) forbidden |= a_.cylinder(k);
    return cyl.intersects(~forbidden);
  }

  const Analysis& a_;
  Alphabet alphabet_;
  bool packed_ok_ = false;
  bool sat_fast_ = false;
  PackedString prefix_;
  std::uint64_t body_mask_ = 0;
  std::vector<PackedString> packed_;
  std::vector<PackedString> words_;
  std::vector<std::vector<char>> compat_;
};

}  // namespace

std::uint64_t count_compatible_subsets(const Analysis& analysis, std::uint64_t limit) {
  return SubsetWalk(analysis).count(limit);
}

IndependenceVerdict complete_independence(const Analysis& analysis, int max_subset,
                                          std::uint64_t subset_limit) {
  if (max_subset < 2) throw PreconditionError("complete_independence: max_subset must be >= 2");
  SubsetWalk walk(analysis);
  const bool exhaustive = walk.count(subset_limit) <= subset_limit;
  auto v = walk.check(exhaustive ? 0 : max_subset);
  v.partial = !exhaustive;
  return v;
}

// ---------------------------------------------------------------------------

void EventFamily::validate() const {
  for (std::size_t i = 0; i < events.size(); ++i) {
    require_same_alphabet(universe.alphabet(), events[i].alphabet(), "EventFamily");
    if (!events[i].subset_of(universe))
      throw PreconditionError("event " + std::to_string(i + 1) + " is not within the universe");
  }
}

std::vector<FiniteLanguage> atomic_constituents(const EventFamily& family, int max_events) {
  family.validate();
  const int m = static_cast<int>(family.events.size());
  if (m > max_events || m > 62)
    throw BudgetExceeded("atomic_constituents: too many events", static_cast<std::uint64_t>(m),
                         static_cast<std::uint64_t>(std::min(max_events, 62)));
  WordIndex idx(family.universe);
  std::vector<WordMask> ev;
  for (const auto& e : family.events) ev.push_back(idx.mask_of(e));
  std::vector<FiniteLanguage> out;
  for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << m); ++pattern) {
    WordMask c = idx.all();
    for (int i = 0; i < m && c.any(); ++i) c &= ((pattern >> i) & 1) ? ev[i] : ~ev[i];
    if (c.any()) out.push_back(idx.words_of(c));
  }
  return out;
}

bool completely_independent_events(const EventFamily& family, int max_events) {
  const auto m = family.events.size();
  return atomic_constituents(family, max_events).size() == (std::size_t{1} << m);
}

EventScan scan_cover_events(const Analysis& analysis, int arity, std::uint64_t limit) {
  if (arity < 1 || arity > 16) throw PreconditionError("scan_cover_events: arity must be in 1..16");
  EventScan scan;
  scan.arity = arity;
  const auto& ms = analysis.members();
  const auto& universe = analysis.target();
  std::vector<std::size_t> chosen;

  auto independent = [&] {
    for (std::uint32_t pattern = 0; pattern < (1u << arity); ++pattern) {
      WordMask c = universe;
      for (int i = 0; i < arity && c.any(); ++i)
        c &= ((pattern >> i) & 1) ? analysis.cylinder(chosen[i]) : ~analysis.cylinder(chosen[i]);
      if (c.none()) return false;
    }
    return true;
  };

  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (static_cast<int>(chosen.size()) == arity) {
      ++scan.families;
      if (independent()) {
        ++scan.independent;
      } else if (!scan.first_dependent) {
        std::vector<PartialString> fs;
        for (auto c : chosen) fs.push_back(ms[c]);
        scan.first_dependent = show(fs);
      }
      return;
    }
    for (std::size_t k = from; k < ms.size() && scan.families < limit; ++k) {
      const bool meets = std::all_of(chosen.begin(), chosen.end(), [&](std::size_t c) {
        return analysis.cylinder(c).intersects(analysis.cylinder(k));
      });
      if (!meets) continue;
      chosen.push_back(k);
      self(self, k + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
  return scan;
}

// ---------------------------------------------------------------------------

bool RegionReport::holds() const noexcept {
  return std::all_of(rows.begin(), rows.end(), [](const RegionRow& r) { return r.holds(); });
}

RegionReport region_relations(const Analysis& analysis, bool ignore_bewitched,
                              const LogogramOptions& options) {
  require_regions(analysis, "region_relations");
  RegionReport report;
  report.spec = analysis.problem().echelon.value_or(EchelonSpec{});
  report.ignore_bewitched = ignore_bewitched;

  const auto& idx = analysis.index();
  auto logos = region_logograms(analysis, options);
  for (auto& L : logos) {
    std::size_t removed = 0;
    if (ignore_bewitched) {
      StringSet kept(L.alphabet());
      for (const auto& g : L) {
        if (analysis.containing_regions(idx.cylinder(g)).size() >= 2)
          ++removed;
        else
          kept.insert(g);
      }
      L = std::move(kept);
    }
    report.removed_improper.push_back(removed);
    report.region_sizes.push_back(L.size());
  }

  StringSet earlier(analysis.problem().E.alphabet());
  for (std::size_t i = 0; i + 1 < logos.size(); ++i) {
    for (const auto& g : logos[i]) earlier.insert(g);
    const auto& next = logos[i + 1];
    RegionRow row;
    row.region = static_cast<int>(i + 2);
    row.next_size = next.size();
    row.earlier_size = earlier.size();
    row.disjoint = std::none_of(next.begin(), next.end(), [&](const PartialString& g) { return earlier.contains(g); });
    row.earlier_entangles_next = entangles_sets(earlier, next, idx);
    row.next_entangles_earlier = entangles_sets(next, earlier, idx);
    report.rows.push_back(row);
  }
  return report;
}

RegionReport region_relations(const EchelonSpec& spec, bool ignore_bewitched, const LogogramOptions& options) {
  Analysis analysis(sat::enumerate_echelon(spec), options);
  return region_relations(analysis, ignore_bewitched, options);
}

// ---------------------------------------------------------------------------

SatShapeReport sat_shape(const Analysis& analysis) {
  const auto& spec_opt = analysis.problem().echelon;
  if (!spec_opt) throw PreconditionError("sat_shape: problem is not a SAT echelon");
  const auto spec = *spec_opt;
  SatShapeReport r;
  r.members = analysis.members().size();
  r.expected_members = sat::consistent_selection_count(spec.n, spec.m);
  for (const auto& v : classify_all(analysis)) {
    switch (v.kind) {
      case WitnessKind::ProperWitness: ++r.proper; break;
      case WitnessKind::ImproperWitness: ++r.improper; break;
      case WitnessKind::Wizard: ++r.wizards; break;
    }
  }

  auto refute = [&](std::size_t& counter, const PartialString& g, const std::string& why) {
    ++counter;
    if (!r.first_refutation) r.first_refutation = show(g) + ": " + why;
  };

  for (const auto& g : analysis.members()) {
    bool codes_ok = true;
    std::vector<int> per_clause(spec.m, 0);
    std::vector<int> sign(spec.n + 1, 0);  // 0 unseen, 1 positive, 2 negative, 3 both
    for (auto [pos, sym] : g.entries()) {
      if (pos <= spec.prefix_length() || pos > spec.word_length() || (sym != '1' && sym != '2')) {
        codes_ok = false;
        continue;
      }
      const int off = pos - spec.prefix_length() - 1;
      ++per_clause[off / spec.n];
      sign[off % spec.n + 1] |= sym == '1' ? 1 : 2;
    }
    if (!codes_ok) refute(r.non_literal_code, g, "prescribes a code other than 1 or 2 in the body");
    if (std::any_of(per_clause.begin(), per_clause.end(), [](int c) { return c != 1; }))
      refute(r.not_one_per_clause, g, "does not prescribe exactly one literal per clause");
    if (std::any_of(sign.begin(), sign.end(), [](int s) { return s == 3; }))
      refute(r.inconsistent, g, "prescribes a variable and its negation");
  }
  return r;
}

}  // namespace strcalc
