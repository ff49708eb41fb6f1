#include "doctest.h"

#include <map>
#include <memory>

#include "oracles.hpp"
#include "strcalc/independence.hpp"
#include "strcalc/sat.hpp"

using namespace strcalc;

namespace {

PartialString ps(std::string_view s) { return PartialString::parse(s); }

const Analysis& echelon(int n, int m) {
  static std::map<std::pair<int, int>, std::unique_ptr<Analysis>> cache;
  auto& slot = cache[{n, m}];
  if (!slot) slot = std::make_unique<Analysis>(sat::enumerate_echelon({n, m}));
  return *slot;
}

DecisionProblem toy() {
  const auto b = Alphabet::binary();
  std::vector<FiniteLanguage> regions{FiniteLanguage(b, {"01"}), FiniteLanguage(b, {"10"}),
                                      FiniteLanguage(b, {"11"})};
  return DecisionProblem{FiniteLanguage::exact_slice(b, 2), FiniteLanguage(b, {"01", "10", "11"}), regions,
                         std::nullopt};
}

// String prescribing code c at (clause, var) pairs.
PartialString prescribe(const EchelonSpec& spec, std::initializer_list<std::tuple<int, int, char>> codes) {
  std::vector<std::pair<int, char>> entries;
  for (auto [clause, var, c] : codes) entries.emplace_back(spec.body_position(clause, var), c);
  return PartialString::from_entries(entries);
}

// Tracks every problem on which both properties are evaluated.
struct ImplicationLog {
  int evaluated = 0;
  int strong = 0;
  int violations = 0;
  void record(const Analysis& a) {
    const bool s = strong_independence(a).holds, i = internal_independence(a).holds;
    ++evaluated;
    strong += s;
    violations += s && !i;
  }
};

}  // namespace

TEST_SUITE("independence") {

TEST_CASE("entanglement examples") {
  const auto b = Alphabet::binary();
  const auto E = FiniteLanguage::exact_slice(b, 2);
  CHECK(entangles(ps("10"), ps("1_"), E));
  CHECK(entangles(ps("1_"), ps("10"), FiniteLanguage(b, {"10"})));
  CHECK_FALSE(entangles(ps("1_"), ps("_1"), E));
  CHECK(pairwise_independent(ps("1_"), ps("_1"), E));
  CHECK_FALSE(pairwise_independent(ps("10"), ps("1_"), E));
  CHECK_THROWS_AS(entangles(ps("111"), ps("1"), E), PreconditionError);
  CHECK(entangles_sets(StringSet(b, {"10"}), StringSet(b, {"1_"}), E));
  CHECK(entangles_sets(StringSet(b), StringSet(b, {"1_"}), E));
  CHECK_FALSE(entangles_sets(StringSet(b, {"_1"}), StringSet(b, {"1_"}), E));
}

TEST_CASE("entanglement is cylinder inclusion") {
  LanguageSampler rng(51);
  const auto a = Alphabet::ternary();
  for (int trial = 0; trial < 200; ++trial) {
    const auto E = rng.language(a, 4, 15);
    const auto S = strings_of(E).to_vector();
    if (S.empty()) continue;
    const auto& f = S[rng.uniform(0, S.size() - 1)];
    const auto& g = S[rng.uniform(0, S.size() - 1)];
    std::vector<std::string> words;
    for (const auto& w : E) words.push_back(w.chars());
    const auto ef = oracle::expand({f.cells()}, words), eg = oracle::expand({g.cells()}, words);
    CHECK(entangles(f, g, E) == std::includes(eg.begin(), eg.end(), ef.begin(), ef.end()));
    CHECK(entangles(f, g, E) == entangles(f, g, WordIndex(E)));
  }
}

TEST_CASE("smallest echelon") {
  const auto& a = echelon(1, 1);
  REQUIRE(a.members().size() == 2);
  CHECK(pairwise_independent(a.members()[0], a.members()[1], a.problem().E));
  const auto v = classify(ps("____1"), a);
  CHECK(v.kind == WitnessKind::ProperWitness);
  CHECK(v.containing_regions == std::vector<int>{2});
  CHECK(internal_independence(a).holds);
  CHECK(strong_independence(a).holds);
  CHECK(irreducible(a));
  const auto regions = region_relations(a, false);
  REQUIRE(regions.rows.size() == 1);
  CHECK(regions.holds());
}

TEST_CASE("pseudowizards in echelon (2,1)") {
  const auto& a = echelon(2, 1);
  const EchelonSpec spec{2, 1};
  const auto v = classify(prescribe(spec, {{1, 1, '1'}}), a);
  CHECK(v.kind == WitnessKind::ImproperWitness);
  CHECK(v.containing_regions == std::vector<int>{2, 4});
  CHECK_THROWS_AS(classify(ps("1"), a), PreconditionError);

  // body "10" includes only the c1v1 string
  const auto x = construct_separator(StringSet(Alphabet::ternary(), {prescribe(spec, {{1, 1, '1'}}).render()}), spec);
  CHECK(x.chars() == "0010110");
  CHECK(separates(x, StringSet(Alphabet::ternary(), {prescribe(spec, {{1, 1, '1'}}).render()}), a));

  const StringSet pair(Alphabet::ternary(),
                       {prescribe(spec, {{1, 1, '1'}}).render(), prescribe(spec, {{1, 2, '2'}}).render()});
  CHECK(construct_separator(pair, spec).chars() == "0010112");
  CHECK(separates(construct_separator(pair, spec), pair, a));

  CHECK_FALSE(region_relations(a, false).holds());
}

TEST_CASE("separator construction errors") {
  const EchelonSpec spec{2, 1};
  const auto t = Alphabet::ternary();
  CHECK_THROWS_AS(construct_separator(StringSet(t, {"_____1", "_____2"}), spec), PreconditionError);
  CHECK_THROWS_AS(construct_separator(StringSet(t, {"1"}), spec), PreconditionError);
  CHECK_THROWS_AS(construct_separator(StringSet(Alphabet::binary(), {"_____1"}), spec), PreconditionError);
  CHECK(construct_separator(StringSet(t), spec).chars() == "0010100");
}

TEST_CASE("echelon (2,2)") {
  const auto& a = echelon(2, 2);
  const EchelonSpec spec{2, 2};
  CHECK(a.members().size() == 12);
  CHECK(a.members().size() == oracle::selection_count(2, 2));

  const auto x = construct_separator(StringSet(Alphabet::ternary(), {prescribe(spec, {{1, 1, '1'}, {2, 1, '1'}}).render()}), spec);
  CHECK(x.chars().substr(spec.prefix_length()) == "1010");
  CHECK(x == sat::encode(sat::parse_formula("1;1", 2)));

  for (const auto& v : classify_all(a)) CHECK(v.kind != WitnessKind::Wizard);
  const auto shape = sat_shape(a);
  CHECK(shape.shape_holds());
  CHECK(shape.wizards == 0);
  CHECK(shape.members == shape.expected_members);
  CHECK(shape.proper + shape.improper == 12);

  CHECK(internal_independence(a).holds);
  CHECK(strong_independence(a).holds);
  const auto complete = complete_independence(a);
  CHECK(complete.holds);
  CHECK_FALSE(complete.partial);
  CHECK(complete.subsets_checked == count_compatible_subsets(a, kExhaustiveSubsetLimit));
  CHECK(irreducible(a));

  const auto filtered = region_relations(a, true);
  CHECK(filtered.rows.size() == 3);
  CHECK(filtered.holds());
  CHECK_FALSE(region_relations(a, false).holds());

  const auto th8 = verify_theorem8(a);
  CHECK(th8.wizards == 0);
  CHECK(th8.holds());
}

TEST_CASE("completeness of subsets") {
  const auto& a = echelon(2, 2);
  CHECK(completeness_of_subset(a.reduced(), a));
  CHECK_FALSE(completeness_of_subset(StringSet(a.reduced().alphabet()), a));
  for (const auto& g : a.members()) {
    auto H = a.reduced();
    H.erase(g);
    CHECK_FALSE(completeness_of_subset(H, a));
  }
  CHECK_THROWS_AS(completeness_of_subset(StringSet(Alphabet::ternary(), {"1"}), a), PreconditionError);
}

TEST_CASE("separators built from compatible subsets separate") {
  const auto& a = echelon(2, 2);
  const auto& ms = a.members();
  const EchelonSpec spec{2, 2};
  int checked = 0;
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      if (!compatible(ms[i], ms[j])) continue;
      StringSet fs(Alphabet::ternary());
      fs.insert(ms[i]);
      fs.insert(ms[j]);
      CHECK(separates(construct_separator(fs, spec), fs, a));
      ++checked;
    }
  CHECK(checked > 0);
}

TEST_CASE("toy wizard problem") {
  const Analysis a(toy());
  CHECK(a.reduced() == StringSet(Alphabet::binary(), {"1", "_1"}));
  for (const auto& v : classify_all(a)) {
    CHECK(v.kind == WitnessKind::Wizard);
    CHECK(v.containing_regions.empty());
  }
  const auto report = verify_theorem8(a);
  CHECK(report.wizards == 2);
  REQUIRE(report.cases.size() == 2);
  for (const auto& c : report.cases) {
    CHECK(c.union_covers);
    CHECK_FALSE(c.proper_inclusion);
    CHECK(c.witness_inside);
  }
  CHECK(report.holds());
  CHECK(complete_independence(a).holds);

  DecisionProblem no_regions = toy();
  no_regions.regions.reset();
  CHECK_THROWS_AS(verify_theorem8(Analysis(no_regions)), PreconditionError);
}

TEST_CASE("single member logograms") {
  const auto b = Alphabet::binary();
  const Analysis one(DecisionProblem{FiniteLanguage(b, {"10"}), FiniteLanguage(b, {"10"}), std::nullopt, std::nullopt});
  CHECK(one.members().size() == 1);
  CHECK(internal_independence(one).holds);
  const Analysis eleven(
      DecisionProblem{FiniteLanguage::exact_slice(b, 2), FiniteLanguage(b, {"11"}), std::nullopt, std::nullopt});
  CHECK(eleven.reduced() == StringSet(b, {"11"}));
  CHECK(irreducible(eleven));
}

TEST_CASE("strong independence implies internal independence") {
  ImplicationLog log;
  LanguageSampler rng(52);
  for (int trial = 0; trial < 150; ++trial) {
    const auto a = trial % 3 ? Alphabet::binary() : Alphabet::ternary();
    auto E = rng.language(a, 4, 2 + rng.uniform(0, 10));
    if (E.empty()) E = FiniteLanguage(a, {"1"});
    auto F = rng.sublanguage(E, 0.5);
    log.record(Analysis(DecisionProblem{E, F, std::nullopt, std::nullopt}));
  }
  log.record(Analysis(toy()));
  for (auto [n, m] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}}) log.record(echelon(n, m));
  CHECK(log.evaluated == 155);
  CHECK(log.strong > 0);
  CHECK(log.violations == 0);
}

TEST_CASE("classification partitions the reduced logogram") {
  for (auto [n, m] : {std::pair{1, 1}, {2, 1}, {1, 2}, {2, 2}}) {
    const auto& a = echelon(n, m);
    const auto all = classify_all(a);
    CHECK(all.size() == a.members().size());
    for (const auto& v : all) {
      const auto k = v.containing_regions.size();
      CHECK(v.kind == (k == 0 ? WitnessKind::Wizard : k == 1 ? WitnessKind::ProperWitness : WitnessKind::ImproperWitness));
    }
  }
}

TEST_CASE("atomic constituents examples") {
  const auto b = Alphabet::binary();
  const auto F = FiniteLanguage::exact_slice(b, 2);
  const FiniteLanguage e1(b, {"00", "01"}), e2(b, {"01", "10"});

  const auto one = atomic_constituents(EventFamily{F, {e1}});
  CHECK(one.size() == 2);
  CHECK(completely_independent_events(EventFamily{F, {e1}}));

  CHECK(atomic_constituents(EventFamily{F, {e1, e1}}).size() == 2);
  CHECK_FALSE(completely_independent_events(EventFamily{F, {e1, e1}}));

  const auto four = atomic_constituents(EventFamily{F, {e1, e2}});
  REQUIRE(four.size() == 4);
  CHECK(four.front() == FiniteLanguage(b, {"11"}));
  CHECK(four.back() == FiniteLanguage(b, {"01"}));
  CHECK(completely_independent_events(EventFamily{F, {e1, e2}}));

  CHECK_FALSE(completely_independent_events(EventFamily{F, {e1, FiniteLanguage(b, {"11"})}}));
  CHECK_THROWS_AS((EventFamily{F, {FiniteLanguage(b, {"111"})}}.validate()), PreconditionError);
}

TEST_CASE("cover events of echelon (2,2)") {
  const auto& a = echelon(2, 2);
  const auto pairs = scan_cover_events(a, 2);
  CHECK(pairs.families > 0);
  CHECK(pairs.independent == pairs.families);
  CHECK_FALSE(pairs.first_dependent.has_value());
}

}  // TEST_SUITE
