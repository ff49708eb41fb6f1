#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "strcalc/logogram.hpp"
#include "strcalc/sat.hpp"

using namespace strcalc;

namespace {

std::set<std::string> cells_of(const StringSet& H) {
  std::set<std::string> out;
  for (const auto& g : H) out.insert(g.cells());
  return out;
}

std::vector<std::string> chars_of(const FiniteLanguage& L) {
  std::vector<std::string> out;
  for (const auto& w : L) out.push_back(w.chars());
  return out;
}

DecisionProblem random_problem(LanguageSampler& rng, int cap) {
  const auto a = rng.uniform(0, 1) ? Alphabet::ternary() : Alphabet::binary();
  auto E = rng.language(a, cap, 1 + rng.uniform(0, 12));
  while (E.empty()) E = rng.language(a, cap, 4);
  auto F = rng.sublanguage(E, 0.5);
  return DecisionProblem{std::move(E), std::move(F), std::nullopt, std::nullopt};
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& name) : path(std::filesystem::temp_directory_path() / name) {
    std::filesystem::remove_all(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

}  // namespace

TEST_SUITE("logogram") {

TEST_CASE("relative logogram of the first-symbol problem") {
  const auto b = Alphabet::binary();
  const auto E = FiniteLanguage::exact_slice(b, 2);
  const FiniteLanguage F(b, {"10", "11"});
  LogogramOptions opts;
  opts.restrict_constant_prefix = false;
  const auto r = log_rel(E, F, opts);
  CHECK(r.full == StringSet(b, {"1_", "10", "11"}));
  CHECK(r.reduced == StringSet(b, {"1_"}));
  CHECK(r.candidate_space_size == 9);
  CHECK(verify_theorem7(DecisionProblem{E, F, std::nullopt, std::nullopt}));
}

TEST_CASE("logogram of a union can contain the empty string") {
  const auto b = Alphabet::binary();
  const auto E = FiniteLanguage::exact_slice(b, 2);
  const FiniteLanguage A(b, {"01", "10"}), B(b, {"00", "11"});
  const auto ra = log_rel(E, A), rb = log_rel(E, B), ru = log_rel(E, lang_union(A, B));
  CHECK(ra.reduced == StringSet(b, {"01", "10"}));
  CHECK(ru.reduced == StringSet(b, {""}));
  CHECK_FALSE(set_union(ra.full, rb.full).contains(PartialString::bottom()));
  CHECK(ru.full.contains(PartialString::bottom()));
}

TEST_CASE("absolute logogram examples") {
  const auto b = Alphabet::binary();
  const auto U = FiniteLanguage::full_slice(b, LengthCap(2));
  const auto r = log_abs(FiniteLanguage(b, {"1"}), U);
  CHECK(r.full.contains(PartialString::parse("1")));
  CHECK(r.full.contains(PartialString::parse("10")));
  CHECK(r.reduced == StringSet(b, {"1"}));
  CHECK(log_abs(FiniteLanguage(b), U).full.empty());
  CHECK(log_abs(U, U).full == strings_of(U));
}

TEST_CASE("logogram expansion identity on empty and full targets") {
  const auto b = Alphabet::binary();
  const auto E = FiniteLanguage::exact_slice(b, 3);
  CHECK(verify_theorem7(DecisionProblem{E, FiniteLanguage(b), std::nullopt, std::nullopt}));
  CHECK(verify_theorem7(DecisionProblem{E, E, std::nullopt, std::nullopt}));
  CHECK(log_rel(E, FiniteLanguage(b)).full.empty());
}

TEST_CASE("relative target uses prefixes when E is not prefix-free") {
  const auto b = Alphabet::binary();
  const FiniteLanguage E(b, {"1", "10", "0"});
  CHECK(relative_target(E, FiniteLanguage(b, {"1"})) == FiniteLanguage(b, {"1", "10"}));
  CHECK(relative_target(FiniteLanguage::exact_slice(b, 2), FiniteLanguage(b, {"10"})) ==
        FiniteLanguage(b, {"10"}));
}

TEST_CASE("constant prefix and candidate space") {
  const auto spec = EchelonSpec{2, 2};
  const auto p = sat::enumerate_echelon(spec);
  CHECK(constant_prefix(p.E).size() == 6);
  CHECK(candidate_space(3, 4) == 256);
  CHECK(candidate_space(3, 40) == UINT64_MAX);
  CHECK(constant_prefix(FiniteLanguage(Alphabet::binary(), {"", "1"})).empty());
}

TEST_CASE("budget is enforced") {
  const auto E = FiniteLanguage::exact_slice(Alphabet::binary(), 6);
  LogogramOptions opts;
  opts.budget = 100;
  CHECK_THROWS_AS(log_rel(E, E, opts), BudgetExceeded);
  opts.budget = 729;
  CHECK_NOTHROW(log_rel(E, E, opts));
}

TEST_CASE("optimized search matches the naive enumerator on random problems") {
  LanguageSampler rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const auto p = random_problem(rng, 4);
    const auto naive = oracle::naive_log_rel(p.E.alphabet().symbols(), chars_of(p.E), chars_of(p.F));
    LogogramOptions plain;
    plain.restrict_constant_prefix = false;
    const auto r = log_rel(p, plain);
    CHECK(cells_of(r.full) == naive.full);
    CHECK(cells_of(r.reduced) == naive.reduced);
    CHECK(cells_of(log_rel(p).reduced) == naive.reduced);
    LogogramOptions threaded;
    threaded.threads = 3;
    CHECK(log_rel(p, threaded).full == log_rel(p).full);
  }
}

TEST_CASE("optimized search matches the naive enumerator on small echelons") {
  for (const auto spec : {EchelonSpec{1, 1}, EchelonSpec{2, 1}, EchelonSpec{1, 2}}) {
    const auto p = sat::enumerate_echelon(spec);
    const auto naive = oracle::naive_log_rel("012", chars_of(p.E), chars_of(p.F));
    LogogramOptions plain;
    plain.restrict_constant_prefix = false;
    CHECK(cells_of(log_rel(p, plain).reduced) == naive.reduced);
    CHECK(cells_of(log_rel(p).reduced) == naive.reduced);
  }
}

TEST_CASE("logogram expansion identity on random problems") {
  LanguageSampler rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = random_problem(rng, 5);
    const auto r = log_rel(p);
    const auto t = verify_theorem7(p, r);
    CHECK(t.full_holds);
    CHECK(t.reduced_holds);
    CHECK(is_reduced(r.reduced));
    CHECK(r.reduced.subset_of(r.full));
  }
}

TEST_CASE("cover of the smallest echelon") {
  const auto p = sat::enumerate_echelon({1, 1});
  const auto r = log_rel(p);
  const auto cover = cover_of(p, r);
  REQUIRE(cover.size() == 2);
  FiniteLanguage all(p.E.alphabet());
  for (const auto& c : cover) {
    CHECK(c.region.size() == 1);
    all = lang_union(all, c.region);
  }
  CHECK(all == p.F);
  CHECK(cover_of(p, r, StringSet(p.E.alphabet())).empty());
  CHECK_THROWS_AS(cover_of(p, r, StringSet(p.E.alphabet(), {"0"})), PreconditionError);
}

TEST_CASE("logexp is a closure operator") {
  const auto binary = logexp_closure_check(Alphabet::binary(), 3, 100, 5);
  CHECK(binary.holds());
  CHECK(binary.samples == 100);
  CHECK(logexp_closure_check(Alphabet::ternary(), 2, 100, 6).holds());
}

TEST_CASE("logexp is not topological") {
  const auto b = Alphabet::binary();
  const auto U = FiniteLanguage::full_slice(b, LengthCap(2));
  const StringSet H(b, {"0"}), K(b, {"1"});
  const auto r = logexp_closure_check(H, K, U);
  CHECK(r.holds());
  REQUIRE(r.non_topological_witness.has_value());
  CHECK(log_exp(set_union(H, K), U).contains(PartialString::parse("_0")));
  CHECK_FALSE(log_exp(H, U).contains(PartialString::parse("_0")));
  CHECK_FALSE(log_exp(K, U).contains(PartialString::parse("_0")));
  CHECK(find_non_topological(b, 2).has_value());
}

TEST_CASE("cache round-trip and recovery") {
  TempDir dir("strcalc_cache_test");
  const auto p = sat::enumerate_echelon({2, 1});
  const LogogramOptions opts;
  const auto first = cached_log_rel(p, opts, dir.path.string());
  CHECK_FALSE(first.from_cache);
  const auto second = cached_log_rel(p, opts, dir.path.string());
  CHECK(second.from_cache);
  CHECK(second.result.full == first.result.full);
  CHECK(second.result.reduced == first.result.reduced);

  const auto hash = problem_hash(p, opts);
  const auto file = dir.path / cache_file_name(hash);
  REQUIRE(std::filesystem::exists(file));
  {
    std::ofstream out(file, std::ios::app);
    out << "R 2222\n";
  }
  const auto third = cached_log_rel(p, opts, dir.path.string());
  CHECK_FALSE(third.from_cache);
  CHECK(third.result.reduced == first.result.reduced);

  const auto text = serialize_logogram(hash, opts, first.result);
  CHECK_FALSE(deserialize_logogram(text, "other", p.E.alphabet()).has_value());
  CHECK_FALSE(deserialize_logogram("garbage", hash, p.E.alphabet()).has_value());
  const auto back = deserialize_logogram(text, hash, p.E.alphabet());
  REQUIRE(back.has_value());
  CHECK(back->reduced == first.result.reduced);

  LogogramOptions other = opts;
  other.restrict_constant_prefix = false;
  CHECK(problem_hash(p, other) != hash);
  CHECK(problem_hash(sat::enumerate_echelon({1, 2}), opts) != hash);
}

TEST_CASE("problem validation") {
  const auto b = Alphabet::binary();
  const auto E = FiniteLanguage::exact_slice(b, 2);
  CHECK_THROWS_AS((DecisionProblem{E, FiniteLanguage(b, {"111"}), std::nullopt, std::nullopt}.validate()),
                  PreconditionError);
  std::vector<FiniteLanguage> regions{FiniteLanguage(b, {"10"})};
  CHECK_THROWS_AS((DecisionProblem{E, FiniteLanguage(b, {"10", "11"}), regions, std::nullopt}.validate()),
                  PreconditionError);
}

}  // TEST_SUITE
