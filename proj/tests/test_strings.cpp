#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "strcalc/packed.hpp"
#include "strcalc/strings.hpp"

using namespace strcalc;

namespace {

PartialString ps(std::string_view s) { return PartialString::parse(s); }

PartialString random_string(std::mt19937_64& rng, const Alphabet& a, int len) {
  std::string cells(len, kBlank);
  std::uniform_int_distribution<std::size_t> pick(0, a.size());
  for (auto& c : cells) {
    auto k = pick(rng);
    if (k < a.size()) c = a.symbol(k);
  }
  return PartialString::from_cells(cells);
}

}  // namespace

TEST_SUITE("strings") {

TEST_CASE("alphabet validation") {
  CHECK_NOTHROW(Alphabet("01"));
  CHECK_THROWS_AS(Alphabet(""), PreconditionError);
  CHECK_THROWS_AS(Alphabet("010"), PreconditionError);
  CHECK_THROWS_AS(Alphabet("01_"), PreconditionError);
  CHECK_THROWS_AS(Alphabet("12"), PreconditionError);
  CHECK(Alphabet::ternary().index_of('2') == 2);
  CHECK(Alphabet::binary().index_of('2') == -1);
}

TEST_CASE("parse and render") {
  auto g = ps("1_2");
  CHECK(g.size() == 3);
  CHECK(g.domain_size() == 2);
  CHECK(g.render() == "1_2");
  CHECK(g.render_sparse() == "1:1,3:2");
  CHECK(ps("1:1,3:2") == g);
  CHECK(ps("1__") == ps("1"));
  CHECK(ps("").is_bottom());
  CHECK(ps("___").is_bottom());
  CHECK(ps("10").is_word());
  CHECK_FALSE(ps("1_0").is_word());
  CHECK_THROWS_AS(ps("3:1,3:2"), ParseError);
  CHECK_THROWS_AS(ps("0:1"), ParseError);
  CHECK_THROWS_AS(PartialString::parse("1x", Alphabet::binary()), ParseError);
  CHECK_THROWS_AS(Word("1_"), PreconditionError);
  CHECK(Word("102").to_string() == ps("102"));
  CHECK(Word::from_string(ps("102")).chars() == "102");
  CHECK_THROWS_AS(Word::from_string(ps("1_2")), PreconditionError);
}

TEST_CASE("extension examples") {
  CHECK(extends(ps("1_2"), ps("1__")));
  CHECK(extends(ps("1_2"), PartialString::bottom()));
  CHECK_FALSE(extends(ps("1_2"), ps("10_")));
  CHECK(properly_extends(ps("1_2"), ps("1")));
  CHECK_FALSE(properly_extends(ps("1_2"), ps("1_2")));
}

TEST_CASE("compatibility, join and meet examples") {
  CHECK(compatible(ps("1__"), ps("__2")));
  CHECK_FALSE(compatible(ps("1__"), ps("2__")));
  CHECK(compatible(ps("12"), ps("12")));
  CHECK(*join(ps("1__"), ps("__2")) == ps("1_2"));
  CHECK_FALSE(join(ps("1__"), ps("2__")).has_value());
  CHECK(*join(ps("1_2"), ps("1_2")) == ps("1_2"));
  CHECK(meet(ps("10_"), ps("1_0")) == ps("1"));
  CHECK(meet(ps("1__"), ps("2__")).is_bottom());
  CHECK(meet(ps("1_2"), ps("1_2")) == ps("1_2"));
}

TEST_CASE("set operations examples") {
  const auto t = Alphabet::ternary();
  CHECK(join_sets(StringSet(t, {"1__"}), StringSet(t, {"__2"})) == StringSet(t, {"1_2"}));
  CHECK(join_sets(StringSet(t, {"1"}), StringSet(t)).empty());
  CHECK(join_sets(StringSet(t, {"1__", "2__"}), StringSet(t, {"2__"})) == StringSet(t, {"2"}));
  CHECK(reduce(StringSet(t, {"1__", "1_2"})) == StringSet(t, {"1"}));
  CHECK(reduce(StringSet(t, {"1", "_2"})) == StringSet(t, {"1", "_2"}));
  CHECK(reduce(StringSet(t, {"", "1__"})) == StringSet(t, {""}));
  CHECK(is_reduced(StringSet(t, {"1", "_2"})));
  CHECK(consistent(StringSet(t, {"1__", "_0_"}))->chars() == "10");
  CHECK_FALSE(consistent(StringSet(t, {"1__", "2__"})).has_value());
  CHECK_THROWS_AS(StringSet(Alphabet::binary(), {"2"}), ParseError);
  StringSet b(Alphabet::binary());
  CHECK_THROWS_AS(b.insert(ps("_2")), AlphabetMismatch);
}

TEST_CASE("canonical order is domain size then rendering") {
  const StringSet s(Alphabet::binary(), {"11", "_1", "1", "", "0_1"});
  std::vector<std::string> order;
  for (const auto& g : s) order.push_back(g.render());
  CHECK(order == std::vector<std::string>{"", "1", "_1", "0_1", "11"});
}

TEST_CASE("extension is a partial order with least element") {
  std::mt19937_64 rng(11);
  const auto a = Alphabet::ternary();
  for (int i = 0; i < 2000; ++i) {
    auto f = random_string(rng, a, 4), g = random_string(rng, a, 4), h = random_string(rng, a, 4);
    CHECK(extends(f, f));
    CHECK(extends(f, PartialString::bottom()));
    if (extends(f, g) && extends(g, f)) CHECK(f == g);
    if (extends(h, g) && extends(g, f)) CHECK(extends(h, f));
    CHECK(extends(f, g) == oracle::below(g.cells(), f.cells()));
  }
}

TEST_CASE("join is the least upper bound and meet the greatest lower bound") {
  // All strings of size <= 3 for the universal quantifiers.
  std::vector<PartialString> all;
  for (int code = 0; code < 27; ++code) {
    std::string cells;
    for (int k = code, i = 0; i < 3; ++i, k /= 3) cells += "_01"[k % 3];
    all.push_back(PartialString::from_cells(cells));
  }
  for (const auto& f : all)
    for (const auto& g : all) {
      auto j = join(f, g);
      CHECK(j.has_value() == compatible(f, g));
      if (j) {
        CHECK(extends(*j, f));
        CHECK(extends(*j, g));
        CHECK(j->domain_size() == [&] {
          int n = 0;
          for (int p = 1; p <= 3; ++p) n += f.defined(p) || g.defined(p);
          return n;
        }());
        for (const auto& h : all)
          if (extends(h, f) && extends(h, g)) CHECK(extends(h, *j));
      }
      auto m = meet(f, g);
      CHECK(extends(f, m));
      CHECK(extends(g, m));
      for (const auto& h : all)
        if (extends(f, h) && extends(g, h)) CHECK(extends(m, h));
    }
}

TEST_CASE("reduce is isoexpansive and consistent matches exhaustive search") {
  std::mt19937_64 rng(13);
  const auto a = Alphabet::binary();
  std::vector<std::string> words;
  for (int w = 0; w < 16; ++w) {
    std::string s;
    for (int i = 0; i < 4; ++i) s += (w >> i & 1) ? '1' : '0';
    words.push_back(s);
  }
  for (int trial = 0; trial < 300; ++trial) {
    StringSet H(a);
    std::uniform_int_distribution<int> k(0, 4);
    for (int i = k(rng); i > 0; --i) H.insert(random_string(rng, a, 4));
    const auto R = reduce(H);
    CHECK(is_reduced(R));
    CHECK(R.subset_of(H));
    bool any_word = false;
    for (const auto& w : words) {
      bool in_h = false, in_r = false, all_h = true;
      for (const auto& g : H) {
        in_h = in_h || oracle::includes(w, g.cells());
        all_h = all_h && oracle::includes(w, g.cells());
      }
      for (const auto& g : R) in_r = in_r || oracle::includes(w, g.cells());
      CHECK(in_h == in_r);
      any_word = any_word || all_h;
    }
    auto c = consistent(H);
    CHECK(c.has_value() == any_word);
    if (c)
      for (const auto& g : H) CHECK(c->includes(g));
  }
}

TEST_CASE("packed strings agree with the plain ones") {
  std::mt19937_64 rng(14);
  const auto a = Alphabet::ternary();
  for (int i = 0; i < 3000; ++i) {
    auto f = random_string(rng, a, 7), g = random_string(rng, a, 7);
    auto pf = pack(f, a), pg = pack(g, a);
    CHECK(extends(pf, pg) == extends(f, g));
    CHECK(compatible(pf, pg) == compatible(f, g));
    if (compatible(f, g)) CHECK(join_compatible(pf, pg) == pack(*join(f, g), a));
  }
  CHECK_THROWS_AS(pack(PartialString::parse("70:1"), a), PreconditionError);
}

}  // TEST_SUITE
