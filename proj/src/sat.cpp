#include "strcalc/sat.hpp"

#include <algorithm>
#include <bit>
#include <charconv>

namespace strcalc::sat {

void CnfInstance::validate(bool allow_complementary) const {
  if (n < 1) throw PreconditionError("CNF instance needs n >= 1");
  if (clauses.empty()) throw PreconditionError("CNF instance needs m >= 1");
  for (const auto& c : clauses)
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i].var < 1 || c[i].var > n)
        throw PreconditionError("variable x" + std::to_string(c[i].var) + " out of range 1.." +
                                std::to_string(n));
      if (!allow_complementary && i > 0 && c[i - 1].var == c[i].var)
        throw PreconditionError("clause holds x" + std::to_string(c[i].var) + " and its negation");
    }
}

CnfInstance make_instance(int n, std::vector<Clause> clauses) {
  for (auto& c : clauses) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  return CnfInstance{n, std::move(clauses)};
}

CnfInstance parse_formula(std::string_view text, int n) {
  std::vector<Clause> clauses;
  std::size_t start = 0;
  while (true) {
    auto end = text.find(';', start);
    auto field = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    Clause clause;
    std::size_t lstart = 0;
    while (lstart < field.size()) {
      auto lend = field.find(',', lstart);
      if (lend == std::string_view::npos) lend = field.size();
      auto tok = field.substr(lstart, lend - lstart);
      bool neg = !tok.empty() && tok.front() == '-';
      if (neg) tok.remove_prefix(1);
      int var = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), var);
      if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || var < 1)
        throw ParseError("malformed literal '" + std::string(field.substr(lstart, lend - lstart)) + "'");
      clause.push_back({var, neg});
      lstart = lend + 1;
      if (lend + 1 == field.size()) throw ParseError("trailing ',' in clause");
    }
    clauses.push_back(std::move(clause));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  auto inst = make_instance(n, std::move(clauses));
  try {
    inst.validate(true);
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
  return inst;
}

std::string format_formula(const CnfInstance& inst) {
  std::string out;
  for (std::size_t j = 0; j < inst.clauses.size(); ++j) {
    if (j) out += ';';
    for (std::size_t i = 0; i < inst.clauses[j].size(); ++i) {
      if (i) out += ',';
      if (inst.clauses[j][i].negated) out += '-';
      out += std::to_string(inst.clauses[j][i].var);
    }
  }
  return out;
}

Word echelon_prefix(const EchelonSpec& spec) {
  return Word(std::string(spec.n, '0') + "1" + std::string(spec.m, '0') + "1");
}

Word encode(const CnfInstance& inst) {
  inst.validate();
  std::string chars = echelon_prefix(inst.echelon()).chars();
  for (const auto& clause : inst.clauses) {
    std::string block(inst.n, '0');
    for (const auto& lit : clause) block[lit.var - 1] = lit.code();
    chars += block;
  }
  return Word(std::move(chars));
}

CnfInstance decode(const Word& w) {
  const auto& s = w.chars();
  std::size_t i = 0;
  auto zeros = [&] {
    std::size_t k = 0;
    while (i < s.size() && s[i] == '0') ++i, ++k;
    return k;
  };
  const auto n = zeros();
  if (n == 0 || i >= s.size() || s[i] != '1') throw ParseError("malformed prefix in '" + s + "'");
  ++i;
  const auto m = zeros();
  if (m == 0 || i >= s.size() || s[i] != '1') throw ParseError("malformed prefix in '" + s + "'");
  ++i;
  if (s.size() - i != n * m)
    throw ParseError("wrong body length in '" + s + "': expected " + std::to_string(n * m));
  std::vector<Clause> clauses(m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t v = 0; v < n; ++v) {
      char c = s[i + j * n + v];
      if (c == '1' || c == '2')
        clauses[j].push_back({static_cast<int>(v + 1), c == '2'});
      else if (c != '0')
        throw ParseError(std::string("non-code symbol '") + c + "' in body");
    }
  return CnfInstance{static_cast<int>(n), std::move(clauses)};
}

std::vector<Assignment> solutions(int n) {
  if (n < 1 || n > 30) throw PreconditionError("solutions: n must be in 1..30");
  std::vector<Assignment> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t j = 0; j < (std::uint64_t{1} << n); ++j) {
    Assignment y;
    for (int i = 0; i < n; ++i) y.values.push_back((j >> i) & 1);
    out.push_back(std::move(y));
  }
  return out;
}

bool satisfies(const CnfInstance& inst, const Assignment& y) {
  return std::all_of(inst.clauses.begin(), inst.clauses.end(), [&](const Clause& c) {
    return std::any_of(c.begin(), c.end(), [&](const Literal& l) { return y.value(l.var) != l.negated; });
  });
}

bool is_satisfiable(const CnfInstance& inst) {
  for (const auto& y : solutions(inst.n))
    if (satisfies(inst, y)) return true;
  return false;
}

int occurrence_size(const CnfInstance& inst) {
  std::vector<bool> seen(inst.n + 1, false);
  for (const auto& c : inst.clauses)
    for (const auto& l : c) seen[l.var] = true;
  return static_cast<int>(std::count(seen.begin(), seen.end(), true));
}

int effective_size(const CnfInstance& inst) {
  if (!is_satisfiable(inst)) return inst.n;
  // Breadth-first by cardinality over partial assignments: variables chosen by
  // bitmask, values by a second bitmask over the chosen ones.
  const int n = inst.n;
  for (int k = 0; k <= n; ++k) {
    for (std::uint32_t vars = 0; vars < (1u << n); ++vars) {
      if (std::popcount(vars) != k) continue;
      for (std::uint32_t vals = 0; vals < (1u << n); ++vals) {
        if (vals & ~vars) continue;
        bool forced = std::all_of(inst.clauses.begin(), inst.clauses.end(), [&](const Clause& c) {
          return std::any_of(c.begin(), c.end(), [&](const Literal& l) {
            const std::uint32_t bit = 1u << (l.var - 1);
            return (vars & bit) && (((vals & bit) != 0) != l.negated);
          });
        });
        if (forced) return k;
      }
    }
  }
  return n;
}

bool is_bewitched(const CnfInstance& inst) {
  return is_satisfiable(inst) && occurrence_size(inst) != effective_size(inst);
}

DecisionProblem enumerate_echelon(const EchelonSpec& spec, std::uint64_t budget) {
  if (spec.n < 1 || spec.m < 1) throw PreconditionError("echelon needs n >= 1 and m >= 1");
  if (spec.n > 20) throw PreconditionError("echelon: n too large");
  const int body = spec.n * spec.m;
  std::uint64_t count = 1;
  for (int i = 0; i < body; ++i) {
    count *= 3;
    if (count > budget) throw BudgetExceeded("enumerate_echelon: 3^(n*m) exceeds budget", count, budget);
  }

  const auto alphabet = Alphabet::ternary();
  const auto prefix = echelon_prefix(spec).chars();
  const auto ys = solutions(spec.n);
  std::vector<Word> all, sat;
  std::vector<std::vector<Word>> regions(ys.size());
  all.reserve(count);

  std::string codes(body, '0');
  for (std::uint64_t k = 0; k < count; ++k) {
    // Most significant code first, so words come out in lexicographic order.
    std::uint64_t rest = k;
    for (int p = body - 1; p >= 0; --p) {
      codes[p] = static_cast<char>('0' + rest % 3);
      rest /= 3;
    }
    Word w(prefix + codes);
    const auto inst = decode(w);
    bool any = false;
    for (std::size_t j = 0; j < ys.size(); ++j)
      if (satisfies(inst, ys[j])) {
        regions[j].push_back(w);
        any = true;
      }
    if (any) sat.push_back(w);
    all.push_back(std::move(w));
  }

  DecisionProblem problem{FiniteLanguage(alphabet, std::move(all)), FiniteLanguage(alphabet, std::move(sat)), {}, {}};
  problem.regions.emplace();
  for (auto& r : regions) problem.regions->emplace_back(alphabet, std::move(r));
  problem.echelon = spec;
  return problem;
}

std::uint64_t consistent_selection_count(int n, int m) {
  // Stirling numbers of the second kind S(m, k): clauses grouped by the
  // variable they select; each used variable carries one sign.
  std::vector<std::vector<std::uint64_t>> S(m + 1, std::vector<std::uint64_t>(m + 1, 0));
  S[0][0] = 1;
  for (int i = 1; i <= m; ++i)
    for (int k = 1; k <= i; ++k) S[i][k] = k * S[i - 1][k] + S[i - 1][k - 1];
  std::uint64_t total = 0;
  for (int k = 1; k <= std::min(n, m); ++k) {
    std::uint64_t falling = 1;
    for (int i = 0; i < k; ++i) falling *= static_cast<std::uint64_t>(n - i);
    total += S[m][k] * falling * (std::uint64_t{1} << k);
  }
  return total;
}

}  // namespace strcalc::sat
