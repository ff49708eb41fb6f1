#include "strcalc/logogram.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

namespace strcalc {

void DecisionProblem::validate() const {
  require_same_alphabet(E.alphabet(), F.alphabet(), "DecisionProblem");
  if (!F.subset_of(E)) throw PreconditionError("DecisionProblem: F is not a subset of E");
  if (!regions) return;
  FiniteLanguage all(E.alphabet());
  for (std::size_t i = 0; i < regions->size(); ++i) {
    const auto& r = (*regions)[i];
    if (!r.subset_of(F))
      throw PreconditionError("DecisionProblem: region " + std::to_string(i + 1) +
                              " is not a subset of F");
    all = lang_union(all, r);
  }
  if (!(all == F)) throw PreconditionError("DecisionProblem: regions do not cover F");
}

std::vector<int> constant_prefix(const FiniteLanguage& E) {
  std::vector<int> out;
  if (E.empty()) return out;
  int shortest = std::numeric_limits<int>::max();
  for (const auto& w : E) shortest = std::min(shortest, w.length());
  const auto& first = E.words().front();
  for (int p = 1; p <= shortest; ++p) {
    bool same = std::all_of(E.begin(), E.end(), [&](const Word& w) { return w.at(p) == first.at(p); });
    if (!same) break;
    out.push_back(p);
  }
  return out;
}

std::uint64_t candidate_space(std::size_t alphabet_size, std::size_t positions) {
  std::uint64_t total = 1;
  const std::uint64_t base = alphabet_size + 1;
  for (std::size_t i = 0; i < positions; ++i) {
    if (total > std::numeric_limits<std::uint64_t>::max() / base)
      return std::numeric_limits<std::uint64_t>::max();
    total *= base;
  }
  return total;
}

FiniteLanguage relative_target(const FiniteLanguage& E, const FiniteLanguage& F) {
  if (E.prefix_free()) return lang_intersection(F, E);
  return cylindrify(F, E);
}

namespace {

// Depth-first enumeration of candidate strings. Each level decides one
// position (blank or a symbol); a branch is cut as soon as its cylinder in E
// is empty, since no extension can occur in E.
class CandidateSearch {
 public:
  CandidateSearch(const WordIndex& index, const WordMask& target, const std::vector<int>& positions)
      : index_(index),
        target_(target),
        positions_(positions),
        cells_(positions.empty() ? 0 : positions.back(), kBlank) {}

  void run(std::size_t depth, const WordMask& cylinder) {
    if (depth == positions_.size()) {
      if (cylinder.is_subset_of(target_)) found_.push_back(cells_);
      return;
    }
    run(depth + 1, cylinder);
    const int pos = positions_[depth];
    const auto& symbols = index_.language().alphabet().symbols();
    for (std::size_t s = 0; s < symbols.size(); ++s) {
      WordMask next = cylinder & index_.column(pos, static_cast<int>(s));
      if (next.none()) continue;
      cells_[pos - 1] = symbols[s];
      run(depth + 1, next);
      cells_[pos - 1] = kBlank;
    }
  }

  /// Runs only the subtree where the first position takes `choice`
  /// (0 = blank, k = k-th symbol).
  void run_branch(std::size_t choice) {
    const auto all = index_.all();
    if (positions_.empty()) {
      if (choice == 0) run(0, all);
      return;
    }
    if (choice == 0) {
      run(1, all);
      return;
    }
    const int pos = positions_[0];
    WordMask next = all & index_.column(pos, static_cast<int>(choice - 1));
    if (next.none()) return;
    cells_[pos - 1] = index_.language().alphabet().symbol(choice - 1);
    run(1, next);
    cells_[pos - 1] = kBlank;
  }

  std::vector<std::string>& found() { return found_; }

 private:
  const WordIndex& index_;
  const WordMask& target_;
  const std::vector<int>& positions_;
  std::string cells_;
  std::vector<std::string> found_;
};

std::vector<int> default_positions(const FiniteLanguage& E, const LogogramOptions& options) {
  std::vector<int> positions;
  if (options.candidate_positions) {
    positions = *options.candidate_positions;
    for (int p : positions)
      if (p < 1) throw PreconditionError("candidate positions start at 1");
  } else {
    const auto prefix = options.restrict_constant_prefix ? constant_prefix(E) : std::vector<int>{};
    for (int p = 1; p <= E.max_length(); ++p)
      if (std::find(prefix.begin(), prefix.end(), p) == prefix.end()) positions.push_back(p);
  }
  std::sort(positions.begin(), positions.end());
  positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
  return positions;
}

}  // namespace

LogogramResult log_rel(const FiniteLanguage& E, const FiniteLanguage& F, const LogogramOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  require_same_alphabet(E.alphabet(), F.alphabet(), "log_rel");
  if (E.empty()) throw PreconditionError("log_rel: reference set E is empty");
  if (!F.subset_of(E)) throw PreconditionError("log_rel: F is not a subset of E");

  LogogramResult result{StringSet(E.alphabet()), StringSet(E.alphabet()), {}, 0, {}};
  result.candidate_positions = default_positions(E, options);
  result.candidate_space_size = candidate_space(E.alphabet().size(), result.candidate_positions.size());
  if (result.candidate_space_size > options.budget)
    throw BudgetExceeded("log_rel: candidate space exceeds budget", result.candidate_space_size,
                         options.budget);

  const WordIndex index(E);
  const WordMask target = index.mask_of(relative_target(E, F));
  const auto& positions = result.candidate_positions;

  std::vector<std::string> found;
  const std::size_t branches = positions.empty() ? 1 : E.alphabet().size() + 1;
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, branches));
  if (threads == 1) {
    CandidateSearch search(index, target, positions);
    search.run(0, index.all());
    found = std::move(search.found());
  } else {
    // First-position branches are independent; merge order is irrelevant
    // because results are collected into ordered sets below.
    std::vector<std::future<std::vector<std::string>>> jobs;
    for (unsigned t = 0; t < threads; ++t) {
      jobs.push_back(std::async(std::launch::async, [&, t] {
        CandidateSearch search(index, target, positions);
        for (std::size_t b = t; b < branches; b += threads) search.run_branch(b);
        return std::move(search.found());
      }));
    }
    for (auto& j : jobs) {
      auto part = j.get();
      found.insert(found.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
  }

  std::unordered_set<PartialString> members;
  members.reserve(found.size());
  for (auto& cells : found) members.insert(PartialString::from_cells(std::move(cells)));

  // The logogram is closed upward among strings occurring in E, so g is
  // minimal iff no single-entry removal stays in it.
  for (const auto& g : members) {
    result.full.insert(g);
    bool minimal = true;
    for (int pos : g.domain())
      if (members.count(g.without(pos))) {
        minimal = false;
        break;
      }
    if (minimal) result.reduced.insert(g);
  }
  result.elapsed = std::chrono::steady_clock::now() - start;
  return result;
}

LogogramResult log_rel(const DecisionProblem& problem, const LogogramOptions& options) {
  return log_rel(problem.E, problem.F, options);
}

LogogramResult log_abs(const FiniteLanguage& F, const FiniteLanguage& universe,
                       const LogogramOptions& options) {
  if (!(universe == FiniteLanguage::full_slice(universe.alphabet(), LengthCap(universe.max_length()))))
    throw PreconditionError("log_abs: universe must be a full capped slice");
  return log_rel(universe, F, options);
}

StringSet log_exp(const StringSet& H, const FiniteLanguage& universe, const LogogramOptions& options) {
  const WordIndex index(universe);
  return log_abs(index.words_of(index.cylinder(H)), universe, options).full;
}

namespace {

std::string describe(const StringSet& H) {
  std::string out = "{";
  for (const auto& s : H) {
    if (out.size() > 1) out += ',';
    out += s.is_bottom() ? std::string("_") : s.render();
  }
  return out + "}";
}

}  // namespace

LogExpReport logexp_closure_check(const StringSet& H, const StringSet& K, const FiniteLanguage& universe) {
  for (const auto* set : {&H, &K})
    for (const auto& g : *set)
      if (!occurs_in(g, universe))
        throw PreconditionError("logexp_closure_check: '" + g.render() + "' does not occur in the universe");
  LogExpReport report;
  report.samples = 1;
  const auto HK = set_union(H, K);
  const auto lh = log_exp(H, universe);
  const auto lk = log_exp(K, universe);
  const auto lhk = log_exp(HK, universe);
  const std::string ctx = "H=" + describe(H) + " K=" + describe(K);

  report.extensive = H.subset_of(lh) && K.subset_of(lk) && HK.subset_of(lhk);
  report.monotone = lh.subset_of(lhk) && lk.subset_of(lhk);
  report.idempotent = log_exp(lh, universe) == lh && log_exp(lhk, universe) == lhk;
  if (!report.holds()) report.counterexample = ctx;

  auto both = set_union(lh, lk);
  for (const auto& g : lhk)
    if (!both.contains(g)) {
      report.non_topological_witness = ctx + " g=" + (g.is_bottom() ? std::string("_") : g.render());
      break;
    }
  return report;
}

LogExpReport logexp_closure_check(const Alphabet& alphabet, int cap, std::uint64_t samples,
                                  std::uint64_t seed) {
  if (samples < 1) throw PreconditionError("logexp_closure_check: samples must be >= 1");
  const auto universe = FiniteLanguage::full_slice(alphabet, LengthCap(cap));
  LanguageSampler rng(seed);
  LogExpReport total;
  for (std::uint64_t i = 0; i < samples; ++i) {
    auto H = rng.string_set(alphabet, cap, 3);
    auto K = rng.string_set(alphabet, cap, 3);
    auto r = logexp_closure_check(H, K, universe);
    ++total.samples;
    total.extensive = total.extensive && r.extensive;
    total.monotone = total.monotone && r.monotone;
    total.idempotent = total.idempotent && r.idempotent;
    if (!total.counterexample && r.counterexample) total.counterexample = r.counterexample;
    if (!total.non_topological_witness && r.non_topological_witness)
      total.non_topological_witness = r.non_topological_witness;
  }
  return total;
}

std::optional<std::string> find_non_topological(const Alphabet& alphabet, int cap) {
  const auto universe = FiniteLanguage::full_slice(alphabet, LengthCap(cap));
  StringSet all(alphabet);
  std::vector<int> positions;
  for (int p = 1; p <= cap; ++p) positions.push_back(p);
  for (const auto& w : FiniteLanguage::exact_slice(alphabet, cap)) {
    // every string of size <= cap is a restriction of some length-cap word
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cap); ++mask) {
      std::string cells(cap, kBlank);
      for (int i = 0; i < cap; ++i)
        if (mask >> i & 1) cells[i] = w.chars()[i];
      all.insert(PartialString::from_cells(std::move(cells)));
    }
  }
  const auto members = all.to_vector();
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      StringSet H(alphabet), K(alphabet);
      H.insert(members[i]);
      K.insert(members[j]);
      auto r = logexp_closure_check(H, K, universe);
      if (r.non_topological_witness) return r.non_topological_witness;
    }
  return std::nullopt;
}

Theorem7Result verify_theorem7(const DecisionProblem& problem, const LogogramResult& logogram) {
  const WordIndex index(problem.E);
  const auto target = index.mask_of(relative_target(problem.E, problem.F));
  return {index.cylinder(logogram.full) == target, index.cylinder(logogram.reduced) == target};
}

bool verify_theorem7(const DecisionProblem& problem, const LogogramOptions& options) {
  return verify_theorem7(problem, log_rel(problem, options)).holds();
}

std::vector<CoverRegion> cover_of(const DecisionProblem& problem, const LogogramResult& logogram,
                                  const std::optional<StringSet>& H) {
  const StringSet& chosen = H ? *H : logogram.reduced;
  if (!chosen.subset_of(logogram.reduced))
    throw PreconditionError("cover_of: H contains a string outside the reduced logogram");
  const WordIndex index(problem.E);
  std::vector<CoverRegion> out;
  for (const auto& g : chosen) out.push_back({g, index.words_of(index.cylinder(g))});
  return out;
}

// ---------------------------------------------------------------------------

namespace {

class Fnv1a {
 public:
  void add(std::string_view s) {
    for (unsigned char c : s) {
      h_ ^= c;
      h_ *= 0x100000001b3ULL;
    }
  }
  void add_line(std::string_view s) {
    add(s);
    add("\n");
  }
  std::string hex() const {
    std::ostringstream out;
    out << std::hex;
    out.width(16);
    out.fill('0');
    out << h_;
    return out.str();
  }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

void hash_language(Fnv1a& h, std::string_view tag, const FiniteLanguage& L) {
  h.add_line(std::string(tag) + " " + std::to_string(L.size()));
  for (const auto& w : L) h.add_line(w.chars());
}

nlohmann::json options_json(const LogogramOptions& options) {
  nlohmann::json j;
  j["restrict_constant_prefix"] = options.restrict_constant_prefix;
  if (options.candidate_positions)
    j["candidate_positions"] = *options.candidate_positions;
  else
    j["candidate_positions"] = nullptr;
  return j;
}

std::vector<std::string> body_lines(const LogogramResult& result) {
  std::vector<std::string> lines;
  for (const auto& g : result.full)
    lines.push_back((result.reduced.contains(g) ? "R " : "") + g.render());
  return lines;
}

std::string content_hash(const std::vector<std::string>& lines) {
  Fnv1a h;
  for (const auto& l : lines) h.add_line(l);
  return h.hex();
}

}  // namespace

std::string problem_hash(const DecisionProblem& problem, const LogogramOptions& options) {
  Fnv1a h;
  h.add_line("alphabet " + problem.E.alphabet().symbols());
  hash_language(h, "E", problem.E);
  hash_language(h, "F", problem.F);
  h.add_line(options_json(options).dump());
  return h.hex();
}

std::string cache_file_name(const std::string& hash) { return "logogram-" + hash + ".txt"; }

std::string serialize_logogram(const std::string& hash, const LogogramOptions& options,
                               const LogogramResult& result) {
  const auto lines = body_lines(result);
  nlohmann::json header;
  header["format"] = "strcalc-logogram";
  header["problem_hash"] = hash;
  header["content_hash"] = content_hash(lines);
  header["options"] = options_json(options);
  header["tool_version"] = kToolVersion;
  header["candidate_positions"] = result.candidate_positions;
  header["candidate_space_size"] = result.candidate_space_size;
  header["full_count"] = result.full.size();
  header["reduced_count"] = result.reduced.size();
  std::string out = header.dump() + "\n";
  for (const auto& l : lines) out += l + "\n";
  return out;
}

std::optional<LogogramResult> deserialize_logogram(std::string_view text, const std::string& expected_hash,
                                                   const Alphabet& alphabet) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) return std::nullopt;  // truncated
    lines.emplace_back(text.substr(start, end - start));
    start = end + 1;
  }
  if (lines.empty()) return std::nullopt;
  try {
    const auto header = nlohmann::json::parse(lines.front());
    if (header.at("format") != "strcalc-logogram") return std::nullopt;
    if (header.at("problem_hash").get<std::string>() != expected_hash) return std::nullopt;
    std::vector<std::string> body(lines.begin() + 1, lines.end());
    if (header.at("content_hash").get<std::string>() != content_hash(body)) return std::nullopt;
    if (header.at("full_count").get<std::size_t>() != body.size()) return std::nullopt;

    LogogramResult result{StringSet(alphabet), StringSet(alphabet), {}, 0, {}};
    result.candidate_positions = header.at("candidate_positions").get<std::vector<int>>();
    result.candidate_space_size = header.at("candidate_space_size").get<std::uint64_t>();
    for (const auto& line : body) {
      const bool reduced = line.rfind("R ", 0) == 0;
      auto g = PartialString::parse(reduced ? std::string_view(line).substr(2) : std::string_view(line),
                                    alphabet);
      if (!result.full.insert(g)) return std::nullopt;
      if (reduced) result.reduced.insert(g);
    }
    if (header.at("reduced_count").get<std::size_t>() != result.reduced.size()) return std::nullopt;
    return result;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

CachedLogogram cached_log_rel(const DecisionProblem& problem, const LogogramOptions& options,
                              const std::string& cache_dir) {
  namespace fs = std::filesystem;
  const auto hash = problem_hash(problem, options);
  const fs::path path = fs::path(cache_dir) / cache_file_name(hash);
  if (fs::exists(path)) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    if (auto loaded = deserialize_logogram(buf.str(), hash, problem.E.alphabet()))
      return {std::move(*loaded), true};
  }
  auto result = log_rel(problem, options);
  std::error_code ec;
  fs::create_directories(cache_dir, ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (out) out << serialize_logogram(hash, options, result);
  return {std::move(result), false};
}

}  // namespace strcalc
