#include "strcalc/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>

#include "strcalc/sat.hpp"

namespace strcalc {

using ojson = nlohmann::ordered_json;

void RunConfig::validate() const {
  if (budget == 0) throw PreconditionError("budget must be positive");
  if (samples == 0) throw PreconditionError("samples must be positive");
  if (cap < 1 || cap > 12) throw PreconditionError("cap must be in 1..12");
  if (max_subset < 2) throw PreconditionError("max-subset must be >= 2");
  if (threads == 0) throw PreconditionError("threads must be positive");
  if (echelon && (echelon->n < 1 || echelon->m < 1))
    throw PreconditionError("echelon needs n >= 1 and m >= 1");
}

ojson RunConfig::to_json() const {
  ojson j;
  j["command"] = command;
  if (echelon)
    j["echelon"] = {{"n", echelon->n}, {"m", echelon->m}};
  else
    j["echelon"] = nullptr;
  if (variables) j["n"] = *variables;
  if (e_file) j["e_file"] = *e_file;
  if (f_file) j["f_file"] = *f_file;
  if (!region_files.empty()) j["region_files"] = region_files;
  j["budget"] = budget;
  j["seed"] = seed;
  j["samples"] = samples;
  j["cap"] = cap;
  j["format"] = format == OutputFormat::Json ? "json" : "text";
  j["reduced_only"] = reduced_only;
  j["ignore_bewitched"] = ignore_bewitched;
  j["max_subset"] = max_subset;
  if (command == "verify") j["suite"] = suite;
  if (string) j["string"] = *string;
  if (formula) j["formula"] = *formula;
  j["threads"] = threads;
  return j;
}

std::string default_cache_dir() {
  if (const char* env = std::getenv("STRTOOL_CACHE"); env && *env) return env;
  return ".strtool-cache";
}

// ---------------------------------------------------------------------------

bool VerificationReport::pass() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.holds && !c.partial; });
}

ojson VerificationReport::to_json(bool timings) const {
  ojson j;
  j["schema"] = 1;
  j["tool"] = "strtool";
  j["version"] = kToolVersion;
  j["command"] = command;
  j["config"] = config;
  ojson cs = ojson::array();
  for (const auto& c : checks) {
    ojson e;
    e["name"] = c.name;
    e["holds"] = c.holds;
    e["partial"] = c.partial;
    e["details"] = c.details;
    if (c.counterexample) e["counterexample"] = *c.counterexample;
    if (timings) e["elapsed_s"] = c.elapsed;
    cs.push_back(std::move(e));
  }
  j["checks"] = std::move(cs);
  j["findings"] = findings;
  j["data"] = data;
  j["pass"] = pass();
  return j;
}

namespace {

std::string scalar(const ojson& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void text_value(std::ostringstream& out, const std::string& indent, const std::string& key, const ojson& v) {
  if (v.is_object()) {
    out << indent << key << ":\n";
    for (const auto& [k, x] : v.items()) text_value(out, indent + "  ", k, x);
  } else if (v.is_array() && !v.empty() && (v.front().is_object() || v.size() > 8)) {
    out << indent << key << ": (" << v.size() << ")\n";
    for (const auto& x : v) {
      if (x.is_object()) {
        std::string line;
        for (const auto& [k, y] : x.items()) line += (line.empty() ? "" : "  ") + k + "=" + scalar(y);
        out << indent << "  " << line << "\n";
      } else {
        out << indent << "  " << scalar(x) << "\n";
      }
    }
  } else if (v.is_array()) {
    std::string line;
    for (const auto& x : v) line += (line.empty() ? "" : " ") + scalar(x);
    out << indent << key << ": [" << line << "]\n";
  } else {
    out << indent << key << ": " << scalar(v) << "\n";
  }
}

}  // namespace

std::string VerificationReport::to_text(bool timings) const {
  std::ostringstream out;
  out << "strtool " << kToolVersion << " " << command << "\n";
  for (const auto& c : checks) {
    out << (c.holds && !c.partial ? "[PASS] " : c.partial && c.holds ? "[PARTIAL] " : "[FAIL] ") << c.name;
    if (timings) out << "  (" << c.elapsed << " s)";
    out << "\n";
    for (const auto& [k, v] : c.details.items()) text_value(out, "    ", k, v);
    if (c.counterexample) out << "    counterexample: " << *c.counterexample << "\n";
  }
  for (const auto& [k, v] : data.items()) text_value(out, "", k, v);
  for (const auto& f : findings) out << "finding: " << f << "\n";
  out << "overall: " << (pass() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

std::string VerificationReport::render(OutputFormat format, bool timings) const {
  if (format == OutputFormat::Text) return to_text(timings);
  return to_json(timings).dump(2) + "\n";
}

// ---------------------------------------------------------------------------

DecisionProblem toy_wizard_problem() {
  const auto b = Alphabet::binary();
  DecisionProblem p{FiniteLanguage::exact_slice(b, 2), FiniteLanguage(b, {"01", "10", "11"}), {}, {}};
  p.regions = std::vector<FiniteLanguage>{FiniteLanguage(b, {"01"}), FiniteLanguage(b, {"10"}),
                                          FiniteLanguage(b, {"11"})};
  return p;
}

LogogramOptions logogram_options(const RunConfig& config) {
  LogogramOptions o;
  o.budget = config.budget;
  o.threads = config.threads;
  return o;
}

DecisionProblem load_problem(const RunConfig& config) {
  if (config.echelon) return sat::enumerate_echelon(*config.echelon, config.budget);
  if (!config.e_file || !config.f_file)
    throw PreconditionError("need --n/--m or both --e-file and --f-file");
  DecisionProblem p{read_language_file(*config.e_file), read_language_file(*config.f_file), {}, {}};
  if (!config.region_files.empty()) {
    p.regions.emplace();
    for (const auto& path : config.region_files) p.regions->push_back(read_language_file(path));
  }
  p.validate();
  return p;
}

namespace {

std::string show(const PartialString& g) { return g.is_bottom() ? std::string("_") : g.render(); }

ojson strings_json(const StringSet& H) {
  ojson a = ojson::array();
  for (const auto& g : H) a.push_back(show(g));
  return a;
}

ojson verdict_json(const StringVerdict& v) {
  return {{"string", show(v.string)}, {"kind", to_string(v.kind)}, {"regions", v.containing_regions}};
}

ojson independence_json(const IndependenceVerdict& v) {
  ojson j;
  j["property"] = to_string(v.property);
  j["holds"] = v.holds;
  j["subsets_checked"] = v.subsets_checked;
  if (v.partial) j["partial"] = true;
  return j;
}

EchelonSpec echelon_or_default(const RunConfig& config) { return config.echelon.value_or(EchelonSpec{2, 2}); }

std::string spec_name(const EchelonSpec& s) { return "(" + std::to_string(s.n) + "," + std::to_string(s.m) + ")"; }

class Suite {
 public:
  explicit Suite(const RunConfig& config) : config_(config) {}

  VerificationReport& report() { return report_; }

  void check(const std::string& name, const std::function<void(CheckResult&)>& body) {
    CheckResult c;
    c.name = name;
    auto t0 = std::chrono::steady_clock::now();
    body(c);
    c.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report_.checks.push_back(std::move(c));
  }

  void finding(std::string text) { report_.findings.push_back(std::move(text)); }

  /// The SAT echelon analysis shared by the echelon suites.
  const Analysis& echelon_analysis() {
    if (!analysis_) {
      const auto spec = echelon_or_default(config_);
      analysis_ = std::make_unique<Analysis>(sat::enumerate_echelon(spec, config_.budget),
                                             logogram_options(config_));
    }
    return *analysis_;
  }

  const RunConfig& config() const { return config_; }

 private:
  const RunConfig& config_;
  VerificationReport report_;
  std::unique_ptr<Analysis> analysis_;
};

void suite_closure(Suite& s) {
  const auto& cfg = s.config();
  const auto laws = check_expansion_laws(cfg.samples, cfg.seed, cfg.cap);
  for (const auto& law : laws.laws)
    s.check("closure." + law.law, [&](CheckResult& c) {
      c.holds = law.failures == 0;
      c.details["checks"] = law.checks;
      c.details["failures"] = law.failures;
      c.counterexample = law.counterexample;
    });

  const std::uint64_t logexp_samples = std::max<std::uint64_t>(1, cfg.samples / 10);
  const std::pair<Alphabet, int> universes[] = {{Alphabet::binary(), std::min(cfg.cap, 4)},
                                                {Alphabet::ternary(), std::min(cfg.cap, 3)}};
  for (const auto& [alphabet, cap] : universes) {
    s.check("closure.logexp_" + std::string(alphabet.size() == 2 ? "binary" : "ternary"), [&](CheckResult& c) {
      auto r = logexp_closure_check(alphabet, cap, logexp_samples, cfg.seed);
      c.holds = r.holds();
      c.details["samples"] = r.samples;
      c.details["cap"] = cap;
      c.details["extensive"] = r.extensive;
      c.details["monotone"] = r.monotone;
      c.details["idempotent"] = r.idempotent;
      c.counterexample = r.counterexample;
    });
  }
  if (auto w = find_non_topological(Alphabet::binary(), 2))
    s.finding("LogExp is not topological on {0,1}^<=2: " + *w);
  else
    s.finding("no non-topological pair of singletons on {0,1}^<=2");
}

void suite_logogram(Suite& s) {
  const auto& cfg = s.config();
  const bool from_files = !cfg.echelon && cfg.e_file;
  std::unique_ptr<Analysis> own;
  const Analysis* a = nullptr;
  if (from_files) {
    own = std::make_unique<Analysis>(load_problem(cfg), logogram_options(cfg));
    a = own.get();
  } else {
    a = &s.echelon_analysis();
  }
  const auto& p = a->problem();
  const auto& lg = a->logogram();
  const auto t7 = verify_theorem7(p, lg);

  s.check("logogram.theorem7_full", [&](CheckResult& c) {
    c.holds = t7.full_holds;
    c.details["problem"] = p.echelon ? "sat" + spec_name(*p.echelon) : "files";
    c.details["E"] = p.E.size();
    c.details["F"] = p.F.size();
    c.details["full"] = lg.full.size();
    c.details["candidate_space"] = lg.candidate_space_size;
  });
  s.check("logogram.theorem7_reduced", [&](CheckResult& c) {
    c.holds = t7.reduced_holds;
    c.details["reduced"] = lg.reduced.size();
  });
  s.check("logogram.reduced_is_antichain", [&](CheckResult& c) {
    c.holds = is_reduced(lg.reduced) && lg.reduced.subset_of(lg.full);
  });
  s.check("logogram.reduced_complete", [&](CheckResult& c) { c.holds = completeness_of_subset(lg.reduced, *a); });
  if (p.echelon) {
    s.check("logogram.prefix_free", [&](CheckResult& c) { c.holds = p.E.prefix_free(); });
    s.check("logogram.selection_count", [&](CheckResult& c) {
      const auto expected = sat::consistent_selection_count(p.echelon->n, p.echelon->m);
      c.holds = lg.reduced.size() == expected;
      c.details["reduced"] = lg.reduced.size();
      c.details["consistent_selections"] = expected;
    });
  }
}

void suite_sat(Suite& s) {
  const auto& cfg = s.config();
  const auto& a = s.echelon_analysis();
  const auto spec = *a.problem().echelon;
  const auto shape = sat_shape(a);

  s.check("sat.wizards", [&](CheckResult& c) {
    c.holds = shape.wizards == 0;
    c.details["echelon"] = spec_name(spec);
    c.details["reduced"] = shape.members;
    c.details["wizards"] = shape.wizards;
    c.details["proper_witnesses"] = shape.proper;
    c.details["improper_witnesses"] = shape.improper;
  });
  s.check("sat.literal_shape", [&](CheckResult& c) {
    c.holds = shape.shape_holds();
    c.details["non_literal_code"] = shape.non_literal_code;
    c.details["not_one_per_clause"] = shape.not_one_per_clause;
    c.details["inconsistent"] = shape.inconsistent;
    c.counterexample = shape.first_refutation;
  });
  if (shape.first_refutation) s.finding("reduced-logogram shape refuted: " + *shape.first_refutation);
  s.check("sat.selection_count", [&](CheckResult& c) {
    c.holds = shape.members == shape.expected_members;
    c.details["reduced"] = shape.members;
    c.details["consistent_selections"] = shape.expected_members;
  });

  const auto internal = internal_independence(a);
  const auto strong = strong_independence(a);
  s.check("sat.internal_independence", [&](CheckResult& c) {
    c.holds = internal.holds;
    c.details = independence_json(internal);
    c.counterexample = internal.counterexample;
  });
  s.check("sat.strong_independence", [&](CheckResult& c) {
    c.holds = strong.holds;
    c.details = independence_json(strong);
    c.counterexample = strong.counterexample;
  });
  s.check("sat.theorem9_implication", [&](CheckResult& c) {
    c.holds = !strong.holds || internal.holds;
    c.details["strong"] = strong.holds;
    c.details["internal"] = internal.holds;
  });
  s.check("sat.complete_independence", [&](CheckResult& c) {
    auto v = complete_independence(a, cfg.max_subset);
    c.holds = v.holds;
    c.partial = v.partial;
    c.details = independence_json(v);
    c.details["max_subset"] = cfg.max_subset;
    c.counterexample = v.counterexample;
  });
  s.check("sat.irreducible", [&](CheckResult& c) { c.holds = irreducible(a); });
  s.check("sat.separator_self_check", [&](CheckResult& c) {
    // Singletons and compatible pairs.
    std::uint64_t n = 0, bad = 0;
    const auto& ms = a.members();
    for (std::size_t i = 0; i < ms.size(); ++i)
      for (std::size_t j = i; j < ms.size(); ++j) {
        if (!compatible(ms[i], ms[j])) continue;
        StringSet fs(a.problem().E.alphabet());
        fs.insert(ms[i]);
        fs.insert(ms[j]);
        ++n;
        if (!separates(construct_separator(fs, spec), fs, a)) {
          ++bad;
          if (!c.counterexample) c.counterexample = "{" + show(ms[i]) + ", " + show(ms[j]) + "}";
        }
      }
    c.holds = bad == 0;
    c.details["subsets"] = n;
  });

  s.check("sat.encode_roundtrip", [&](CheckResult& c) {
    LanguageSampler rng(cfg.seed);
    const auto& words = a.problem().E.words();
    std::uint64_t bad = 0;
    for (std::uint64_t i = 0; i < cfg.samples; ++i) {
      const auto& w = words[rng.uniform(0, words.size() - 1)];
      const auto inst = sat::decode(w);
      bool ok = true;
      try {
        ok = sat::encode(inst) == w && sat::decode(sat::encode(inst)) == inst;
      } catch (const Error&) {
        ok = false;
      }
      if (!ok && !bad++) c.counterexample = w.chars();
    }
    c.holds = bad == 0;
    c.details["samples"] = cfg.samples;
  });

  s.check("sat.bewitched_include_pseudowizards", [&](CheckResult& c) {
    std::vector<bool> improper(a.members().size());
    for (std::size_t i = 0; i < improper.size(); ++i)
      improper[i] = a.containing_regions(a.cylinder(i)).size() >= 2;
    std::uint64_t bewitched = 0, bad = 0;
    for (const auto& w : a.problem().F) {
      if (!sat::is_bewitched(sat::decode(w))) continue;
      ++bewitched;
      bool found = false;
      for (std::size_t i = 0; i < improper.size() && !found; ++i)
        found = improper[i] && w.includes(a.members()[i]);
      if (!found && !bad++) c.counterexample = w.chars();
    }
    c.holds = bad == 0;
    c.details["bewitched_formulas"] = bewitched;
  });

  if (spec.n == 3 && spec.m == 3) {
    const auto example = PartialString::parse(std::string(spec.prefix_length(), kBlank) + "__11_2_2_");
    const bool member = a.member_index(example).has_value();
    s.finding(std::string("string with body __11_2_2_ (two literals in clause 2) is ") +
              (member ? "" : "not ") + "in the reduced logogram of (3,3)");
  }
}

void suite_theorem8(Suite& s) {
  const auto& a = s.echelon_analysis();
  const auto opts = logogram_options(s.config());
  const auto r = verify_theorem8(a, opts);
  s.check("theorem8.echelon", [&](CheckResult& c) {
    c.holds = r.holds();
    c.details["echelon"] = spec_name(*a.problem().echelon);
    c.details["wizards"] = r.wizards;
  });
  if (r.wizards == 0) s.finding("echelon " + spec_name(*a.problem().echelon) + " has no wizards");

  const Analysis toy(toy_wizard_problem(), opts);
  const auto t = verify_theorem8(toy, opts);
  s.check("theorem8.toy_wizard", [&](CheckResult& c) {
    c.holds = t.holds() && t.wizards > 0;
    c.details["wizards"] = t.wizards;
    ojson cases = ojson::array();
    for (const auto& w : t.cases) {
      ojson e;
      e["wizard"] = show(w.wizard);
      ojson ws = ojson::array();
      for (const auto& f : w.witnesses) ws.push_back(show(f));
      e["witnesses"] = std::move(ws);
      e["union_covers"] = w.union_covers;
      e["proper_inclusion"] = w.proper_inclusion;
      e["witness_inside"] = w.witness_inside;
      cases.push_back(std::move(e));
    }
    c.details["cases"] = std::move(cases);
  });
  for (const auto& w : t.cases)
    if (!w.proper_inclusion)
      s.finding("toy wizard " + show(w.wizard) + ": Exp_E(g) equals the union of its witness cylinders"
                " (inclusion not proper)" + (w.witness_inside ? "; a witness cylinder lies inside Exp_E(g)" : ""));
}

void suite_regions(Suite& s) {
  const auto& cfg = s.config();
  const auto& a = s.echelon_analysis();
  const auto opts = logogram_options(cfg);
  for (bool filtered : {cfg.ignore_bewitched, !cfg.ignore_bewitched}) {
    const auto r = region_relations(a, filtered, opts);
    const std::string mode = filtered ? "filtered" : "unfiltered";
    if (filtered == cfg.ignore_bewitched) {
      for (const auto& row : r.rows)
        s.check("regions." + mode + ".region_" + std::to_string(row.region), [&](CheckResult& c) {
          c.holds = row.holds();
          c.details["next_size"] = row.next_size;
          c.details["earlier_size"] = row.earlier_size;
          c.details["disjoint"] = row.disjoint;
          c.details["earlier_entangles_next"] = row.earlier_entangles_next;
          c.details["next_entangles_earlier"] = row.next_entangles_earlier;
        });
      s.report().data["region_logogram_sizes"] = r.region_sizes;
      if (filtered) s.report().data["improper_removed"] = r.removed_improper;
    } else {
      std::size_t failing = 0;
      for (const auto& row : r.rows) failing += !row.holds();
      s.finding(mode + " region relations on " + spec_name(r.spec) + ": " + std::to_string(failing) + " of " +
                std::to_string(r.rows.size()) + " rows fail");
    }
  }
}

void suite_events(Suite& s) {
  const auto b = Alphabet::binary();
  const FiniteLanguage F = FiniteLanguage::exact_slice(b, 2);
  struct Case {
    const char* name;
    std::vector<FiniteLanguage> events;
    std::size_t constituents;
    bool independent;
  };
  const Case cases[] = {
      {"single", {FiniteLanguage(b, {"00", "01"})}, 2, true},
      {"equal", {FiniteLanguage(b, {"00", "01"}), FiniteLanguage(b, {"00", "01"})}, 2, false},
      {"overlapping", {FiniteLanguage(b, {"00", "01"}), FiniteLanguage(b, {"01", "10"})}, 4, true},
      {"disjoint", {FiniteLanguage(b, {"00"}), FiniteLanguage(b, {"11"})}, 3, false},
  };
  for (const auto& k : cases)
    s.check(std::string("events.") + k.name, [&](CheckResult& c) {
      EventFamily fam{F, k.events};
      const auto n = atomic_constituents(fam).size();
      const bool ind = completely_independent_events(fam);
      c.holds = n == k.constituents && ind == k.independent;
      c.details["constituents"] = n;
      c.details["completely_independent"] = ind;
    });

  const auto& a = s.echelon_analysis();
  const auto pairs = scan_cover_events(a, 2);
  s.check("events.cover_pairs", [&](CheckResult& c) {
    c.holds = pairs.independent == pairs.families;
    c.details["families"] = pairs.families;
    c.details["independent"] = pairs.independent;
    c.counterexample = pairs.first_dependent;
  });
  const auto triples = scan_cover_events(a, 3);
  s.finding("pairwise intersecting cover triples on " + spec_name(*a.problem().echelon) + ": " +
            std::to_string(triples.independent) + " of " + std::to_string(triples.families) +
            " completely independent" +
            (triples.first_dependent ? "; first dependent " + *triples.first_dependent : ""));
}

}  // namespace

// ---------------------------------------------------------------------------

VerificationReport run_logogram(const RunConfig& config) {
  config.validate();
  VerificationReport report;
  report.command = "logogram";
  report.config = config.to_json();

  const auto problem = load_problem(config);
  const auto opts = logogram_options(config);
  auto compute = [&]() -> LogogramResult {
    if (!config.use_cache) return log_rel(problem, opts);
    auto cached = cached_log_rel(problem, opts, config.cache_dir);
    std::cerr << "cache " << (cached.from_cache ? "hit" : "miss") << ": " << config.cache_dir << "/"
              << cache_file_name(problem_hash(problem, opts)) << "\n";
    return std::move(cached.result);
  };
  const LogogramResult lg = compute();

  CheckResult c;
  c.name = "logogram.theorem7";
  c.holds = verify_theorem7(problem, lg).holds();
  c.elapsed = lg.elapsed.count();
  report.checks.push_back(c);

  auto& d = report.data;
  d["hash"] = problem_hash(problem, opts);
  d["E"] = problem.E.size();
  d["F"] = problem.F.size();
  d["candidate_positions"] = lg.candidate_positions;
  d["candidate_space_size"] = lg.candidate_space_size;
  d["full_count"] = lg.full.size();
  d["reduced_count"] = lg.reduced.size();
  if (problem.echelon)
    d["consistent_selections"] = sat::consistent_selection_count(problem.echelon->n, problem.echelon->m);
  if (config.reduced_only) d["reduced"] = strings_json(lg.reduced);
  return report;
}

VerificationReport run_verify(const RunConfig& config) {
  config.validate();
  const auto& suites = verify_suites();
  if (std::find(suites.begin(), suites.end(), config.suite) == suites.end())
    throw PreconditionError("unknown suite '" + config.suite + "'");
  Suite s(config);
  s.report().command = "verify";
  s.report().config = config.to_json();
  const bool all = config.suite == "all";
  if (all || config.suite == "closure") suite_closure(s);
  if (all || config.suite == "logogram") suite_logogram(s);
  if (all || config.suite == "sat") suite_sat(s);
  if (all || config.suite == "theorem8") suite_theorem8(s);
  if (all || config.suite == "regions") suite_regions(s);
  if (all || config.suite == "events") suite_events(s);
  return std::move(s.report());
}

VerificationReport run_classify(const RunConfig& config) {
  config.validate();
  VerificationReport report;
  report.command = "classify";
  report.config = config.to_json();

  if (config.formula) {
    const int n = config.echelon ? config.echelon->n : config.variables.value_or(0);
    if (n < 1) throw PreconditionError("classify --formula needs --n");
    const auto inst = sat::parse_formula(*config.formula, n);
    auto& d = report.data;
    d["formula"] = sat::format_formula(inst);
    d["n"] = inst.n;
    d["m"] = inst.m();
    d["satisfiable"] = sat::is_satisfiable(inst);
    d["size"] = sat::occurrence_size(inst);
    d["effective_size"] = sat::effective_size(inst);
    d["bewitched"] = sat::is_bewitched(inst);

    CheckResult c;
    c.name = "classify.formula";
    c.holds = true;
    try {
      const auto x = sat::encode(inst);
      d["encoded"] = x.chars();
      // Reduced-logogram strings included in the encoded word.
      const Analysis a(sat::enumerate_echelon(inst.echelon(), config.budget), logogram_options(config));
      ojson included = ojson::array();
      for (const auto& v : classify_all(a))
        if (x.includes(v.string)) included.push_back(verdict_json(v));
      d["included_logogram_strings"] = std::move(included);
    } catch (const BudgetExceeded& e) {
      report.findings.push_back(std::string("echelon not enumerated: ") + e.what());
    } catch (const PreconditionError& e) {
      report.findings.push_back(std::string("formula not encodable: ") + e.what());
    }
    report.checks.push_back(c);
    return report;
  }

  if (!config.echelon || !config.string) throw PreconditionError("classify needs --n, --m and --string (or --formula)");
  const auto g = PartialString::parse(*config.string, Alphabet::ternary());
  const Analysis a(sat::enumerate_echelon(*config.echelon, config.budget), logogram_options(config));
  CheckResult c;
  c.name = "classify.string";
  if (a.member_index(g)) {
    c.holds = true;
    report.data["verdict"] = verdict_json(classify(g, a));
  } else {
    c.holds = false;
    c.counterexample = "'" + show(g) + "' is not in the reduced logogram of " + spec_name(*config.echelon);
  }
  report.checks.push_back(c);
  return report;
}

std::string run_dump(const RunConfig& config) {
  config.validate();
  if (!config.echelon) throw PreconditionError("dump needs --n and --m");
  const auto p = sat::enumerate_echelon(*config.echelon, config.budget);
  const std::string what = config.string.value_or("E");
  const std::string tag = "sat" + spec_name(*config.echelon);
  if (what == "E") return format_language(p.E, tag + " E");
  if (what == "F") return format_language(p.F, tag + " F");
  if (what.rfind("region:", 0) == 0) {
    int i = 0;
    try {
      i = std::stoi(what.substr(7));
    } catch (const std::exception&) {
      throw PreconditionError("bad region selector '" + what + "'");
    }
    if (i < 1 || i > static_cast<int>(p.regions->size()))
      throw PreconditionError("region index out of range: " + what);
    return format_language((*p.regions)[i - 1], tag + " region " + std::to_string(i));
  }
  throw PreconditionError("dump selects E, F or region:<i>, not '" + what + "'");
}

}  // namespace strcalc
