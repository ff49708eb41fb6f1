// Python module: logograms, CNF encoding and the verification suites.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "strcalc/harness.hpp"
#include "strcalc/sat.hpp"

namespace py = pybind11;
using namespace strcalc;

namespace {

py::object from_json(const nlohmann::ordered_json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

std::vector<std::string> rendered(const StringSet& H) {
  std::vector<std::string> out;
  for (const auto& g : H) out.push_back(g.render());
  return out;
}

FiniteLanguage language(const std::string& alphabet, const std::vector<std::string>& words) {
  const Alphabet a(alphabet);
  std::vector<Word> ws;
  for (const auto& w : words) ws.push_back(w == "_" ? Word() : Word::parse(w, a));
  return FiniteLanguage(a, std::move(ws));
}

py::dict logogram(const std::vector<std::string>& E, const std::vector<std::string>& F, const std::string& alphabet,
                  std::uint64_t budget) {
  DecisionProblem p{language(alphabet, E), language(alphabet, F), std::nullopt, std::nullopt};
  p.validate();
  LogogramOptions opts;
  opts.budget = budget;
  const auto r = log_rel(p, opts);
  py::dict d;
  d["full"] = rendered(r.full);
  d["reduced"] = rendered(r.reduced);
  d["candidate_space_size"] = r.candidate_space_size;
  return d;
}

py::dict echelon_logogram(int n, int m, std::uint64_t budget) {
  LogogramOptions opts;
  opts.budget = budget;
  const auto r = log_rel(sat::enumerate_echelon({n, m}, budget), opts);
  py::dict d;
  d["full_count"] = r.full.size();
  d["reduced"] = rendered(r.reduced);
  return d;
}

py::dict formula_info(const std::string& formula, int n) {
  const auto inst = sat::parse_formula(formula, n);
  py::dict d;
  d["formula"] = sat::format_formula(inst);
  d["m"] = inst.m();
  d["satisfiable"] = sat::is_satisfiable(inst);
  d["size"] = sat::occurrence_size(inst);
  d["effective_size"] = sat::effective_size(inst);
  d["bewitched"] = sat::is_bewitched(inst);
  return d;
}

std::string classify_string(int n, int m, const std::string& s) {
  const Analysis a(sat::enumerate_echelon({n, m}));
  const auto g = PartialString::parse(s, Alphabet::ternary());
  if (!a.member_index(g)) throw PreconditionError("'" + s + "' is not in the reduced logogram");
  return to_string(classify(g, a).kind);
}

py::object verify(const std::string& suite, std::optional<int> n, std::optional<int> m, std::uint64_t seed,
                  std::uint64_t samples, bool ignore_bewitched, int max_subset) {
  RunConfig c;
  c.command = "verify";
  c.suite = suite;
  if (n && m) c.echelon = EchelonSpec{*n, *m};
  else if (n || m) throw PreconditionError("give both n and m or neither");
  c.seed = seed;
  c.samples = samples;
  c.ignore_bewitched = ignore_bewitched;
  c.max_subset = max_subset;
  c.use_cache = false;
  return from_json(run_verify(c).to_json());
}

}  // namespace

PYBIND11_MODULE(strcalc, mod) {
  mod.doc() = "Logograms of finite decision problems and SAT echelons";
  mod.attr("__version__") = kToolVersion;

  static py::exception<BudgetExceeded> budget_error(mod, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const BudgetExceeded& e) {
      py::set_error(budget_error, e.what());
    } catch (const Error& e) {
      py::set_error(PyExc_ValueError, e.what());
    }
  });

  mod.def("log_rel", &logogram, py::arg("E"), py::arg("F"), py::arg("alphabet") = "01",
          py::arg("budget") = kDefaultCandidateBudget, "Relative logogram of F in E; '_' denotes the empty word");
  mod.def("echelon_logogram", &echelon_logogram, py::arg("n"), py::arg("m"),
          py::arg("budget") = kDefaultCandidateBudget);
  mod.def(
      "encode", [](const std::string& formula, int n) { return sat::encode(sat::parse_formula(formula, n)).chars(); },
      py::arg("formula"), py::arg("n"));
  mod.def(
      "decode",
      [](const std::string& word) {
        const auto inst = sat::decode(Word::parse(word, Alphabet::ternary()));
        return py::make_tuple(inst.n, sat::format_formula(inst));
      },
      py::arg("word"));
  mod.def("formula_info", &formula_info, py::arg("formula"), py::arg("n"));
  mod.def("consistent_selection_count", &sat::consistent_selection_count, py::arg("n"), py::arg("m"));
  mod.def("classify", &classify_string, py::arg("n"), py::arg("m"), py::arg("string"));
  mod.def("verify", &verify, py::arg("suite") = "all", py::arg("n") = std::nullopt, py::arg("m") = std::nullopt,
          py::arg("seed") = 1, py::arg("samples") = 1000, py::arg("ignore_bewitched") = false,
          py::arg("max_subset") = 4, "Run a verification suite and return the report as a dict");
}
