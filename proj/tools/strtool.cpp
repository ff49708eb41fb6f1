// strtool: logograms, SAT echelons and verification suites from the shell.
//
// Exit status: 0 pass, 1 verification failure, 2 usage or budget error.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "strcalc/harness.hpp"

namespace {

struct Flags {
  std::optional<int> n, m;
  std::string format = "json";
  std::string output;
};

void add_common(CLI::App* cmd, strcalc::RunConfig& cfg, Flags& flags) {
  cmd->add_option("--n", flags.n, "Number of variables")->check(CLI::PositiveNumber);
  cmd->add_option("--m", flags.m, "Number of clauses")->check(CLI::PositiveNumber);
  cmd->add_option("--budget", cfg.budget, "Cap on enumerated words and candidate strings")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--threads", cfg.threads, "Worker threads for the logogram search")->check(CLI::PositiveNumber);
  cmd->add_option("--format", flags.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("-o,--output", flags.output, "Write the report to a file instead of stdout");
  cmd->add_flag("--timings", cfg.timings, "Include elapsed times (reports are then not byte-stable)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Logograms of finite decision problems and SAT echelons"};
  app.set_version_flag("--version", strcalc::kToolVersion);
  app.require_subcommand(1);

  strcalc::RunConfig cfg;
  cfg.cache_dir = strcalc::default_cache_dir();
  Flags flags;
  bool no_cache = false;

  auto* logogram = app.add_subcommand("logogram", "Compute (or load from cache) a relative logogram");
  add_common(logogram, cfg, flags);
  logogram->add_option("--e-file", cfg.e_file, "Reference language file")->check(CLI::ExistingFile);
  logogram->add_option("--f-file", cfg.f_file, "Target language file")->check(CLI::ExistingFile);
  logogram->add_flag("--reduced,--reduced-only", cfg.reduced_only, "List the reduced logogram");
  logogram->add_option("--cache-dir", cfg.cache_dir, "Cache directory (default $STRTOOL_CACHE or .strtool-cache)");
  logogram->add_flag("--no-cache", no_cache, "Neither read nor write the cache");

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  add_common(verify, cfg, flags);
  verify->add_option("--suite", cfg.suite, "Suite to run")->check(CLI::IsMember(strcalc::verify_suites()));
  verify->add_option("--seed", cfg.seed, "Random seed");
  verify->add_option("--samples", cfg.samples, "Random samples for property checks")->check(CLI::PositiveNumber);
  verify->add_option("--cap", cfg.cap, "Word length cap for random languages")->check(CLI::Range(1, 12));
  verify->add_option("--max-subset", cfg.max_subset, "Subset size cap for complete independence")
      ->check(CLI::Range(2, 64));
  verify->add_flag("--ignore-bewitched", cfg.ignore_bewitched, "Drop improper witnesses in region relations");
  verify->add_option("--e-file", cfg.e_file, "Reference language file (logogram suite)")->check(CLI::ExistingFile);
  verify->add_option("--f-file", cfg.f_file, "Target language file (logogram suite)")->check(CLI::ExistingFile);
  verify->add_option("--region-file", cfg.region_files, "Solution region file, repeatable")
      ->check(CLI::ExistingFile);

  auto* classify = app.add_subcommand("classify", "Classify a logogram string or size a formula");
  add_common(classify, cfg, flags);
  classify->add_option("--string", cfg.string, "String over {0,1,2,_}, dense or pos:sym,... form");
  classify->add_option("--formula", cfg.formula, "CNF such as \"1,3,-4;2,-3\"");

  auto* dump = app.add_subcommand("dump", "Write an echelon's E, F or a region as a language file");
  add_common(dump, cfg, flags);
  dump->add_option("--what", cfg.string, "E, F or region:<i>");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  cfg.use_cache = !no_cache;
  cfg.format = flags.format == "text" ? strcalc::OutputFormat::Text : strcalc::OutputFormat::Json;
  if (flags.n && flags.m)
    cfg.echelon = strcalc::EchelonSpec{*flags.n, *flags.m};
  else if (flags.n)
    cfg.variables = *flags.n;
  else if (flags.m) {
    std::cerr << "error: --m needs --n\n";
    return 2;
  }

  auto emit = [&](const std::string& text) {
    if (flags.output.empty()) {
      std::cout << text;
      return true;
    }
    std::ofstream out(flags.output, std::ios::binary);
    out << text;
    return static_cast<bool>(out);
  };

  try {
    if (cfg.command == "dump") return emit(strcalc::run_dump(cfg)) ? 0 : 2;
    strcalc::VerificationReport report = cfg.command == "logogram" ? strcalc::run_logogram(cfg)
                                         : cfg.command == "verify" ? strcalc::run_verify(cfg)
                                                                   : strcalc::run_classify(cfg);
    if (!emit(report.render(cfg.format, cfg.timings))) {
      std::cerr << "error: cannot write " << flags.output << "\n";
      return 2;
    }
    return report.pass() ? 0 : 1;
  } catch (const strcalc::BudgetExceeded& e) {
    std::cerr << "budget error: " << e.what() << "\n";
  } catch (const strcalc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 2;
}
