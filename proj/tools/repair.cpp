// Command-line front end: repairs one program, or runs the seeded-defect corpus.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "minirepair/corpus.hpp"
#include "minirepair/engine.hpp"
#include "minirepair/minilang.hpp"
#include "minirepair/report.hpp"

namespace fs = std::filesystem;
using namespace minirepair;

namespace {

constexpr int kExitPatchFound = 0;
constexpr int kExitExhausted = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string program;
  std::string tests;
  std::string mode = "jmutrepair";
  std::uint64_t seed = 0;
  std::size_t population_size = 10;
  std::size_t max_generations = 50;
  std::string formula = "ochiai";
  std::string navigation = "weighted";
  std::string ingredient_scope = "local";
  std::size_t step_budget = minilang::kDefaultStepBudget;
  std::size_t max_patches = 1;
  bool fast_validation = false;
  bool dump_spectrum = false;
  std::string out = "./out";
  std::string corpus_dir;
  std::size_t min_repaired = 10;
};

engine::EngineConfig to_config(const Options& o) {
  engine::EngineConfig c;
  c.mode = operators::parse_mode(o.mode);
  c.seed = o.seed;
  c.population_size = o.population_size;
  c.max_generations = o.max_generations;
  c.formula = faultloc::parse_formula(o.formula);
  c.navigation = faultloc::parse_navigation(o.navigation);
  c.ingredient_scope = operators::parse_scope(o.ingredient_scope);
  c.step_budget = o.step_budget;
  c.max_patches = o.max_patches;
  c.fast_validation = o.fast_validation;
  c.validate();
  return c;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

int run_single(const Options& o) {
  if (o.program.empty() || o.tests.empty()) {
    std::cerr << "error: --program and --tests are required\n";
    return kExitUsage;
  }
  engine::EngineConfig config;
  minilang::SourceUnit program;
  minilang::TestSuite suite;
  try {
    config = to_config(o);
    if (!fs::exists(o.program)) throw std::runtime_error("program file not found: " + o.program);
    if (!fs::exists(o.tests)) throw std::runtime_error("tests file not found: " + o.tests);
    program = minilang::load_program(o.program);
    suite = minilang::load_suite(o.tests);
    minilang::validate_suite(program, suite);
  } catch (const minilang::SourceError& e) {
    std::cerr << o.program << ":" << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  engine::RepairOutcome outcome;
  try {
    outcome = engine::evolve(program, suite, config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const fs::path out_dir = o.out;
  fs::create_directories(out_dir);
  for (std::size_t k = 0; k < outcome.patches.size(); ++k)
    write_file(out_dir / ("patch_" + std::to_string(k + 1) + ".diff"), outcome.patches[k].diff);
  write_file(out_dir / "report.json", report::outcome_to_json(outcome, config).dump(2) + "\n");
  if (o.dump_spectrum)
    write_file(out_dir / "spectrum.json", faultloc::spectrum_to_json(outcome.ranked).dump(2) + "\n");

  if (outcome.status == engine::Status::PatchFound) {
    std::cout << "patch found in generation " << outcome.patches.front().generation << " ("
              << outcome.patches.size() << " patch(es), " << outcome.variants_evaluated
              << " variants evaluated)\n"
              << outcome.patches.front().diff;
    return kExitPatchFound;
  }
  std::cout << "no patch after " << outcome.generations_run << " generations ("
            << outcome.variants_evaluated << " variants evaluated)\n";
  return kExitExhausted;
}

int run_corpus(const Options& o) {
  engine::EngineConfig base;
  corpus::Thresholds thresholds;
  thresholds.min_repaired = o.min_repaired;
  corpus::CorpusSummary summary;
  try {
    base = to_config(o);
    summary = corpus::run_corpus(o.corpus_dir, base, thresholds, o.out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  std::cout << std::left << std::setw(34) << "case" << std::setw(12) << "mode" << std::setw(12)
            << "status" << std::setw(12) << "generations"
            << "wall_time_ms\n";
  for (const auto& r : summary.rows) {
    std::cout << std::left << std::setw(34) << r.case_name << std::setw(12) << r.mode
              << std::setw(12) << r.status << std::setw(12) << r.generations << std::fixed
              << std::setprecision(1) << r.wall_time_ms << "\n";
    if (!r.error.empty()) std::cout << "    " << r.error << "\n";
  }
  std::cout << "repaired " << summary.repaired_cases << "/" << summary.seedable_cases
            << " seedable cases in " << std::setprecision(1) << summary.total_wall_time_ms
            << " ms\n";
  for (const auto& m : summary.missing_coverage) std::cout << "missing repair coverage: " << m << "\n";

  fs::create_directories(o.out);
  write_file(fs::path(o.out) / "summary.json",
             corpus::summary_to_json(summary, thresholds).dump(2) + "\n");
  return summary.thresholds_met ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Test-suite-driven program repair for MiniLang"};
  Options o;
  auto add_engine_flags = [&](CLI::App& cmd) {
    cmd.add_option("--mode", o.mode, "jgenprog | jpar | jmutrepair")
        ->check(CLI::IsMember({"jgenprog", "jpar", "jmutrepair"}));
    cmd.add_option("--seed", o.seed, "random seed");
    cmd.add_option("--population-size", o.population_size, "variants per generation")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--max-generations", o.max_generations, "generation budget")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--formula", o.formula, "ochiai | tarantula | weimer")
        ->check(CLI::IsMember({"ochiai", "tarantula", "weimer"}));
    cmd.add_option("--navigation", o.navigation, "weighted | rank | uniform")
        ->check(CLI::IsMember({"weighted", "rank", "uniform"}));
    cmd.add_option("--ingredient-scope", o.ingredient_scope, "local | global")
        ->check(CLI::IsMember({"local", "global"}));
    cmd.add_option("--step-budget", o.step_budget, "interpreter steps per test")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--max-patches", o.max_patches, "stop after this many valid patches")
        ->check(CLI::PositiveNumber);
    cmd.add_flag("--fast-validation", o.fast_validation,
                 "stop evaluating a child at its first failing test");
    cmd.add_option("--out", o.out, "output directory");
  };

  app.add_option("--program", o.program, "MiniLang source file (.ml)");
  app.add_option("--tests", o.tests, "test suite JSON file");
  app.add_flag("--dump-spectrum", o.dump_spectrum, "write spectrum.json with ranked statements");
  add_engine_flags(app);

  auto* corpus_cmd = app.add_subcommand("corpus", "run the seeded-defect corpus");
  corpus_cmd->add_option("dir", o.corpus_dir, "corpus directory")->required();
  corpus_cmd->add_option("--min-repaired", o.min_repaired, "cases that must be repaired");
  add_engine_flags(*corpus_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  if (corpus_cmd->parsed()) return run_corpus(o);
  return run_single(o);
}
