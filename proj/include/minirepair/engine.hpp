#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "minirepair/diff.hpp"
#include "minirepair/faultloc.hpp"
#include "minirepair/minilang.hpp"
#include "minirepair/operators.hpp"
#include "minirepair/random.hpp"
#include "minirepair/validation.hpp"

namespace minirepair::engine {

using minilang::SourceUnit;
using minilang::TestSuite;
using operators::Mode;
using operators::PatchOp;

struct EngineConfig {
  Mode mode = Mode::JMutRepair;
  std::size_t population_size = 10;
  std::size_t max_generations = 50;
  faultloc::Formula formula = faultloc::Formula::Ochiai;
  faultloc::NavigationStrategy navigation = faultloc::NavigationStrategy::WeightedRandom;
  operators::IngredientScope ingredient_scope = operators::IngredientScope::Local;
  std::size_t step_budget = minilang::kDefaultStepBudget;
  std::uint64_t seed = 0;
  std::size_t max_patches = 1;
  bool fast_validation = false;
  // Replays every surviving variant's lineage and checks it reproduces the AST.
  bool check_lineage = false;

  void validate() const {
    if (population_size < 1) throw std::invalid_argument("population size must be at least 1");
    if (max_generations < 1) throw std::invalid_argument("max generations must be at least 1");
    if (step_budget < 1) throw std::invalid_argument("step budget must be at least 1");
    if (max_patches < 1) throw std::invalid_argument("max patches must be at least 1");
  }
};

/// Redraw attempts per parent per generation.
inline constexpr std::size_t kMaxAttempts = 10;

struct LineageEntry {
  PatchOp op;
  std::size_t generation = 0;
  friend bool operator==(const LineageEntry&, const LineageEntry&) = default;
};

struct ProgramVariant {
  SourceUnit ast;
  std::vector<LineageEntry> lineage;
  std::size_t fitness = 0;  // failing tests; 0 means the whole suite passes
  std::size_t generation_born = 0;
};

struct FoundPatch {
  std::string diff;
  std::string source;
  std::vector<LineageEntry> lineage;
  std::size_t generation = 0;
};

enum class Status { PatchFound, Exhausted };

inline std::string_view to_string(Status s) {
  return s == Status::PatchFound ? "PatchFound" : "Exhausted";
}

struct RepairOutcome {
  Status status = Status::Exhausted;
  std::vector<FoundPatch> patches;
  std::size_t generations_run = 0;
  std::size_t variants_evaluated = 0;
  std::size_t initial_fitness = 0;
  std::vector<std::size_t> per_generation_best_fitness;
  std::vector<faultloc::SuspiciousStatement> ranked;
  std::chrono::duration<double> wall_time{0};
};

class NoFailingTest : public std::runtime_error {
 public:
  NoFailingTest() : std::runtime_error("no failing test: nothing to repair") {}
};

class UnlocalizableFault : public std::runtime_error {
 public:
  UnlocalizableFault()
      : std::runtime_error("unlocalizable fault: no statement has a positive suspiciousness") {}
};

/// Number of tests whose outcome differs from the expected value. With
/// `stop_at_first_failure` the count stops at 1 (a lower bound).
inline std::size_t fitness(const SourceUnit& program, const TestSuite& suite,
                           std::size_t step_budget, bool stop_at_first_failure = false) {
  if (suite.empty()) throw std::invalid_argument("test suite is empty");
  std::size_t failing = 0;
  for (const auto& tc : suite) {
    if (!minilang::passes(minilang::interpret(program, tc.call, step_budget), tc)) {
      ++failing;
      if (stop_at_first_failure) break;
    }
  }
  return failing;
}

inline std::size_t fitness(const ProgramVariant& variant, const TestSuite& suite,
                           std::size_t step_budget) {
  return fitness(variant.ast, suite, step_budget);
}

inline std::vector<ProgramVariant> init_population(const SourceUnit& original, std::size_t n,
                                                   std::size_t original_fitness) {
  if (n < 1) throw std::invalid_argument("population size must be at least 1");
  return std::vector<ProgramVariant>(n, ProgramVariant{original, {}, original_fitness, 0});
}

/// Re-applies a lineage to the original program. Returns nullopt if any op
/// fails to apply.
inline std::optional<SourceUnit> replay(const SourceUnit& original,
                                        const std::vector<LineageEntry>& lineage) {
  SourceUnit current = original;
  Rng unused(0);
  for (const auto& entry : lineage) {
    auto applied = operators::apply(current, entry.op, unused);
    if (!applied) return std::nullopt;
    current = std::move(applied.child());
  }
  return current;
}

/// Run-wide state shared by all generations: the original program, the suite
/// in two-phase order, the localization result, and counters.
class SearchContext {
 public:
  SearchContext(const SourceUnit& original, const TestSuite& suite, const EngineConfig& config,
                const faultloc::CoverageMatrix& matrix,
                std::vector<faultloc::SuspiciousStatement> ranked)
      : original_(original),
        config_(config),
        navigator_(ranked, config.navigation),
        original_text_(minilang::pretty_print(original)) {
    for (const auto& row : matrix.rows)
      if (row.verdict == faultloc::Verdict::Fail) originally_failing_.insert(row.test);
    for (const auto& tc : suite)
      if (originally_failing_.contains(tc.name)) ordered_suite_.push_back(tc);
    for (const auto& tc : suite)
      if (!originally_failing_.contains(tc.name)) ordered_suite_.push_back(tc);
    for (const auto& s : ranked) {
      auto path = minilang::path_of(original, s.id);
      if (path) points_.emplace(s.id, operators::ModificationPoint{s.id, *path, s.score});
    }
  }

  const SourceUnit& original() const { return original_; }
  const EngineConfig& config() const { return config_; }
  const TestSuite& ordered_suite() const { return ordered_suite_; }
  const std::set<std::string>& originally_failing() const { return originally_failing_; }
  const std::string& original_text() const { return original_text_; }
  std::size_t evaluations() const { return evaluations_; }
  std::size_t validations() const { return validations_; }
  void count_evaluation() { ++evaluations_; }

  /// Next modification point according to the navigation strategy.
  const operators::ModificationPoint& next_point(Rng& rng) {
    return points_.at(navigator_.next(rng).id);
  }

  std::size_t evaluate(const SourceUnit& program) {
    ++evaluations_;
    return fitness(program, ordered_suite_, config_.step_budget, config_.fast_validation);
  }

  /// Two-phase validation; returns a patch the first time a valid program
  /// text is seen.
  std::optional<FoundPatch> accept(const ProgramVariant& variant, std::size_t generation) {
    ++validations_;
    const auto result = validation::validate(variant.ast, ordered_suite_, originally_failing_,
                                             config_.step_budget);
    if (!result.valid) return std::nullopt;
    std::string text = minilang::pretty_print(variant.ast);
    if (!patch_sources_.insert(text).second) return std::nullopt;
    const std::string label = std::filesystem::path(original_.source_name).filename().string();
    FoundPatch patch;
    patch.diff = diff::unified_diff(original_text_, text, "a/" + label, "b/" + label);
    patch.source = std::move(text);
    patch.lineage = variant.lineage;
    patch.generation = generation;
    return patch;
  }

 private:
  const SourceUnit& original_;
  EngineConfig config_;
  faultloc::Navigator navigator_;
  std::string original_text_;
  TestSuite ordered_suite_;
  std::set<std::string> originally_failing_;
  std::map<minilang::StatementId, operators::ModificationPoint> points_;
  std::set<std::string> patch_sources_;
  std::size_t evaluations_ = 0;
  std::size_t validations_ = 0;
};

struct GenerationResult {
  std::vector<ProgramVariant> children;
  std::vector<FoundPatch> patches;
};

/// One child per parent: navigate to a point, enumerate the mode's ops there,
/// draw one uniformly and apply it, redrawing up to kMaxAttempts times.
inline GenerationResult step_generation(SearchContext& ctx,
                                        const std::vector<ProgramVariant>& population,
                                        std::size_t generation, Rng& rng) {
  GenerationResult out;
  const auto& config = ctx.config();
  for (const auto& parent : population) {
    for (std::size_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
      const auto& point = ctx.next_point(rng);
      if (!minilang::resolve(parent.ast, point.path)) continue;
      operators::IngredientPool pool;
      if (config.mode == Mode::JGenProg)
        pool = operators::harvest_ingredients(parent.ast, point, config.ingredient_scope);
      const auto ops = operators::enumerate_ops(config.mode, point, parent.ast, pool);
      if (ops.empty()) continue;
      auto applied = operators::apply(parent.ast, ops[rng.uniform_index(ops.size())], rng);
      if (!applied) continue;

      ProgramVariant child;
      child.ast = std::move(applied.child());
      child.lineage = parent.lineage;
      child.lineage.push_back({applied.op(), generation});
      child.generation_born = generation;
      child.fitness = ctx.evaluate(child.ast);
      if (child.fitness == 0)
        if (auto patch = ctx.accept(child, generation)) out.patches.push_back(std::move(*patch));
      out.children.push_back(std::move(child));
      break;
    }
  }
  return out;
}

/// Elitist survival: the n lowest-fitness variants of parents ∪ children.
/// Ties prefer the younger generation, then the shorter lineage, then input
/// order (parents before children). Short populations are padded with clones
/// of `original`.
inline std::vector<ProgramVariant> select(std::vector<ProgramVariant> parents,
                                          std::vector<ProgramVariant> children, std::size_t n,
                                          const ProgramVariant& original) {
  if (parents.empty()) throw std::invalid_argument("selection needs at least one parent");
  std::vector<ProgramVariant> pool = std::move(parents);
  pool.insert(pool.end(), std::make_move_iterator(children.begin()),
              std::make_move_iterator(children.end()));
  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = pool[a];
    const auto& y = pool[b];
    if (x.fitness != y.fitness) return x.fitness < y.fitness;
    if (x.generation_born != y.generation_born) return x.generation_born > y.generation_born;
    return x.lineage.size() < y.lineage.size();
  });
  std::vector<ProgramVariant> next;
  next.reserve(n);
  for (std::size_t k = 0; k < order.size() && next.size() < n; ++k)
    next.push_back(std::move(pool[order[k]]));
  while (next.size() < n) next.push_back(original);
  return next;
}

/// Full repair run: localize once on the original, then evolve until
/// `max_patches` valid repairs are found or `max_generations` elapse.
inline RepairOutcome evolve(const SourceUnit& original, const TestSuite& suite,
                            const EngineConfig& config) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();
  const auto matrix = faultloc::build_matrix(original, suite, config.step_budget);
  if (matrix.total_fail == 0) throw NoFailingTest();
  auto ranked = faultloc::rank(matrix, config.formula);
  if (ranked.empty()) throw UnlocalizableFault();

  RepairOutcome outcome;
  outcome.ranked = ranked;
  outcome.initial_fitness = matrix.total_fail;
  SearchContext ctx(original, suite, config, matrix, std::move(ranked));
  ctx.count_evaluation();  // the original program's run through the suite

  Rng rng(config.seed);
  const ProgramVariant clone{original, {}, matrix.total_fail, 0};
  auto population = init_population(original, config.population_size, matrix.total_fail);

  for (std::size_t gen = 1; gen <= config.max_generations; ++gen) {
    auto result = step_generation(ctx, population, gen, rng);
    for (auto& p : result.patches)
      if (outcome.patches.size() < config.max_patches) outcome.patches.push_back(std::move(p));
    population = select(std::move(population), std::move(result.children),
                        config.population_size, clone);
    if (config.check_lineage) {
      for (const auto& v : population) {
        const auto replayed = replay(original, v.lineage);
        if (!replayed || !(*replayed == v.ast) ||
            minilang::pretty_print(*replayed) != minilang::pretty_print(v.ast))
          throw std::logic_error("lineage replay does not reproduce a surviving variant");
      }
    }
    std::size_t best = population.front().fitness;
    for (const auto& v : population) best = std::min(best, v.fitness);
    outcome.per_generation_best_fitness.push_back(best);
    outcome.generations_run = gen;
    if (outcome.patches.size() >= config.max_patches) break;
  }

  outcome.variants_evaluated = ctx.evaluations();
  outcome.status = outcome.patches.empty() ? Status::Exhausted : Status::PatchFound;
  outcome.wall_time = std::chrono::steady_clock::now() - started;
  return outcome;
}

}  // namespace minirepair::engine
