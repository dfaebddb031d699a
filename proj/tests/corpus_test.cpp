#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "minirepair/corpus.hpp"
#include "support/fixtures.hpp"

namespace fs = std::filesystem;
using namespace minirepair;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Corpus, EmptyDirectoryIsAnError) {
  const auto dir = scratch("minirepair_corpus_empty");
  EXPECT_THROW(corpus::run_corpus(dir, engine::EngineConfig{}), std::invalid_argument);
  EXPECT_THROW(corpus::run_corpus(dir / "missing", engine::EngineConfig{}), std::invalid_argument);
  fs::remove_all(dir);
}

TEST(Corpus, MalformedCaseIsIsolated) {
  const auto dir = scratch("minirepair_corpus_mixed");
  fs::copy(fs::path(fixtures::corpus_dir()) / "01_max_relational", dir / "01_good",
           fs::copy_options::recursive);
  fs::create_directories(dir / "02_broken");
  std::ofstream(dir / "02_broken" / "program.ml") << "fn f( -> int { }";
  std::ofstream(dir / "02_broken" / "tests.json") << R"({"tests": []})";
  std::ofstream(dir / "02_broken" / "meta.json") << R"({"modes": ["jmutrepair"]})";

  corpus::Thresholds t;
  t.min_repaired = 1;
  const auto summary = corpus::run_corpus(dir, engine::EngineConfig{}, t);
  ASSERT_EQ(summary.rows.size(), 2u);
  EXPECT_EQ(summary.rows[0].status, "PatchFound");
  EXPECT_EQ(summary.rows[1].status, "errored");
  EXPECT_FALSE(summary.rows[1].error.empty());
  EXPECT_EQ(summary.repaired_cases, 1u);
  EXPECT_EQ(summary.seedable_cases, 2u);
  fs::remove_all(dir);
}

TEST(Corpus, MetaParsing) {
  const auto meta = corpus::parse_meta(nlohmann::json::parse(
      R"({"description": "d", "modes": ["jgenprog", "jpar"], "seed": 9, "repairable": false,
          "targets": {"jpar": "TemplateGuardArrayAccess"}})"));
  EXPECT_EQ(meta.modes.size(), 2u);
  EXPECT_EQ(meta.seed, 9u);
  EXPECT_FALSE(meta.repairable);
  EXPECT_EQ(meta.targets.at(operators::Mode::JPar), operators::PatchKind::TemplateGuardArrayAccess);
  EXPECT_THROW(corpus::parse_meta(nlohmann::json::parse(R"({"modes": []})")), std::invalid_argument);
  EXPECT_THROW(corpus::parse_meta(nlohmann::json::parse(R"({"modes": ["jfoo"]})")),
               std::invalid_argument);
}

TEST(Corpus, ShipsRequiredCases) {
  std::size_t cases = 0, unrepairable = 0;
  std::set<operators::PatchKind> targets;
  for (const auto& c : corpus::list_cases(fixtures::corpus_dir())) {
    const auto meta = corpus::parse_meta(
        nlohmann::json::parse(minilang::read_text_file((c / "meta.json").string())));
    ++cases;
    unrepairable += !meta.repairable;
    for (const auto& [mode, kind] : meta.targets) targets.insert(kind);
  }
  EXPECT_GE(cases - unrepairable, 12u);
  EXPECT_GE(unrepairable, 1u);
  using operators::PatchKind;
  for (auto k : {PatchKind::MutRelationalOp, PatchKind::MutLogicalOp, PatchKind::MutArithmeticOp,
                 PatchKind::InsertBefore, PatchKind::Replace, PatchKind::TemplateGuardArrayAccess,
                 PatchKind::TemplateSwapCallArg})
    EXPECT_TRUE(targets.contains(k)) << operators::to_string(k);
}

TEST(CorpusProperty, LineageReplayAndGoalSoundness) {
  for (const auto& c : corpus::list_cases(fixtures::corpus_dir())) {
    const auto program = minilang::load_program((c / "program.ml").string());
    const auto suite = minilang::load_suite((c / "tests.json").string());
    const auto meta = corpus::parse_meta(
        nlohmann::json::parse(minilang::read_text_file((c / "meta.json").string())));
    for (auto mode : meta.modes) {
      engine::EngineConfig config;
      config.mode = mode;
      config.seed = meta.seed;
      config.check_lineage = true;
      engine::RepairOutcome outcome;
      ASSERT_NO_THROW(outcome = engine::evolve(program, suite, config)) << c;
      EXPECT_EQ(outcome.status == engine::Status::PatchFound, meta.repairable) << c;
      for (const auto& p : outcome.patches) {
        const auto replayed = engine::replay(program, p.lineage);
        ASSERT_TRUE(replayed.has_value()) << c;
        EXPECT_EQ(engine::fitness(*replayed, suite, config.step_budget), 0u) << c;
      }
    }
  }
}
