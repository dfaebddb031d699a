#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "minirepair/diff.hpp"
#include "minirepair/engine.hpp"
#include "minirepair/minilang.hpp"
#include "support/fixtures.hpp"

namespace fs = std::filesystem;
using namespace minirepair;

namespace {

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::string read(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Applies `diff` to `old_text` with the system patch tool.
std::string patched(const std::string& old_text, const std::string& diff, const fs::path& dir) {
  fs::create_directories(dir);
  write(dir / "old.ml", old_text);
  write(dir / "change.diff", diff);
  const std::string cmd = "patch -s -o '" + (dir / "new.ml").string() + "' '" +
                          (dir / "old.ml").string() + "' < '" + (dir / "change.diff").string() +
                          "'";
  const int status = std::system(cmd.c_str());
  EXPECT_TRUE(WIFEXITED(status) && WEXITSTATUS(status) == 0) << diff;
  return read(dir / "new.ml");
}

}  // namespace

TEST(Diff, IdenticalTextsGiveEmptyDiff) {
  EXPECT_EQ(diff::unified_diff("a\nb\n", "a\nb\n", "a/x", "b/x"), "");
}

TEST(Diff, SingleLineChange) {
  const auto d = diff::unified_diff("a\nb\nc\n", "a\nB\nc\n", "a/x.ml", "b/x.ml");
  EXPECT_EQ(d,
            "--- a/x.ml\n"
            "+++ b/x.ml\n"
            "@@ -1,3 +1,3 @@\n"
            " a\n"
            "-b\n"
            "+B\n"
            " c\n");
}

TEST(Diff, AppliesWithPatchTool) {
  const auto dir = fs::temp_directory_path() / "minirepair_diff_test";
  const std::vector<std::pair<std::string, std::string>> cases{
      {"a\nb\nc\n", "a\nc\n"},
      {"a\n", "x\na\ny\n"},
      {"1\n2\n3\n4\n5\n6\n7\n8\n9\n10\n11\n12\n13\n14\n15\n",
       "1\n2x\n3\n4\n5\n6\n7\n8\n9\n10\n11\n12\n13\n14x\n15\n16\n"},
      {"1\n2\n3\n4\n5\n6\n7\n8\n", "0\n1\n2\n3\n5\n6\n7\n8\n"},
  };
  for (const auto& [a, b] : cases)
    EXPECT_EQ(patched(a, diff::unified_diff(a, b, "a/f", "b/f"), dir), b);
  fs::remove_all(dir);
}

TEST(DiffProperty, EngineDiffsApplyOnCorpus) {
  const auto dir = fs::temp_directory_path() / "minirepair_diff_corpus";
  Rng rng(8);
  std::size_t checked = 0;
  for (const auto& entry : fs::directory_iterator(fixtures::corpus_dir())) {
    const auto unit = minilang::load_program((entry.path() / "program.ml").string());
    const auto original = minilang::pretty_print(unit);
    std::vector<operators::ModificationPoint> points;
    minilang::for_each_statement(unit, [&](const minilang::Stmt& s, const minilang::StmtPath& p) {
      points.push_back({s.id, p, 1.0});
    });
    for (int k = 0; k < 6; ++k) {
      const auto& p = points[rng.uniform_index(points.size())];
      const auto mode = static_cast<operators::Mode>(rng.uniform_index(3));
      const auto ops = operators::enumerate_ops(
          mode, p, unit, operators::harvest_ingredients(unit, p, operators::IngredientScope::Local));
      if (ops.empty()) continue;
      auto r = operators::apply(unit, ops[rng.uniform_index(ops.size())], rng);
      if (!r) continue;
      const auto changed = minilang::pretty_print(r.child());
      EXPECT_EQ(patched(original, diff::unified_diff(original, changed, "a/p.ml", "b/p.ml"), dir),
                changed);
      ++checked;
    }
  }
  EXPECT_GT(checked, 20u);
  fs::remove_all(dir);
}
