#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "support/fixtures.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string err;
};

Run repair(const std::string& args) {
  const auto err_file = fs::temp_directory_path() / "minirepair_cli_stderr.txt";
  const std::string cmd = std::string(MINIREPAIR_REPAIR_BIN) + " " + args + " > /dev/null 2> '" +
                          err_file.string() + "'";
  const int raw = std::system(cmd.c_str());
  Run r;
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(err_file);
  std::stringstream ss;
  ss << in.rdbuf();
  r.err = ss.str();
  return r;
}

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const fs::path kCase = fs::path(fixtures::corpus_dir()) / "01_max_relational";

}  // namespace

TEST(Cli, PatchFoundWritesArtifacts) {
  const auto out = fs::temp_directory_path() / "minirepair_cli_found";
  fs::remove_all(out);
  const auto r = repair("--program " + (kCase / "program.ml").string() + " --tests " +
                        (kCase / "tests.json").string() + " --mode jmutrepair --seed 42 --dump-spectrum --out " +
                        out.string());
  EXPECT_EQ(r.status, 0) << r.err;
  const auto diff = read(out / "patch_1.diff");
  EXPECT_NE(diff.find("-  if (b < m) {"), std::string::npos) << diff;
  const auto report = nlohmann::json::parse(read(out / "report.json"));
  EXPECT_EQ(report["status"], "PatchFound");
  EXPECT_TRUE(nlohmann::json::parse(read(out / "spectrum.json")).is_array());
  fs::remove_all(out);
}

TEST(Cli, MissingTestsFile) {
  const auto r = repair("--program " + (kCase / "program.ml").string() +
                        " --tests /nonexistent/tests.json --out /tmp/minirepair_cli_missing");
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("/nonexistent/tests.json"), std::string::npos) << r.err;
}

TEST(Cli, CorrectProgramHasNoFailingTest) {
  const auto dir = fs::temp_directory_path() / "minirepair_cli_correct";
  fs::create_directories(dir);
  std::ofstream(dir / "max.ml") << fixtures::kCorrectMax;
  fs::copy_file(kCase / "tests.json", dir / "tests.json", fs::copy_options::overwrite_existing);
  const auto r = repair("--program " + (dir / "max.ml").string() + " --tests " +
                        (dir / "tests.json").string() + " --out " + (dir / "out").string());
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("no failing test"), std::string::npos) << r.err;
  fs::remove_all(dir);
}

TEST(Cli, ParseErrorAndBadFlags) {
  const auto dir = fs::temp_directory_path() / "minirepair_cli_bad";
  fs::create_directories(dir);
  std::ofstream(dir / "bad.ml") << "fn f() -> int { }";
  const auto r = repair("--program " + (dir / "bad.ml").string() + " --tests " +
                        (kCase / "tests.json").string());
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("missing return"), std::string::npos) << r.err;
  EXPECT_EQ(repair("--mode jfoo").status, 2);
  EXPECT_EQ(repair("--population-size 0").status, 2);
  fs::remove_all(dir);
}

TEST(Cli, UnknownFunctionInTests) {
  const auto dir = fs::temp_directory_path() / "minirepair_cli_unknown";
  fs::create_directories(dir);
  std::ofstream(dir / "tests.json")
      << R"({"tests": [{"name": "a", "call": {"fn": "nope", "args": []}, "expect": 1}]})";
  const auto r = repair("--program " + (kCase / "program.ml").string() + " --tests " +
                        (dir / "tests.json").string());
  EXPECT_EQ(r.status, 2);
  fs::remove_all(dir);
}

TEST(Cli, ExhaustedExitsOne) {
  const auto c = fs::path(fixtures::corpus_dir()) / "13_factorial_unrepairable";
  const auto r = repair("--program " + (c / "program.ml").string() + " --tests " +
                        (c / "tests.json").string() + " --max-generations 3 --out /tmp/minirepair_cli_ex");
  EXPECT_EQ(r.status, 1);
  fs::remove_all("/tmp/minirepair_cli_ex");
}

TEST(Cli, CorpusEmptyDirExitsTwo) {
  const auto dir = fs::temp_directory_path() / "minirepair_cli_empty_corpus";
  fs::create_directories(dir);
  EXPECT_EQ(repair("corpus " + dir.string() + " --out " + (dir / "out").string()).status, 2);
  fs::remove_all(dir);
}
