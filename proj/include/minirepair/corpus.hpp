#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "minirepair/engine.hpp"
#include "minirepair/minilang.hpp"
#include "minirepair/report.hpp"

namespace minirepair::corpus {

namespace fs = std::filesystem;

/// Contents of a case's `meta.json`.
struct CaseMeta {
  std::string description;
  std::vector<operators::Mode> modes;
  std::uint64_t seed = 0;
  bool repairable = true;
  // Per mode, the op kind the seeded bug targets (used for mode coverage).
  std::map<operators::Mode, operators::PatchKind> targets;
};

inline operators::PatchKind parse_kind(const std::string& text) {
  using operators::PatchKind;
  for (auto k : {PatchKind::InsertBefore, PatchKind::Replace, PatchKind::Remove,
                 PatchKind::TemplateGuardArrayAccess, PatchKind::TemplateMutateConditionTerm,
                 PatchKind::TemplateSwapCallArg, PatchKind::MutRelationalOp,
                 PatchKind::MutLogicalOp, PatchKind::MutArithmeticOp,
                 PatchKind::MutNegateCondition})
    if (operators::to_string(k) == text) return k;
  throw std::invalid_argument("unknown patch kind '" + text + "'");
}

inline CaseMeta parse_meta(const nlohmann::json& j) {
  CaseMeta meta;
  meta.description = j.value("description", "");
  if (!j.contains("modes") || !j["modes"].is_array() || j["modes"].empty())
    throw std::invalid_argument("meta.json needs a non-empty \"modes\" array");
  for (const auto& m : j["modes"]) meta.modes.push_back(operators::parse_mode(m.get<std::string>()));
  meta.seed = j.value("seed", std::uint64_t{0});
  meta.repairable = j.value("repairable", true);
  if (j.contains("targets"))
    for (const auto& [mode, kind] : j["targets"].items())
      meta.targets[operators::parse_mode(mode)] = parse_kind(kind.get<std::string>());
  return meta;
}

struct CaseRun {
  std::string case_name;
  std::string mode;
  std::string status;  // PatchFound | Exhausted | errored
  std::size_t generations = 0;
  double wall_time_ms = 0.0;
  bool repairable = true;
  std::string error;
  std::vector<std::string> patch_kinds;  // op kinds in the first patch's lineage
  std::string target_kind;
};

struct Thresholds {
  std::size_t min_repaired = 10;
  double max_wall_seconds = 60.0;
};

struct CorpusSummary {
  std::vector<CaseRun> rows;
  std::size_t seedable_cases = 0;
  std::size_t repaired_cases = 0;
  double total_wall_time_ms = 0.0;
  std::vector<std::string> missing_coverage;
  bool thresholds_met = false;
};

/// Repairs that must appear among the corpus results (mode, op kind).
inline std::vector<std::pair<operators::Mode, operators::PatchKind>> required_coverage() {
  using operators::Mode;
  using operators::PatchKind;
  return {{Mode::JGenProg, PatchKind::InsertBefore},
          {Mode::JGenProg, PatchKind::Replace},
          {Mode::JPar, PatchKind::TemplateGuardArrayAccess},
          {Mode::JMutRepair, PatchKind::MutRelationalOp}};
}

inline std::vector<fs::path> list_cases(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw std::invalid_argument("corpus directory not found: " + dir.string());
  std::vector<fs::path> cases;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_directory()) cases.push_back(entry.path());
  std::sort(cases.begin(), cases.end());
  return cases;
}

/// Runs every case under each of its declared modes. `base` supplies all
/// engine settings except mode and seed, which come from each case's meta.
/// When `out_dir` is non-empty, per-run reports are written there.
inline CorpusSummary run_corpus(const fs::path& dir, const engine::EngineConfig& base,
                                const Thresholds& thresholds = {}, const fs::path& out_dir = {}) {
  const auto cases = list_cases(dir);
  if (cases.empty()) throw std::invalid_argument("corpus directory has no cases: " + dir.string());

  CorpusSummary summary;
  std::set<std::pair<operators::Mode, operators::PatchKind>> covered;
  for (const auto& case_dir : cases) {
    const std::string name = case_dir.filename().string();
    CaseMeta meta;
    minilang::SourceUnit program;
    minilang::TestSuite suite;
    try {
      meta = parse_meta(nlohmann::json::parse(minilang::read_text_file((case_dir / "meta.json").string())));
      program = minilang::load_program((case_dir / "program.ml").string());
      suite = minilang::load_suite((case_dir / "tests.json").string());
      minilang::validate_suite(program, suite);
    } catch (const std::exception& e) {
      CaseRun row;
      row.case_name = name;
      row.status = "errored";
      row.error = e.what();
      summary.rows.push_back(std::move(row));
      ++summary.seedable_cases;
      continue;
    }

    if (meta.repairable) ++summary.seedable_cases;
    bool all_repaired = true;
    for (const auto mode : meta.modes) {
      CaseRun row;
      row.case_name = name;
      row.mode = std::string(operators::to_string(mode));
      row.repairable = meta.repairable;
      if (auto t = meta.targets.find(mode); t != meta.targets.end())
        row.target_kind = std::string(operators::to_string(t->second));
      engine::EngineConfig config = base;
      config.mode = mode;
      config.seed = meta.seed;
      const auto started = std::chrono::steady_clock::now();
      try {
        const auto outcome = engine::evolve(program, suite, config);
        row.status = std::string(engine::to_string(outcome.status));
        row.generations = outcome.generations_run;
        if (!outcome.patches.empty()) {
          for (const auto& e : outcome.patches.front().lineage) {
            row.patch_kinds.emplace_back(operators::to_string(e.op.kind));
            covered.emplace(mode, e.op.kind);
          }
        }
        if (!out_dir.empty()) {
          fs::create_directories(out_dir / name);
          std::ofstream(out_dir / name / (row.mode + ".report.json"))
              << report::outcome_to_json(outcome, config).dump(2) << "\n";
        }
      } catch (const std::exception& e) {
        row.status = "errored";
        row.error = e.what();
      }
      row.wall_time_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
              .count();
      summary.total_wall_time_ms += row.wall_time_ms;
      all_repaired = all_repaired && row.status == "PatchFound";
      summary.rows.push_back(std::move(row));
    }
    if (meta.repairable && all_repaired) ++summary.repaired_cases;
  }

  for (const auto& need : required_coverage())
    if (!covered.contains(need))
      summary.missing_coverage.push_back(std::string(operators::to_string(need.first)) + "/" +
                                         std::string(operators::to_string(need.second)));
  summary.thresholds_met = summary.repaired_cases >= thresholds.min_repaired &&
                           summary.total_wall_time_ms < thresholds.max_wall_seconds * 1000.0 &&
                           summary.missing_coverage.empty();
  return summary;
}

inline nlohmann::ordered_json summary_to_json(const CorpusSummary& s, const Thresholds& t) {
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : s.rows) {
    nlohmann::ordered_json row = {{"case", r.case_name},
                                  {"mode", r.mode},
                                  {"status", r.status},
                                  {"generations", r.generations},
                                  {"wall_time_ms", r.wall_time_ms},
                                  {"repairable", r.repairable},
                                  {"patch_kinds", r.patch_kinds}};
    if (!r.target_kind.empty()) row["target_kind"] = r.target_kind;
    if (!r.error.empty()) row["error"] = r.error;
    rows.push_back(std::move(row));
  }
  return {{"rows", rows},
          {"seedable_cases", s.seedable_cases},
          {"repaired_cases", s.repaired_cases},
          {"total_wall_time_ms", s.total_wall_time_ms},
          {"missing_coverage", s.missing_coverage},
          {"thresholds", {{"min_repaired", t.min_repaired}, {"max_wall_seconds", t.max_wall_seconds}}},
          {"thresholds_met", s.thresholds_met}};
}

}  // namespace minirepair::corpus
