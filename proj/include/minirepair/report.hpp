#pragma once

#include <chrono>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "minirepair/engine.hpp"

namespace minirepair::report {

using nlohmann::ordered_json;

inline ordered_json config_to_json(const engine::EngineConfig& c) {
  return {{"mode", operators::to_string(c.mode)},
          {"population_size", c.population_size},
          {"max_generations", c.max_generations},
          {"formula", faultloc::to_string(c.formula)},
          {"navigation", faultloc::to_string(c.navigation)},
          {"ingredient_scope", operators::to_string(c.ingredient_scope)},
          {"step_budget", c.step_budget},
          {"max_patches", c.max_patches},
          {"fast_validation", c.fast_validation}};
}

/// Patch trace entry: {kind, statement_id, payload_summary, generation}.
inline ordered_json trace_entry(const engine::LineageEntry& entry) {
  return {{"kind", operators::to_string(entry.op.kind)},
          {"statement_id", entry.op.point.statement.str()},
          {"payload_summary", operators::payload_summary(entry.op)},
          {"generation", entry.generation}};
}

inline ordered_json lineage_to_json(const std::vector<engine::LineageEntry>& lineage) {
  auto out = ordered_json::array();
  for (const auto& e : lineage) out.push_back(trace_entry(e));
  return out;
}

/// Run report. `wall_time_ms` is the only field that varies between runs with
/// identical inputs and seed.
inline ordered_json outcome_to_json(const engine::RepairOutcome& outcome,
                                    const engine::EngineConfig& config) {
  auto patches = ordered_json::array();
  for (const auto& p : outcome.patches)
    patches.push_back(
        {{"diff", p.diff}, {"lineage", lineage_to_json(p.lineage)}, {"generation", p.generation}});
  return {{"status", engine::to_string(outcome.status)},
          {"seed", config.seed},
          {"config", config_to_json(config)},
          {"generations_run", outcome.generations_run},
          {"variants_evaluated", outcome.variants_evaluated},
          {"initial_fitness", outcome.initial_fitness},
          {"patches", patches},
          {"per_generation_best_fitness", outcome.per_generation_best_fitness},
          {"wall_time_ms",
           std::chrono::duration<double, std::milli>(outcome.wall_time).count()}};
}

/// The report without wall-clock fields, for determinism comparisons.
inline ordered_json without_timing(ordered_json report) {
  report.erase("wall_time_ms");
  return report;
}

}  // namespace minirepair::report
