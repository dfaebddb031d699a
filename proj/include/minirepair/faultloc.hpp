#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "minirepair/minilang.hpp"
#include "minirepair/random.hpp"

namespace minirepair::faultloc {

using minilang::StatementId;

enum class Verdict { Pass, Fail };

struct CoverageRow {
  std::string test;
  Verdict verdict = Verdict::Fail;
  std::set<StatementId> executed;
};

/// Test-by-statement execution spectrum.
struct CoverageMatrix {
  std::vector<CoverageRow> rows;
  std::size_t total_pass = 0;
  std::size_t total_fail = 0;

  std::vector<std::string> failing_tests() const {
    std::vector<std::string> out;
    for (const auto& r : rows)
      if (r.verdict == Verdict::Fail) out.push_back(r.test);
    return out;
  }
};

/// Runs every test once; a row passes iff the call returned exactly the
/// expected value.
inline CoverageMatrix build_matrix(const minilang::SourceUnit& unit,
                                   const minilang::TestSuite& suite, std::size_t step_budget) {
  if (suite.empty()) throw std::invalid_argument("test suite is empty");
  minilang::validate_suite(unit, suite);
  CoverageMatrix matrix;
  for (const auto& tc : suite) {
    auto result = minilang::interpret(unit, tc.call, step_budget);
    CoverageRow row;
    row.test = tc.name;
    row.verdict = minilang::passes(result, tc) ? Verdict::Pass : Verdict::Fail;
    row.executed = std::move(result.executed);
    (row.verdict == Verdict::Pass ? matrix.total_pass : matrix.total_fail) += 1;
    matrix.rows.push_back(std::move(row));
  }
  return matrix;
}

// ---------------------------------------------------------------------------
// Suspiciousness formulas. All return a value in [0, 1].

inline double ochiai(std::size_t ef, std::size_t ep, std::size_t nf) {
  if (ef == 0) return 0.0;
  const double denom = std::sqrt(static_cast<double>(ef + nf) * static_cast<double>(ef + ep));
  return static_cast<double>(ef) / denom;
}

inline double tarantula(std::size_t ef, std::size_t ep, std::size_t total_fail,
                        std::size_t total_pass) {
  if (ef == 0 || total_fail == 0) return 0.0;
  const double fail_ratio = static_cast<double>(ef) / static_cast<double>(total_fail);
  const double pass_ratio =
      total_pass == 0 ? 0.0 : static_cast<double>(ep) / static_cast<double>(total_pass);
  return fail_ratio / (fail_ratio + pass_ratio);
}

/// Binary weighting: 1.0 for failing-only, 0.1 for shared, 0 otherwise.
inline double weimer_binary(std::size_t ef, std::size_t ep) {
  if (ef == 0) return 0.0;
  return ep == 0 ? 1.0 : 0.1;
}

enum class Formula { Ochiai, Tarantula, Weimer };

inline std::string_view to_string(Formula f) {
  switch (f) {
    case Formula::Ochiai: return "ochiai";
    case Formula::Tarantula: return "tarantula";
    case Formula::Weimer: return "weimer";
  }
  return "?";
}

inline Formula parse_formula(std::string_view text) {
  if (text == "ochiai") return Formula::Ochiai;
  if (text == "tarantula") return Formula::Tarantula;
  if (text == "weimer") return Formula::Weimer;
  throw std::invalid_argument("unknown formula '" + std::string(text) + "'");
}

struct SuspiciousStatement {
  StatementId id;
  double score = 0.0;
  std::size_t ef = 0;
  std::size_t ep = 0;
  std::size_t nf = 0;
  std::size_t np = 0;
};

inline double score(Formula formula, std::size_t ef, std::size_t ep, std::size_t nf,
                    std::size_t np) {
  switch (formula) {
    case Formula::Ochiai: return ochiai(ef, ep, nf);
    case Formula::Tarantula: return tarantula(ef, ep, ef + nf, ep + np);
    case Formula::Weimer: return weimer_binary(ef, ep);
  }
  return 0.0;
}

/// Statements executed by at least one test with a positive score, sorted by
/// score descending, ties by StatementId.
inline std::vector<SuspiciousStatement> rank(const CoverageMatrix& matrix, Formula formula) {
  std::map<StatementId, std::pair<std::size_t, std::size_t>> counts;  // id -> (ef, ep)
  for (const auto& row : matrix.rows)
    for (const auto& id : row.executed) {
      auto& c = counts[id];
      (row.verdict == Verdict::Fail ? c.first : c.second) += 1;
    }
  std::vector<SuspiciousStatement> ranked;
  for (const auto& [id, c] : counts) {
    SuspiciousStatement s;
    s.id = id;
    s.ef = c.first;
    s.ep = c.second;
    s.nf = matrix.total_fail - s.ef;
    s.np = matrix.total_pass - s.ep;
    s.score = score(formula, s.ef, s.ep, s.nf, s.np);
    if (s.score > 0.0) ranked.push_back(std::move(s));
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const SuspiciousStatement& a, const SuspiciousStatement& b) {
                     return a.score > b.score;
                   });
  return ranked;
}

inline nlohmann::ordered_json spectrum_to_json(const std::vector<SuspiciousStatement>& ranked) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& s : ranked)
    out.push_back({{"statement_id", s.id.str()},
                   {"ef", s.ef},
                   {"ep", s.ep},
                   {"nf", s.nf},
                   {"np", s.np},
                   {"score", s.score}});
  return out;
}

// ---------------------------------------------------------------------------
// Navigation of the suspicious-statement space.

enum class NavigationStrategy { RankOrder, UniformRandom, WeightedRandom };

inline std::string_view to_string(NavigationStrategy s) {
  switch (s) {
    case NavigationStrategy::RankOrder: return "rank";
    case NavigationStrategy::UniformRandom: return "uniform";
    case NavigationStrategy::WeightedRandom: return "weighted";
  }
  return "?";
}

inline NavigationStrategy parse_navigation(std::string_view text) {
  if (text == "rank") return NavigationStrategy::RankOrder;
  if (text == "uniform") return NavigationStrategy::UniformRandom;
  if (text == "weighted") return NavigationStrategy::WeightedRandom;
  throw std::invalid_argument("unknown navigation strategy '" + std::string(text) + "'");
}

/// Picks modification points from a ranked list. RankOrder walks the list in
/// order (wrapping around); the random strategies draw from `rng`.
class Navigator {
 public:
  Navigator(std::vector<SuspiciousStatement> ranked, NavigationStrategy strategy)
      : ranked_(std::move(ranked)), strategy_(strategy) {
    if (ranked_.empty()) throw std::invalid_argument("cannot navigate an empty suspicious list");
    double total = 0.0;
    cumulative_.reserve(ranked_.size());
    for (const auto& s : ranked_) {
      total += s.score;
      cumulative_.push_back(total);
    }
  }

  const SuspiciousStatement& next(Rng& rng) {
    switch (strategy_) {
      case NavigationStrategy::RankOrder: {
        const auto& s = ranked_[cursor_];
        cursor_ = (cursor_ + 1) % ranked_.size();
        return s;
      }
      case NavigationStrategy::UniformRandom:
        return ranked_[rng.uniform_index(ranked_.size())];
      case NavigationStrategy::WeightedRandom: {
        const double target = rng.uniform_real() * cumulative_.back();
        auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
        if (it == cumulative_.end()) --it;
        return ranked_[static_cast<std::size_t>(it - cumulative_.begin())];
      }
    }
    return ranked_.front();
  }

  const std::vector<SuspiciousStatement>& ranked() const { return ranked_; }
  NavigationStrategy strategy() const { return strategy_; }

 private:
  std::vector<SuspiciousStatement> ranked_;
  NavigationStrategy strategy_;
  std::vector<double> cumulative_;
  std::size_t cursor_ = 0;
};

/// Single draw from a fresh navigator.
inline StatementId navigate(const std::vector<SuspiciousStatement>& ranked,
                            NavigationStrategy strategy, Rng& rng) {
  Navigator nav(ranked, strategy);
  return nav.next(rng).id;
}

}  // namespace minirepair::faultloc
