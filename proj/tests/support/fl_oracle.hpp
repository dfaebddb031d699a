#pragma once

// Brute-force spectrum ranking, written without reference to the library's
// scoring code. Used to cross-check faultloc::rank.

#include <cmath>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "minirepair/faultloc.hpp"

namespace oracle {

struct Scored {
  minirepair::minilang::StatementId id;
  double score = 0.0;
  std::size_t ef = 0, ep = 0, nf = 0, np = 0;
};

inline double formula_value(const std::string& formula, double ef, double ep, double nf,
                            double np) {
  if (ef == 0) return 0.0;
  if (formula == "ochiai") return ef / std::sqrt((ef + nf) * (ef + ep));
  if (formula == "tarantula") {
    const double fail_ratio = ef / (ef + nf);
    const double pass_ratio = (ep + np) == 0 ? 0.0 : ep / (ep + np);
    return fail_ratio / (fail_ratio + pass_ratio);
  }
  return ep == 0 ? 1.0 : 0.1;
}

inline std::vector<Scored> brute_force_rank(const minirepair::faultloc::CoverageMatrix& m,
                                            const std::string& formula) {
  using minirepair::faultloc::Verdict;
  std::set<minirepair::minilang::StatementId> all;
  for (const auto& row : m.rows) all.insert(row.executed.begin(), row.executed.end());

  std::vector<Scored> out;
  for (const auto& id : all) {
    Scored s;
    s.id = id;
    for (const auto& row : m.rows) {
      const bool hit = row.executed.count(id) > 0;
      const bool fail = row.verdict == Verdict::Fail;
      if (hit && fail) ++s.ef;
      if (hit && !fail) ++s.ep;
      if (!hit && fail) ++s.nf;
      if (!hit && !fail) ++s.np;
    }
    s.score = formula_value(formula, double(s.ef), double(s.ep), double(s.nf), double(s.np));
    if (s.score > 0) out.push_back(s);
  }
  // Insertion sort: higher score first, ties keep id order from the set.
  for (std::size_t i = 1; i < out.size(); ++i) {
    for (std::size_t j = i; j > 0 && out[j].score > out[j - 1].score; --j)
      std::swap(out[j], out[j - 1]);
  }
  return out;
}

}  // namespace oracle
