#pragma once

#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "minirepair/minilang.hpp"

namespace minirepair::validation {

struct TestVerdict {
  std::string test;
  bool passed = false;
  std::string detail;
};

struct ValidationResult {
  std::vector<TestVerdict> phase1;
  std::vector<TestVerdict> phase2;
  bool valid = false;
  std::size_t executions = 0;  // interpreter runs performed by this validation
};

class UnknownTestName : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline TestVerdict run_one(const minilang::SourceUnit& candidate, const minilang::TestCase& tc,
                           std::size_t step_budget) {
  const auto result = minilang::interpret(candidate, tc.call, step_budget);
  TestVerdict v;
  v.test = tc.name;
  v.passed = minilang::passes(result, tc);
  v.detail = minilang::describe(result.outcome);
  return v;
}

}  // namespace detail

/// Two-phase check: the originally failing tests first; only if all of them
/// pass, every previously passing test. Any failure invalidates the candidate.
inline ValidationResult validate(const minilang::SourceUnit& candidate,
                                 const minilang::TestSuite& suite,
                                 const std::set<std::string>& originally_failing,
                                 std::size_t step_budget) {
  if (originally_failing.empty())
    throw std::invalid_argument("validation needs at least one originally failing test");
  for (const auto& name : originally_failing) {
    bool known = false;
    for (const auto& tc : suite) known = known || tc.name == name;
    if (!known) throw UnknownTestName("unknown test name '" + name + "'");
  }

  ValidationResult result;
  bool phase1_ok = true;
  for (const auto& tc : suite) {
    if (!originally_failing.contains(tc.name)) continue;
    result.phase1.push_back(detail::run_one(candidate, tc, step_budget));
    ++result.executions;
    phase1_ok = phase1_ok && result.phase1.back().passed;
  }
  if (!phase1_ok) return result;

  for (const auto& tc : suite) {
    if (originally_failing.contains(tc.name)) continue;
    result.phase2.push_back(detail::run_one(candidate, tc, step_budget));
    ++result.executions;
    if (!result.phase2.back().passed) return result;
  }
  result.valid = true;
  return result;
}

}  // namespace minirepair::validation
