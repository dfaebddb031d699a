#pragma once

#include <string>

#include "minirepair/minilang.hpp"

namespace fixtures {

inline constexpr const char* kCorrectMax =
    "fn max(a: int, b: int) -> int { let m = a; if (b > m) { m = b; } return m; }";
inline constexpr const char* kBuggyMax =
    "fn max(a: int, b: int) -> int { let m = a; if (b < m) { m = b; } return m; }";

inline minirepair::minilang::TestSuite max_suite() {
  return minirepair::minilang::parse_suite(nlohmann::json::parse(R"({"tests": [
    {"name": "t1", "call": {"fn": "max", "args": [3, 5]}, "expect": 5},
    {"name": "t2", "call": {"fn": "max", "args": [4, 4]}, "expect": 4}]})"));
}

inline minirepair::minilang::StatementId sid(const std::string& fn, std::size_t index,
                                             std::size_t fn_index = 0) {
  return {fn, fn_index, index};
}

inline std::string corpus_dir() { return MINIREPAIR_CORPUS_DIR; }

}  // namespace fixtures
