#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace minirepair::diff {

inline std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines.emplace_back(text.substr(start));
      break;
    }
    lines.emplace_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

enum class EditKind { Keep, Delete, Insert };

struct Edit {
  EditKind kind;
  std::size_t old_line;  // 0-based position in the old text
  std::size_t new_line;  // 0-based position in the new text
};

/// Line edit script from a longest-common-subsequence alignment.
inline std::vector<Edit> line_edits(const std::vector<std::string>& a,
                                    const std::vector<std::string>& b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::vector<std::vector<std::size_t>> lcs(n + 1, std::vector<std::size_t>(m + 1, 0));
  for (std::size_t i = n; i-- > 0;)
    for (std::size_t j = m; j-- > 0;)
      lcs[i][j] = a[i] == b[j] ? lcs[i + 1][j + 1] + 1 : std::max(lcs[i + 1][j], lcs[i][j + 1]);

  std::vector<Edit> edits;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < n || j < m) {
    if (i < n && j < m && a[i] == b[j]) {
      edits.push_back({EditKind::Keep, i++, j++});
    } else if (i < n && (j == m || lcs[i + 1][j] >= lcs[i][j + 1])) {
      edits.push_back({EditKind::Delete, i++, j});
    } else {
      edits.push_back({EditKind::Insert, i, j++});
    }
  }
  return edits;
}

/// Unified diff of two newline-terminated texts with `context` lines of
/// context. Returns an empty string when the texts are identical.
inline std::string unified_diff(std::string_view old_text, std::string_view new_text,
                                std::string_view old_label, std::string_view new_label,
                                std::size_t context = 3) {
  const auto a = split_lines(old_text);
  const auto b = split_lines(new_text);
  const auto edits = line_edits(a, b);

  std::vector<std::size_t> changes;
  for (std::size_t k = 0; k < edits.size(); ++k)
    if (edits[k].kind != EditKind::Keep) changes.push_back(k);
  if (changes.empty()) return {};

  std::string out;
  out += "--- ";
  out += old_label;
  out += "\n+++ ";
  out += new_label;
  out += "\n";

  std::size_t c = 0;
  while (c < changes.size()) {
    // Extend the hunk while the gap to the next change fits in 2 * context.
    std::size_t last = c;
    while (last + 1 < changes.size() && changes[last + 1] - changes[last] <= 2 * context + 1)
      ++last;
    const std::size_t begin = changes[c] >= context ? changes[c] - context : 0;
    const std::size_t end = std::min(edits.size(), changes[last] + context + 1);

    std::size_t old_count = 0;
    std::size_t new_count = 0;
    for (std::size_t k = begin; k < end; ++k) {
      if (edits[k].kind != EditKind::Insert) ++old_count;
      if (edits[k].kind != EditKind::Delete) ++new_count;
    }
    const std::size_t old_start = edits[begin].old_line + (old_count > 0 ? 1 : 0);
    const std::size_t new_start = edits[begin].new_line + (new_count > 0 ? 1 : 0);
    out += "@@ -" + std::to_string(old_start) + "," + std::to_string(old_count) + " +" +
           std::to_string(new_start) + "," + std::to_string(new_count) + " @@\n";
    for (std::size_t k = begin; k < end; ++k) {
      switch (edits[k].kind) {
        case EditKind::Keep:
          out += " " + a[edits[k].old_line] + "\n";
          break;
        case EditKind::Delete:
          out += "-" + a[edits[k].old_line] + "\n";
          break;
        case EditKind::Insert:
          out += "+" + b[edits[k].new_line] + "\n";
          break;
      }
    }
    c = last + 1;
  }
  return out;
}

}  // namespace minirepair::diff
