#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "minirepair/minilang/ast.hpp"

namespace minirepair::minilang {

enum class SourceErrorKind { Syntax, Type, Duplicate, MissingReturn };

inline std::string_view to_string(SourceErrorKind kind) {
  switch (kind) {
    case SourceErrorKind::Syntax: return "syntax error";
    case SourceErrorKind::Type: return "type error";
    case SourceErrorKind::Duplicate: return "duplicate definition";
    case SourceErrorKind::MissingReturn: return "missing return";
  }
  return "error";
}

/// Parse or static-semantics failure with a source location.
class SourceError : public std::runtime_error {
 public:
  SourceError(SourceErrorKind kind, SourceLoc loc, const std::string& message)
      : std::runtime_error(std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " +
                           std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        loc_(loc),
        detail_(message) {}

  SourceErrorKind kind() const { return kind_; }
  SourceLoc location() const { return loc_; }
  const std::string& detail() const { return detail_; }

 private:
  SourceErrorKind kind_;
  SourceLoc loc_;
  std::string detail_;
};

}  // namespace minirepair::minilang
