#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "minirepair/minilang/ast.hpp"
#include "minirepair/minilang/errors.hpp"

namespace minirepair::minilang {

struct Signature {
  std::vector<MiniType> params;
  MiniType return_type = MiniType::Int;
};

using Signatures = std::map<std::string, Signature, std::less<>>;

/// Lexical scope chain for static checking. Shadowing is not allowed: a `let`
/// may not reuse a name that is already visible.
class Scope {
 public:
  Scope() { frames_.emplace_back(); }

  void push() { frames_.emplace_back(); }
  void pop() { frames_.pop_back(); }

  std::optional<MiniType> lookup(std::string_view name) const {
    for (auto frame = frames_.rbegin(); frame != frames_.rend(); ++frame)
      for (const auto& [n, t] : *frame)
        if (n == name) return t;
    return std::nullopt;
  }

  bool declare(std::string name, MiniType type) {
    if (lookup(name)) return false;
    frames_.back().emplace_back(std::move(name), type);
    return true;
  }

  std::vector<std::pair<std::string, MiniType>> all() const {
    std::vector<std::pair<std::string, MiniType>> out;
    for (const auto& frame : frames_) out.insert(out.end(), frame.begin(), frame.end());
    return out;
  }

 private:
  std::vector<std::vector<std::pair<std::string, MiniType>>> frames_;
};

inline Signatures collect_signatures(const SourceUnit& unit) {
  Signatures sigs;
  for (const auto& fn : unit.functions) {
    Signature sig;
    sig.return_type = fn.return_type;
    for (const auto& p : fn.params) sig.params.push_back(p.type);
    sigs.emplace(fn.name, std::move(sig));
  }
  return sigs;
}

namespace detail {

[[noreturn]] inline void type_error(const SourceLoc& loc, const std::string& message) {
  throw SourceError(SourceErrorKind::Type, loc, message);
}

inline void expect_type(MiniType got, MiniType want, const SourceLoc& loc, std::string_view what) {
  if (got != want)
    type_error(loc, std::string(what) + " expects " + std::string(to_string(want)) + ", got " +
                        std::string(to_string(got)));
}

}  // namespace detail

/// Static type of `expr`; throws SourceError(Type) when ill-typed.
inline MiniType infer_type(const Expr& expr, const Scope& scope, const Signatures& sigs) {
  using detail::expect_type;
  using detail::type_error;
  switch (expr.kind) {
    case ExprKind::IntLit:
      return MiniType::Int;
    case ExprKind::BoolLit:
      return MiniType::Bool;
    case ExprKind::Var: {
      auto t = scope.lookup(expr.name);
      if (!t) type_error(expr.loc, "unbound variable '" + expr.name + "'");
      return *t;
    }
    case ExprKind::Binary: {
      const MiniType lhs = infer_type(expr.operands[0], scope, sigs);
      const MiniType rhs = infer_type(expr.operands[1], scope, sigs);
      const std::string op_text = "operator " + std::string(to_string(expr.binary_op));
      if (is_arithmetic(expr.binary_op)) {
        expect_type(lhs, MiniType::Int, expr.loc, op_text);
        expect_type(rhs, MiniType::Int, expr.loc, op_text);
        return MiniType::Int;
      }
      if (is_logical(expr.binary_op)) {
        expect_type(lhs, MiniType::Bool, expr.loc, op_text);
        expect_type(rhs, MiniType::Bool, expr.loc, op_text);
        return MiniType::Bool;
      }
      if (expr.binary_op == BinaryOp::Eq || expr.binary_op == BinaryOp::Ne) {
        if (lhs != rhs) type_error(expr.loc, op_text + " needs operands of the same type");
        return MiniType::Bool;
      }
      expect_type(lhs, MiniType::Int, expr.loc, op_text);
      expect_type(rhs, MiniType::Int, expr.loc, op_text);
      return MiniType::Bool;
    }
    case ExprKind::Unary: {
      const MiniType operand = infer_type(expr.operands[0], scope, sigs);
      if (expr.unary_op == UnaryOp::Neg) {
        expect_type(operand, MiniType::Int, expr.loc, "unary -");
        return MiniType::Int;
      }
      expect_type(operand, MiniType::Bool, expr.loc, "unary !");
      return MiniType::Bool;
    }
    case ExprKind::Index: {
      auto t = scope.lookup(expr.name);
      if (!t) type_error(expr.loc, "unbound variable '" + expr.name + "'");
      expect_type(*t, MiniType::IntArray, expr.loc, "indexing");
      expect_type(infer_type(expr.operands[0], scope, sigs), MiniType::Int, expr.loc, "array index");
      return MiniType::Int;
    }
    case ExprKind::Len:
      expect_type(infer_type(expr.operands[0], scope, sigs), MiniType::IntArray, expr.loc, "len");
      return MiniType::Int;
    case ExprKind::Call: {
      auto it = sigs.find(expr.name);
      if (it == sigs.end()) type_error(expr.loc, "unknown function '" + expr.name + "'");
      const auto& sig = it->second;
      if (sig.params.size() != expr.operands.size())
        type_error(expr.loc, "function '" + expr.name + "' takes " +
                                 std::to_string(sig.params.size()) + " arguments");
      for (std::size_t k = 0; k < sig.params.size(); ++k)
        expect_type(infer_type(expr.operands[k], scope, sigs), sig.params[k], expr.operands[k].loc,
                    "argument " + std::to_string(k + 1) + " of '" + expr.name + "'");
      return sig.return_type;
    }
    case ExprKind::ArrayLit:
      for (const auto& e : expr.operands)
        expect_type(infer_type(e, scope, sigs), MiniType::Int, e.loc, "array element");
      return MiniType::IntArray;
  }
  detail::type_error(expr.loc, "unknown expression");
}

namespace detail {

inline bool block_terminates(const std::vector<Stmt>& block) {
  return std::any_of(block.begin(), block.end(), [](const Stmt& s) {
    if (s.kind == StmtKind::Return) return true;
    return s.kind == StmtKind::If && !s.else_body.empty() && block_terminates(s.body) &&
           block_terminates(s.else_body);
  });
}

inline void check_block(const std::vector<Stmt>& block, Scope& scope, const Signatures& sigs,
                        MiniType return_type);

inline void check_stmt(const Stmt& stmt, Scope& scope, const Signatures& sigs,
                       MiniType return_type) {
  switch (stmt.kind) {
    case StmtKind::Let: {
      const MiniType t = infer_type(stmt.exprs[0], scope, sigs);
      if (!scope.declare(stmt.name, t))
        throw SourceError(SourceErrorKind::Duplicate, stmt.loc,
                          "variable '" + stmt.name + "' is already declared");
      break;
    }
    case StmtKind::Assign: {
      auto t = scope.lookup(stmt.name);
      if (!t) type_error(stmt.loc, "assignment to undeclared variable '" + stmt.name + "'");
      expect_type(infer_type(stmt.exprs[0], scope, sigs), *t, stmt.exprs[0].loc,
                  "assignment to '" + stmt.name + "'");
      break;
    }
    case StmtKind::IndexAssign: {
      auto t = scope.lookup(stmt.name);
      if (!t) type_error(stmt.loc, "assignment to undeclared variable '" + stmt.name + "'");
      expect_type(*t, MiniType::IntArray, stmt.loc, "indexed assignment");
      expect_type(infer_type(stmt.exprs[0], scope, sigs), MiniType::Int, stmt.exprs[0].loc,
                  "array index");
      expect_type(infer_type(stmt.exprs[1], scope, sigs), MiniType::Int, stmt.exprs[1].loc,
                  "array element");
      break;
    }
    case StmtKind::If:
      expect_type(infer_type(stmt.exprs[0], scope, sigs), MiniType::Bool, stmt.exprs[0].loc,
                  "if condition");
      check_block(stmt.body, scope, sigs, return_type);
      check_block(stmt.else_body, scope, sigs, return_type);
      break;
    case StmtKind::While:
      expect_type(infer_type(stmt.exprs[0], scope, sigs), MiniType::Bool, stmt.exprs[0].loc,
                  "while condition");
      check_block(stmt.body, scope, sigs, return_type);
      break;
    case StmtKind::Return:
      expect_type(infer_type(stmt.exprs[0], scope, sigs), return_type, stmt.exprs[0].loc, "return");
      break;
    case StmtKind::ExprStmt:
      infer_type(stmt.exprs[0], scope, sigs);
      break;
  }
}

inline void check_block(const std::vector<Stmt>& block, Scope& scope, const Signatures& sigs,
                        MiniType return_type) {
  scope.push();
  for (const auto& stmt : block) check_stmt(stmt, scope, sigs, return_type);
  scope.pop();
}

}  // namespace detail

/// Checks names, types, and the return-on-every-path rule; throws SourceError.
inline void check(const SourceUnit& unit) {
  for (std::size_t i = 0; i < unit.functions.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (unit.functions[i].name == unit.functions[j].name)
        throw SourceError(SourceErrorKind::Duplicate, unit.functions[i].loc,
                          "function '" + unit.functions[i].name + "' is already defined");

  const Signatures sigs = collect_signatures(unit);
  for (const auto& fn : unit.functions) {
    Scope scope;
    for (const auto& p : fn.params)
      if (!scope.declare(p.name, p.type))
        throw SourceError(SourceErrorKind::Duplicate, fn.loc,
                          "parameter '" + p.name + "' is repeated in '" + fn.name + "'");
    detail::check_block(fn.body, scope, sigs, fn.return_type);
    if (!detail::block_terminates(fn.body))
      throw SourceError(SourceErrorKind::MissingReturn, fn.loc,
                        "missing return in function '" + fn.name + "'");
  }
}

inline bool type_checks(const SourceUnit& unit) noexcept {
  try {
    check(unit);
    return true;
  } catch (...) {
    return false;
  }
}

/// Scope chain (parameters plus dominating lets) in effect just before the
/// statement at `path`. Returns nullopt when the path does not resolve.
inline std::optional<Scope> scope_at(const SourceUnit& unit, const StmtPath& path,
                                     const Signatures& sigs) {
  if (!resolve(unit, path)) return std::nullopt;
  const auto& fn = unit.functions[path.function_index];
  Scope scope;
  for (const auto& p : fn.params) scope.declare(p.name, p.type);
  const std::vector<Stmt>* block = &fn.body;
  for (std::size_t k = 0; k < path.steps.size(); ++k) {
    scope.push();
    const auto& step = path.steps[k];
    for (std::size_t i = 0; i < step.index; ++i) {
      const auto& s = (*block)[i];
      if (s.kind != StmtKind::Let) continue;
      try {
        scope.declare(s.name, infer_type(s.exprs[0], scope, sigs));
      } catch (const SourceError&) {
      }
    }
    if (k + 1 < path.steps.size()) {
      const auto& stmt = (*block)[step.index];
      block = path.steps[k + 1].role == BlockRole::Else ? &stmt.else_body : &stmt.body;
    }
  }
  return scope;
}

inline std::optional<Scope> scope_at(const SourceUnit& unit, const StmtPath& path) {
  return scope_at(unit, path, collect_signatures(unit));
}

}  // namespace minirepair::minilang
