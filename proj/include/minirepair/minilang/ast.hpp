#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace minirepair::minilang {

enum class MiniType { Int, Bool, IntArray };

inline std::string_view to_string(MiniType type) {
  switch (type) {
    case MiniType::Int:
      return "int";
    case MiniType::Bool:
      return "bool";
    case MiniType::IntArray:
      return "int[]";
  }
  return "?";
}

using IntArray = std::vector<std::int64_t>;
using Value = std::variant<std::int64_t, bool, IntArray>;

inline MiniType type_of(const Value& value) {
  switch (value.index()) {
    case 0:
      return MiniType::Int;
    case 1:
      return MiniType::Bool;
    default:
      return MiniType::IntArray;
  }
}

inline std::string format_value(const Value& value) {
  if (const auto* i = std::get_if<std::int64_t>(&value)) return std::to_string(*i);
  if (const auto* b = std::get_if<bool>(&value)) return *b ? "true" : "false";
  std::string out = "[";
  const auto& elements = std::get<IntArray>(value);
  for (std::size_t k = 0; k < elements.size(); ++k) {
    if (k > 0) out += ", ";
    out += std::to_string(elements[k]);
  }
  return out + "]";
}

struct SourceLoc {
  int line = 0;
  int column = 0;
};

/// Identifies a statement by its function and its pre-order position in that
/// function's body. Ordering follows function declaration order, then index.
struct StatementId {
  std::string function;
  std::size_t function_index = 0;
  std::size_t index = 0;

  friend bool operator==(const StatementId& a, const StatementId& b) {
    return a.function_index == b.function_index && a.index == b.index &&
           a.function == b.function;
  }
  friend std::strong_ordering operator<=>(const StatementId& a, const StatementId& b) {
    if (auto c = a.function_index <=> b.function_index; c != 0) return c;
    if (auto c = a.index <=> b.index; c != 0) return c;
    return a.function <=> b.function;
  }

  std::string str() const { return function + ":" + std::to_string(index); }
};

enum class BinaryOp { Add, Sub, Mul, Div, Mod, Lt, Le, Gt, Ge, Eq, Ne, And, Or };
enum class UnaryOp { Neg, Not };

inline std::string_view to_string(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Mod: return "%";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::And: return "&&";
    case BinaryOp::Or: return "||";
  }
  return "?";
}

inline std::string_view to_string(UnaryOp op) { return op == UnaryOp::Neg ? "-" : "!"; }

inline bool is_arithmetic(BinaryOp op) {
  return op == BinaryOp::Add || op == BinaryOp::Sub || op == BinaryOp::Mul ||
         op == BinaryOp::Div || op == BinaryOp::Mod;
}
inline bool is_relational(BinaryOp op) {
  return op == BinaryOp::Lt || op == BinaryOp::Le || op == BinaryOp::Gt ||
         op == BinaryOp::Ge || op == BinaryOp::Eq || op == BinaryOp::Ne;
}
inline bool is_logical(BinaryOp op) { return op == BinaryOp::And || op == BinaryOp::Or; }

inline constexpr BinaryOp kArithmeticOps[] = {BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul,
                                              BinaryOp::Div, BinaryOp::Mod};
inline constexpr BinaryOp kRelationalOps[] = {BinaryOp::Lt, BinaryOp::Le, BinaryOp::Gt,
                                              BinaryOp::Ge, BinaryOp::Eq, BinaryOp::Ne};

enum class ExprKind { IntLit, BoolLit, Var, Binary, Unary, Index, Len, Call, ArrayLit };

/// Expression node. `operands` holds the children:
///   Binary {lhs, rhs} · Unary {operand} · Index {index} · Len {operand} ·
///   Call {args...} · ArrayLit {elements...}.
/// `name` is the variable for Var/Index and the callee for Call.
struct Expr {
  ExprKind kind = ExprKind::IntLit;
  std::int64_t int_value = 0;
  bool bool_value = false;
  std::string name;
  BinaryOp binary_op = BinaryOp::Add;
  UnaryOp unary_op = UnaryOp::Neg;
  std::vector<Expr> operands;
  SourceLoc loc;

  static Expr int_lit(std::int64_t v) {
    Expr e;
    e.kind = ExprKind::IntLit;
    e.int_value = v;
    return e;
  }
  static Expr bool_lit(bool v) {
    Expr e;
    e.kind = ExprKind::BoolLit;
    e.bool_value = v;
    return e;
  }
  static Expr var(std::string name) {
    Expr e;
    e.kind = ExprKind::Var;
    e.name = std::move(name);
    return e;
  }
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs) {
    Expr e;
    e.kind = ExprKind::Binary;
    e.binary_op = op;
    e.operands.push_back(std::move(lhs));
    e.operands.push_back(std::move(rhs));
    return e;
  }
  static Expr unary(UnaryOp op, Expr operand) {
    Expr e;
    e.kind = ExprKind::Unary;
    e.unary_op = op;
    e.operands.push_back(std::move(operand));
    return e;
  }
  static Expr index(std::string array, Expr idx) {
    Expr e;
    e.kind = ExprKind::Index;
    e.name = std::move(array);
    e.operands.push_back(std::move(idx));
    return e;
  }
  static Expr len(Expr operand) {
    Expr e;
    e.kind = ExprKind::Len;
    e.operands.push_back(std::move(operand));
    return e;
  }
  static Expr call(std::string callee, std::vector<Expr> args) {
    Expr e;
    e.kind = ExprKind::Call;
    e.name = std::move(callee);
    e.operands = std::move(args);
    return e;
  }
  static Expr array_lit(std::vector<Expr> elements) {
    Expr e;
    e.kind = ExprKind::ArrayLit;
    e.operands = std::move(elements);
    return e;
  }

  // Structural equality; source locations are ignored.
  friend bool operator==(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case ExprKind::IntLit:
        return a.int_value == b.int_value;
      case ExprKind::BoolLit:
        return a.bool_value == b.bool_value;
      case ExprKind::Var:
        return a.name == b.name;
      case ExprKind::Binary:
        return a.binary_op == b.binary_op && a.operands == b.operands;
      case ExprKind::Unary:
        return a.unary_op == b.unary_op && a.operands == b.operands;
      case ExprKind::Index:
      case ExprKind::Call:
        return a.name == b.name && a.operands == b.operands;
      case ExprKind::Len:
      case ExprKind::ArrayLit:
        return a.operands == b.operands;
    }
    return false;
  }
};

enum class StmtKind { Let, Assign, IndexAssign, If, While, Return, ExprStmt };

/// Statement node. `exprs` holds:
///   Let/Assign {value} · IndexAssign {index, value} · If/While {cond} ·
///   Return {value} · ExprStmt {expr}.
/// `body` is the then-block of If and the loop body of While; `else_body` is
/// the else-block of If (empty means no else).
struct Stmt {
  StmtKind kind = StmtKind::ExprStmt;
  StatementId id;
  std::string name;
  std::vector<Expr> exprs;
  std::vector<Stmt> body;
  std::vector<Stmt> else_body;
  SourceLoc loc;

  static Stmt let(std::string name, Expr value) {
    return make(StmtKind::Let, std::move(name), {std::move(value)});
  }
  static Stmt assign(std::string name, Expr value) {
    return make(StmtKind::Assign, std::move(name), {std::move(value)});
  }
  static Stmt index_assign(std::string name, Expr idx, Expr value) {
    return make(StmtKind::IndexAssign, std::move(name), {std::move(idx), std::move(value)});
  }
  static Stmt if_(Expr cond, std::vector<Stmt> then_block, std::vector<Stmt> else_block = {}) {
    Stmt s = make(StmtKind::If, {}, {std::move(cond)});
    s.body = std::move(then_block);
    s.else_body = std::move(else_block);
    return s;
  }
  static Stmt while_(Expr cond, std::vector<Stmt> block) {
    Stmt s = make(StmtKind::While, {}, {std::move(cond)});
    s.body = std::move(block);
    return s;
  }
  static Stmt return_(Expr value) { return make(StmtKind::Return, {}, {std::move(value)}); }
  static Stmt expr(Expr e) { return make(StmtKind::ExprStmt, {}, {std::move(e)}); }

  friend bool operator==(const Stmt& a, const Stmt& b) {
    return a.kind == b.kind && a.id == b.id && a.name == b.name && a.exprs == b.exprs &&
           a.body == b.body && a.else_body == b.else_body;
  }

 private:
  static Stmt make(StmtKind kind, std::string name, std::vector<Expr> exprs) {
    Stmt s;
    s.kind = kind;
    s.name = std::move(name);
    s.exprs = std::move(exprs);
    return s;
  }
};

struct Param {
  std::string name;
  MiniType type = MiniType::Int;
  friend bool operator==(const Param&, const Param&) = default;
};

struct FunctionDef {
  std::string name;
  std::vector<Param> params;
  MiniType return_type = MiniType::Int;
  std::vector<Stmt> body;
  SourceLoc loc;

  friend bool operator==(const FunctionDef& a, const FunctionDef& b) {
    return a.name == b.name && a.params == b.params && a.return_type == b.return_type &&
           a.body == b.body;
  }
};

struct SourceUnit {
  std::string source_name;
  std::vector<FunctionDef> functions;

  const FunctionDef* find_function(std::string_view name) const {
    for (const auto& fn : functions)
      if (fn.name == name) return &fn;
    return nullptr;
  }

  /// Structural equality over functions (the source label is not compared).
  friend bool operator==(const SourceUnit& a, const SourceUnit& b) {
    return a.functions == b.functions;
  }
};

// ---------------------------------------------------------------------------
// Statement traversal and structural paths.

enum class BlockRole { Body, Then, Else };

struct PathStep {
  BlockRole role = BlockRole::Body;
  std::size_t index = 0;
  friend bool operator==(const PathStep&, const PathStep&) = default;
};

/// Route from a function root to a statement: the first step indexes the
/// function body; each further step descends into an If (Then/Else) or a
/// While (Body).
struct StmtPath {
  std::size_t function_index = 0;
  std::vector<PathStep> steps;
  friend bool operator==(const StmtPath&, const StmtPath&) = default;
};

namespace detail {

inline void number_block(std::vector<Stmt>& block, const std::string& fn, std::size_t fn_index,
                         std::size_t& next) {
  for (auto& stmt : block) {
    stmt.id = StatementId{fn, fn_index, next++};
    number_block(stmt.body, fn, fn_index, next);
    number_block(stmt.else_body, fn, fn_index, next);
  }
}

template <typename Block, typename Visitor>
void walk_block(Block& block, StmtPath& path, BlockRole role, Visitor& visit) {
  for (std::size_t i = 0; i < block.size(); ++i) {
    path.steps.push_back({role, i});
    auto& stmt = block[i];
    visit(stmt, static_cast<const StmtPath&>(path));
    if (stmt.kind == StmtKind::If) {
      walk_block(stmt.body, path, BlockRole::Then, visit);
      walk_block(stmt.else_body, path, BlockRole::Else, visit);
    } else if (stmt.kind == StmtKind::While) {
      walk_block(stmt.body, path, BlockRole::Body, visit);
    }
    path.steps.pop_back();
  }
}

}  // namespace detail

/// Reassigns pre-order StatementIds in every function.
inline void renumber(SourceUnit& unit) {
  for (std::size_t f = 0; f < unit.functions.size(); ++f) {
    std::size_t next = 0;
    detail::number_block(unit.functions[f].body, unit.functions[f].name, f, next);
  }
}

/// Visits every statement in pre-order along with its path.
template <typename Visitor>
void for_each_statement(const SourceUnit& unit, Visitor&& visit) {
  for (std::size_t f = 0; f < unit.functions.size(); ++f) {
    StmtPath path{f, {}};
    detail::walk_block(unit.functions[f].body, path, BlockRole::Body, visit);
  }
}

template <typename Visitor>
void for_each_statement(const FunctionDef& fn, std::size_t function_index, Visitor&& visit) {
  StmtPath path{function_index, {}};
  detail::walk_block(fn.body, path, BlockRole::Body, visit);
}

inline std::size_t count_statements(const std::vector<Stmt>& block) {
  std::size_t n = 0;
  for (const auto& s : block) n += 1 + count_statements(s.body) + count_statements(s.else_body);
  return n;
}

namespace detail {

template <typename UnitT>
auto* resolve_block(UnitT& unit, const StmtPath& path) {
  using BlockPtr = decltype(&unit.functions[0].body);
  if (path.steps.empty() || path.function_index >= unit.functions.size()) return BlockPtr{nullptr};
  BlockPtr block = &unit.functions[path.function_index].body;
  if (path.steps.front().role != BlockRole::Body) return BlockPtr{nullptr};
  for (std::size_t k = 0; k + 1 < path.steps.size(); ++k) {
    const auto& step = path.steps[k];
    if (step.index >= block->size()) return BlockPtr{nullptr};
    auto& stmt = (*block)[step.index];
    const auto next_role = path.steps[k + 1].role;
    if (stmt.kind == StmtKind::If && next_role == BlockRole::Then) {
      block = &stmt.body;
    } else if (stmt.kind == StmtKind::If && next_role == BlockRole::Else) {
      block = &stmt.else_body;
    } else if (stmt.kind == StmtKind::While && next_role == BlockRole::Body) {
      block = &stmt.body;
    } else {
      return BlockPtr{nullptr};
    }
  }
  if (path.steps.back().index >= block->size()) return BlockPtr{nullptr};
  return block;
}

}  // namespace detail

/// The block containing the statement at `path`, or null when the path is stale.
inline const std::vector<Stmt>* resolve_parent_block(const SourceUnit& unit, const StmtPath& path) {
  return detail::resolve_block(unit, path);
}
inline std::vector<Stmt>* resolve_parent_block(SourceUnit& unit, const StmtPath& path) {
  return detail::resolve_block(unit, path);
}

inline const Stmt* resolve(const SourceUnit& unit, const StmtPath& path) {
  const auto* block = resolve_parent_block(unit, path);
  return block ? &(*block)[path.steps.back().index] : nullptr;
}
inline Stmt* resolve(SourceUnit& unit, const StmtPath& path) {
  auto* block = resolve_parent_block(unit, path);
  return block ? &(*block)[path.steps.back().index] : nullptr;
}

inline std::optional<StmtPath> path_of(const SourceUnit& unit, const StatementId& id) {
  std::optional<StmtPath> found;
  if (id.function_index >= unit.functions.size()) return found;
  for_each_statement(unit.functions[id.function_index], id.function_index,
                     [&](const Stmt& stmt, const StmtPath& path) {
                       if (!found && stmt.id == id) found = path;
                     });
  return found;
}

// ---------------------------------------------------------------------------
// Expression sites: pre-order numbering of the expression nodes owned directly
// by a statement (nested blocks excluded).

namespace detail {

template <typename ExprT, typename Visitor>
bool walk_expr(ExprT& expr, std::size_t& counter, Visitor& visit) {
  if (visit(expr, counter++)) return true;
  for (auto& child : expr.operands)
    if (walk_expr(child, counter, visit)) return true;
  return false;
}

}  // namespace detail

/// Calls `visit(expr, site)` for each expression node of `stmt` in pre-order.
/// The visitor returns true to stop.
template <typename StmtT, typename Visitor>
void for_each_site(StmtT& stmt, Visitor&& visit) {
  std::size_t counter = 0;
  for (auto& e : stmt.exprs)
    if (detail::walk_expr(e, counter, visit)) return;
}

template <typename StmtT>
auto* site_at(StmtT& stmt, std::size_t site) {
  using ExprPtr = decltype(&stmt.exprs[0]);
  ExprPtr found = nullptr;
  for_each_site(stmt, [&](auto& e, std::size_t k) {
    if (k == site) {
      found = &e;
      return true;
    }
    return false;
  });
  return found;
}

/// Resets every StatementId in a statement subtree to the default value.
inline void strip_ids(Stmt& stmt) {
  stmt.id = StatementId{};
  for (auto& s : stmt.body) strip_ids(s);
  for (auto& s : stmt.else_body) strip_ids(s);
}

}  // namespace minirepair::minilang
