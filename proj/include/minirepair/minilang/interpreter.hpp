#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "minirepair/minilang/ast.hpp"

namespace minirepair::minilang {

enum class RuntimeErrorKind {
  DivisionByZero,
  ModuloByZero,
  IntegerOverflow,
  IndexOutOfBounds,
  UnboundVariable,
  CallDepthExceeded,
};

inline std::string_view to_string(RuntimeErrorKind kind) {
  switch (kind) {
    case RuntimeErrorKind::DivisionByZero: return "division-by-zero";
    case RuntimeErrorKind::ModuloByZero: return "modulo-by-zero";
    case RuntimeErrorKind::IntegerOverflow: return "integer-overflow";
    case RuntimeErrorKind::IndexOutOfBounds: return "index-out-of-bounds";
    case RuntimeErrorKind::UnboundVariable: return "unbound-variable";
    case RuntimeErrorKind::CallDepthExceeded: return "call-depth-exceeded";
  }
  return "runtime-error";
}

struct Returned {
  Value value;
  friend bool operator==(const Returned&, const Returned&) = default;
};

struct RuntimeError {
  RuntimeErrorKind kind = RuntimeErrorKind::UnboundVariable;
  StatementId at;
  friend bool operator==(const RuntimeError&, const RuntimeError&) = default;
};

struct BudgetExhausted {
  friend bool operator==(const BudgetExhausted&, const BudgetExhausted&) = default;
};

using Outcome = std::variant<Returned, RuntimeError, BudgetExhausted>;

struct ExecutionResult {
  Outcome outcome;
  std::set<StatementId> executed;
  std::size_t steps_used = 0;

  const Value* returned_value() const {
    const auto* r = std::get_if<Returned>(&outcome);
    return r ? &r->value : nullptr;
  }

  friend bool operator==(const ExecutionResult&, const ExecutionResult&) = default;
};

inline std::string describe(const Outcome& outcome) {
  if (const auto* r = std::get_if<Returned>(&outcome)) return "returned " + format_value(r->value);
  if (const auto* e = std::get_if<RuntimeError>(&outcome))
    return std::string(to_string(e->kind)) + " at " + e->at.str();
  return "step budget exhausted";
}

/// Entry-point invocation: function name plus argument values.
struct Invocation {
  std::string function;
  std::vector<Value> args;
  friend bool operator==(const Invocation&, const Invocation&) = default;
};

inline constexpr std::size_t kDefaultStepBudget = 100000;
inline constexpr std::size_t kMaxCallDepth = 1000;

namespace detail {

struct Fault {
  RuntimeErrorKind kind;
  std::optional<StatementId> at;
};

struct OutOfBudget {};

class Machine {
 public:
  Machine(const SourceUnit& unit, std::size_t budget) : unit_(unit), budget_(budget) {
    coverage_.resize(unit.functions.size());
    for (std::size_t f = 0; f < unit.functions.size(); ++f) {
      functions_.emplace(unit.functions[f].name, f);
      coverage_[f].assign(count_statements(unit.functions[f].body), 0);
    }
  }

  ExecutionResult run(const Invocation& call) {
    ExecutionResult result;
    auto it = functions_.find(call.function);
    if (it == functions_.end())
      throw std::invalid_argument("unknown function '" + call.function + "'");
    const auto& fn = unit_.functions[it->second];
    if (fn.params.size() != call.args.size())
      throw std::invalid_argument("function '" + call.function + "' takes " +
                                  std::to_string(fn.params.size()) + " arguments");
    for (std::size_t k = 0; k < call.args.size(); ++k)
      if (type_of(call.args[k]) != fn.params[k].type)
        throw std::invalid_argument("argument " + std::to_string(k + 1) + " of '" +
                                    call.function + "' has the wrong type");
    try {
      result.outcome = Returned{invoke(it->second, call.args)};
    } catch (const Fault& fault) {
      result.outcome = RuntimeError{fault.kind, fault.at.value_or(StatementId{})};
    } catch (const OutOfBudget&) {
      result.outcome = BudgetExhausted{};
    }
    for (std::size_t f = 0; f < coverage_.size(); ++f)
      for (std::size_t i = 0; i < coverage_[f].size(); ++i)
        if (coverage_[f][i]) result.executed.insert(StatementId{unit_.functions[f].name, f, i});
    result.steps_used = steps_;
    return result;
  }

 private:
  using Frame = std::vector<std::pair<const std::string*, Value>>;

  Value invoke(std::size_t fn_index, std::vector<Value> args) {
    if (depth_ >= kMaxCallDepth) throw Fault{RuntimeErrorKind::CallDepthExceeded, std::nullopt};
    const auto& fn = unit_.functions[fn_index];
    Frame frame;
    frame.reserve(fn.params.size() + 8);
    for (std::size_t k = 0; k < args.size(); ++k) frame.emplace_back(&fn.params[k].name, std::move(args[k]));
    ++depth_;
    std::optional<Value> ret = exec_block(fn.body, frame);
    --depth_;
    // Unreachable for checked programs: every path ends in a return.
    if (!ret) throw Fault{RuntimeErrorKind::UnboundVariable, std::nullopt};
    return std::move(*ret);
  }

  void tick(const Stmt& stmt) {
    if (steps_ >= budget_) throw OutOfBudget{};
    ++steps_;
    coverage_[stmt.id.function_index][stmt.id.index] = 1;
  }

  std::optional<Value> exec_block(const std::vector<Stmt>& block, Frame& frame) {
    const std::size_t mark = frame.size();
    for (const auto& stmt : block) {
      std::optional<Value> ret = exec_stmt(stmt, frame);
      if (ret) {
        frame.resize(mark);
        return ret;
      }
    }
    frame.resize(mark);
    return std::nullopt;
  }

  std::optional<Value> exec_stmt(const Stmt& stmt, Frame& frame) {
    tick(stmt);
    try {
      switch (stmt.kind) {
        case StmtKind::Let:
          frame.emplace_back(&stmt.name, eval(stmt.exprs[0], frame));
          return std::nullopt;
        case StmtKind::Assign: {
          Value v = eval(stmt.exprs[0], frame);
          lookup(stmt.name, frame) = std::move(v);
          return std::nullopt;
        }
        case StmtKind::IndexAssign: {
          const std::int64_t idx = as_int(eval(stmt.exprs[0], frame));
          const std::int64_t v = as_int(eval(stmt.exprs[1], frame));
          auto& array = std::get<IntArray>(lookup(stmt.name, frame));
          check_bounds(idx, array);
          array[static_cast<std::size_t>(idx)] = v;
          return std::nullopt;
        }
        case StmtKind::If:
          if (std::get<bool>(eval(stmt.exprs[0], frame))) return exec_block(stmt.body, frame);
          return exec_block(stmt.else_body, frame);
        case StmtKind::While: {
          bool first = true;
          for (;;) {
            if (!first) tick(stmt);
            first = false;
            if (!std::get<bool>(eval(stmt.exprs[0], frame))) return std::nullopt;
            if (auto ret = exec_block(stmt.body, frame)) return ret;
          }
        }
        case StmtKind::Return:
          return eval(stmt.exprs[0], frame);
        case StmtKind::ExprStmt:
          eval(stmt.exprs[0], frame);
          return std::nullopt;
      }
    } catch (Fault& fault) {
      if (!fault.at) fault.at = stmt.id;
      throw;
    }
    return std::nullopt;
  }

  static Value& lookup(const std::string& name, Frame& frame) {
    for (auto it = frame.rbegin(); it != frame.rend(); ++it)
      if (*it->first == name) return it->second;
    throw Fault{RuntimeErrorKind::UnboundVariable, std::nullopt};
  }

  static std::int64_t as_int(const Value& v) { return std::get<std::int64_t>(v); }

  static void check_bounds(std::int64_t idx, const IntArray& array) {
    if (idx < 0 || static_cast<std::uint64_t>(idx) >= array.size())
      throw Fault{RuntimeErrorKind::IndexOutOfBounds, std::nullopt};
  }

  static std::int64_t arith(BinaryOp op, std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    switch (op) {
      case BinaryOp::Add:
        if (__builtin_add_overflow(a, b, &r)) break;
        return r;
      case BinaryOp::Sub:
        if (__builtin_sub_overflow(a, b, &r)) break;
        return r;
      case BinaryOp::Mul:
        if (__builtin_mul_overflow(a, b, &r)) break;
        return r;
      case BinaryOp::Div:
        if (b == 0) throw Fault{RuntimeErrorKind::DivisionByZero, std::nullopt};
        if (a == std::numeric_limits<std::int64_t>::min() && b == -1) break;
        return a / b;
      case BinaryOp::Mod:
        if (b == 0) throw Fault{RuntimeErrorKind::ModuloByZero, std::nullopt};
        if (a == std::numeric_limits<std::int64_t>::min() && b == -1) break;
        return a % b;
      default:
        return 0;
    }
    throw Fault{RuntimeErrorKind::IntegerOverflow, std::nullopt};
  }

  Value eval(const Expr& e, Frame& frame) {
    switch (e.kind) {
      case ExprKind::IntLit:
        return e.int_value;
      case ExprKind::BoolLit:
        return e.bool_value;
      case ExprKind::Var:
        return lookup(e.name, frame);
      case ExprKind::Binary: {
        const BinaryOp op = e.binary_op;
        if (op == BinaryOp::And) {
          if (!std::get<bool>(eval(e.operands[0], frame))) return false;
          return std::get<bool>(eval(e.operands[1], frame));
        }
        if (op == BinaryOp::Or) {
          if (std::get<bool>(eval(e.operands[0], frame))) return true;
          return std::get<bool>(eval(e.operands[1], frame));
        }
        Value lhs = eval(e.operands[0], frame);
        Value rhs = eval(e.operands[1], frame);
        if (op == BinaryOp::Eq) return lhs == rhs;
        if (op == BinaryOp::Ne) return lhs != rhs;
        const std::int64_t a = as_int(lhs);
        const std::int64_t b = as_int(rhs);
        switch (op) {
          case BinaryOp::Lt: return a < b;
          case BinaryOp::Le: return a <= b;
          case BinaryOp::Gt: return a > b;
          case BinaryOp::Ge: return a >= b;
          default: return arith(op, a, b);
        }
      }
      case ExprKind::Unary: {
        Value v = eval(e.operands[0], frame);
        if (e.unary_op == UnaryOp::Not) return !std::get<bool>(v);
        std::int64_t r = 0;
        if (__builtin_sub_overflow(std::int64_t{0}, as_int(v), &r))
          throw Fault{RuntimeErrorKind::IntegerOverflow, std::nullopt};
        return r;
      }
      case ExprKind::Index: {
        const std::int64_t idx = as_int(eval(e.operands[0], frame));
        const auto& array = std::get<IntArray>(lookup(e.name, frame));
        check_bounds(idx, array);
        return array[static_cast<std::size_t>(idx)];
      }
      case ExprKind::Len: {
        if (e.operands[0].kind == ExprKind::Var)
          return static_cast<std::int64_t>(
              std::get<IntArray>(lookup(e.operands[0].name, frame)).size());
        return static_cast<std::int64_t>(std::get<IntArray>(eval(e.operands[0], frame)).size());
      }
      case ExprKind::Call: {
        auto it = functions_.find(e.name);
        if (it == functions_.end()) throw Fault{RuntimeErrorKind::UnboundVariable, std::nullopt};
        std::vector<Value> args;
        args.reserve(e.operands.size());
        for (const auto& a : e.operands) args.push_back(eval(a, frame));
        return invoke(it->second, std::move(args));
      }
      case ExprKind::ArrayLit: {
        IntArray out;
        out.reserve(e.operands.size());
        for (const auto& a : e.operands) out.push_back(as_int(eval(a, frame)));
        return out;
      }
    }
    return std::int64_t{0};
  }

  const SourceUnit& unit_;
  std::size_t budget_;
  std::size_t steps_ = 0;
  std::size_t depth_ = 0;
  std::unordered_map<std::string, std::size_t> functions_;
  std::vector<std::vector<char>> coverage_;
};

}  // namespace detail

/// Runs `call` on a checked unit. Deterministic; each statement evaluation
/// (and each re-evaluation of a loop condition) costs one step. Throws
/// std::invalid_argument when the call does not match a function signature.
inline ExecutionResult interpret(const SourceUnit& unit, const Invocation& call,
                                 std::size_t step_budget = kDefaultStepBudget) {
  if (step_budget == 0) throw std::invalid_argument("step budget must be at least 1");
  return detail::Machine(unit, step_budget).run(call);
}

}  // namespace minirepair::minilang
