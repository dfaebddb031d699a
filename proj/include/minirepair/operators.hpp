#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "minirepair/minilang.hpp"
#include "minirepair/random.hpp"

namespace minirepair::operators {

using minilang::BinaryOp;
using minilang::Expr;
using minilang::ExprKind;
using minilang::MiniType;
using minilang::SourceUnit;
using minilang::StatementId;
using minilang::Stmt;
using minilang::StmtKind;
using minilang::StmtPath;

enum class Mode { JGenProg, JPar, JMutRepair };

inline std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::JGenProg: return "jgenprog";
    case Mode::JPar: return "jpar";
    case Mode::JMutRepair: return "jmutrepair";
  }
  return "?";
}

inline Mode parse_mode(std::string_view text) {
  if (text == "jgenprog") return Mode::JGenProg;
  if (text == "jpar") return Mode::JPar;
  if (text == "jmutrepair") return Mode::JMutRepair;
  throw std::invalid_argument("unknown mode '" + std::string(text) + "'");
}

enum class PatchKind {
  InsertBefore,
  Replace,
  Remove,
  TemplateGuardArrayAccess,
  TemplateMutateConditionTerm,
  TemplateSwapCallArg,
  MutRelationalOp,
  MutLogicalOp,
  MutArithmeticOp,
  MutNegateCondition,
};

inline std::string_view to_string(PatchKind k) {
  switch (k) {
    case PatchKind::InsertBefore: return "InsertBefore";
    case PatchKind::Replace: return "Replace";
    case PatchKind::Remove: return "Remove";
    case PatchKind::TemplateGuardArrayAccess: return "TemplateGuardArrayAccess";
    case PatchKind::TemplateMutateConditionTerm: return "TemplateMutateConditionTerm";
    case PatchKind::TemplateSwapCallArg: return "TemplateSwapCallArg";
    case PatchKind::MutRelationalOp: return "MutRelationalOp";
    case PatchKind::MutLogicalOp: return "MutLogicalOp";
    case PatchKind::MutArithmeticOp: return "MutArithmeticOp";
    case PatchKind::MutNegateCondition: return "MutNegateCondition";
  }
  return "?";
}

inline Mode mode_of(PatchKind k) {
  switch (k) {
    case PatchKind::InsertBefore:
    case PatchKind::Replace:
    case PatchKind::Remove:
      return Mode::JGenProg;
    case PatchKind::TemplateGuardArrayAccess:
    case PatchKind::TemplateMutateConditionTerm:
    case PatchKind::TemplateSwapCallArg:
      return Mode::JPar;
    default:
      return Mode::JMutRepair;
  }
}

struct ModificationPoint {
  StatementId statement;
  StmtPath path;
  double suspiciousness = 0.0;
  friend bool operator==(const ModificationPoint&, const ModificationPoint&) = default;
};

using FreeVar = std::pair<std::string, MiniType>;

/// Reusable statement harvested from the program, ids stripped.
struct Ingredient {
  Stmt stmt;
  StatementId origin;
  std::set<FreeVar> free_vars;
  friend bool operator==(const Ingredient&, const Ingredient&) = default;
};

enum class IngredientScope { Local, Global };

inline std::string_view to_string(IngredientScope s) {
  return s == IngredientScope::Local ? "local" : "global";
}

inline IngredientScope parse_scope(std::string_view text) {
  if (text == "local") return IngredientScope::Local;
  if (text == "global") return IngredientScope::Global;
  throw std::invalid_argument("unknown ingredient scope '" + std::string(text) + "'");
}

struct IngredientPool {
  IngredientScope scope = IngredientScope::Local;
  std::vector<Ingredient> entries;
};

enum class ConditionAction { Conjoin, Disjoin, RemoveLeft, RemoveRight };

struct ConditionEdit {
  ConditionAction action = ConditionAction::Conjoin;
  std::string lhs;
  std::string rhs;
  BinaryOp comparison = BinaryOp::Lt;
  friend bool operator==(const ConditionEdit&, const ConditionEdit&) = default;
};

struct ArgumentSwap {
  std::size_t argument = 0;
  std::string variable;
  friend bool operator==(const ArgumentSwap&, const ArgumentSwap&) = default;
};

/// Site value naming the target of an `a[i] = v` statement for the guard template.
inline constexpr std::size_t kAssignTargetSite = std::numeric_limits<std::size_t>::max();

/// One transformation at a modification point. Which payload fields are used
/// depends on `kind`: `ingredient` for InsertBefore/Replace, `site` for the
/// expression-level operators, `replacement` for relational/arithmetic
/// mutations, and `condition_edit`/`argument_swap` for templates once their
/// random parameters have been drawn.
struct PatchOp {
  PatchKind kind = PatchKind::Remove;
  ModificationPoint point;
  std::optional<Ingredient> ingredient;
  std::size_t site = 0;
  std::optional<BinaryOp> replacement;
  std::optional<ConditionEdit> condition_edit;
  std::optional<ArgumentSwap> argument_swap;
  friend bool operator==(const PatchOp&, const PatchOp&) = default;
};

enum class SkipReason { StalePoint, ScopeViolation, TypeCheckFailed, NotApplicable };

inline std::string_view to_string(SkipReason r) {
  switch (r) {
    case SkipReason::StalePoint: return "stale-point";
    case SkipReason::ScopeViolation: return "scope-violation";
    case SkipReason::TypeCheckFailed: return "type-check-failed";
    case SkipReason::NotApplicable: return "not-applicable";
  }
  return "?";
}

/// Child program plus the fully resolved op, or the reason the op was skipped.
class ApplyResult {
 public:
  static ApplyResult success(SourceUnit child, PatchOp resolved) {
    ApplyResult r;
    r.child_ = std::move(child);
    r.op_ = std::move(resolved);
    return r;
  }
  static ApplyResult skip(SkipReason reason) {
    ApplyResult r;
    r.reason_ = reason;
    return r;
  }

  explicit operator bool() const { return child_.has_value(); }
  SourceUnit& child() { return *child_; }
  const SourceUnit& child() const { return *child_; }
  const PatchOp& op() const { return *op_; }
  SkipReason reason() const { return reason_; }

 private:
  std::optional<SourceUnit> child_;
  std::optional<PatchOp> op_;
  SkipReason reason_ = SkipReason::NotApplicable;
};

// ---------------------------------------------------------------------------
// Ingredients.

namespace detail {

inline void uses_in_expr(const Expr& e, const std::set<std::string>& bound,
                         std::set<std::string>& free) {
  if ((e.kind == ExprKind::Var || e.kind == ExprKind::Index) && !bound.contains(e.name))
    free.insert(e.name);
  for (const auto& c : e.operands) uses_in_expr(c, bound, free);
}

inline void uses_in_block(const std::vector<Stmt>& block, std::set<std::string> bound,
                          std::set<std::string>& free);

// Adds the free names of `s` to `free`; a Let adds its name to `bound`.
inline void uses_in_stmt(const Stmt& s, std::set<std::string>& bound, std::set<std::string>& free) {
  for (const auto& e : s.exprs) uses_in_expr(e, bound, free);
  switch (s.kind) {
    case StmtKind::Let:
      bound.insert(s.name);
      break;
    case StmtKind::Assign:
    case StmtKind::IndexAssign:
      if (!bound.contains(s.name)) free.insert(s.name);
      break;
    case StmtKind::If:
      uses_in_block(s.body, bound, free);
      uses_in_block(s.else_body, bound, free);
      break;
    case StmtKind::While:
      uses_in_block(s.body, bound, free);
      break;
    default:
      break;
  }
}

inline void uses_in_block(const std::vector<Stmt>& block, std::set<std::string> bound,
                          std::set<std::string>& free) {
  for (const auto& s : block) uses_in_stmt(s, bound, free);
}

}  // namespace detail

/// Names read or written by `stmt` that it does not bind itself.
inline std::set<std::string> free_names(const Stmt& stmt) {
  std::set<std::string> bound;
  std::set<std::string> free;
  detail::uses_in_stmt(stmt, bound, free);
  return free;
}

/// Every statement in scope except the one at `point`, id-stripped and
/// deduplicated, in pre-order of first occurrence.
inline IngredientPool harvest_ingredients(const SourceUnit& unit, const ModificationPoint& point,
                                          IngredientScope scope) {
  IngredientPool pool;
  pool.scope = scope;
  const auto sigs = minilang::collect_signatures(unit);
  minilang::for_each_statement(unit, [&](const Stmt& stmt, const StmtPath& path) {
    if (scope == IngredientScope::Local && path.function_index != point.path.function_index)
      return;
    if (path == point.path) return;
    Ingredient ing;
    ing.stmt = stmt;
    minilang::strip_ids(ing.stmt);
    if (std::any_of(pool.entries.begin(), pool.entries.end(),
                    [&](const Ingredient& e) { return e.stmt == ing.stmt; }))
      return;
    ing.origin = stmt.id;
    const auto origin_scope = minilang::scope_at(unit, path, sigs);
    for (const auto& name : free_names(stmt)) {
      if (auto t = origin_scope ? origin_scope->lookup(name) : std::nullopt)
        ing.free_vars.emplace(name, *t);
    }
    pool.entries.push_back(std::move(ing));
  });
  return pool;
}

/// True iff every free variable of the ingredient is visible with the same
/// type just before the statement at `point`.
inline bool check_scope(const Ingredient& ingredient, const ModificationPoint& point,
                        const SourceUnit& unit) {
  const auto scope = minilang::scope_at(unit, point.path);
  if (!scope) return false;
  // A free name the origin could not type is never safe to move.
  if (free_names(ingredient.stmt).size() != ingredient.free_vars.size()) return false;
  return std::all_of(ingredient.free_vars.begin(), ingredient.free_vars.end(),
                     [&](const FreeVar& v) { return scope->lookup(v.first) == v.second; });
}

namespace detail {

inline ApplyResult finish(SourceUnit child, PatchOp resolved) {
  minilang::renumber(child);
  if (!minilang::type_checks(child)) return ApplyResult::skip(SkipReason::TypeCheckFailed);
  return ApplyResult::success(std::move(child), std::move(resolved));
}

inline std::vector<Stmt>* target_block(SourceUnit& unit, const PatchOp& op) {
  return minilang::resolve_parent_block(unit, op.point.path);
}

inline std::size_t target_index(const PatchOp& op) { return op.point.path.steps.back().index; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Statement-level operators: insert before, replace, remove.

inline ApplyResult apply_genprog(const SourceUnit& parent, const PatchOp& op) {
  if (mode_of(op.kind) != Mode::JGenProg) return ApplyResult::skip(SkipReason::NotApplicable);
  SourceUnit child = parent;
  auto* block = detail::target_block(child, op);
  if (!block) return ApplyResult::skip(SkipReason::StalePoint);
  const std::size_t index = detail::target_index(op);

  if (op.kind == PatchKind::Remove) {
    block->erase(block->begin() + static_cast<std::ptrdiff_t>(index));
    return detail::finish(std::move(child), op);
  }
  if (!op.ingredient) return ApplyResult::skip(SkipReason::NotApplicable);
  if (op.kind == PatchKind::InsertBefore && op.ingredient->stmt.kind == StmtKind::Return)
    return ApplyResult::skip(SkipReason::NotApplicable);
  if (!check_scope(*op.ingredient, op.point, parent))
    return ApplyResult::skip(SkipReason::ScopeViolation);
  if (op.kind == PatchKind::InsertBefore)
    block->insert(block->begin() + static_cast<std::ptrdiff_t>(index), op.ingredient->stmt);
  else
    (*block)[index] = op.ingredient->stmt;
  return detail::finish(std::move(child), op);
}

// ---------------------------------------------------------------------------
// Template operators.

namespace detail {

inline std::vector<std::string> int_variables(const minilang::Scope& scope) {
  std::vector<std::string> out;
  for (const auto& [name, type] : scope.all())
    if (type == MiniType::Int) out.push_back(name);
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_logical_node(const Expr& e) {
  return e.kind == ExprKind::Binary && minilang::is_logical(e.binary_op);
}

inline std::vector<ConditionAction> condition_actions(const Stmt& stmt,
                                                      const minilang::Scope& scope) {
  std::vector<ConditionAction> actions;
  if (int_variables(scope).size() >= 2) {
    actions.push_back(ConditionAction::Conjoin);
    actions.push_back(ConditionAction::Disjoin);
  }
  if (is_logical_node(stmt.exprs[0])) {
    actions.push_back(ConditionAction::RemoveLeft);
    actions.push_back(ConditionAction::RemoveRight);
  }
  return actions;
}

inline std::vector<ArgumentSwap> swap_candidates(const Expr& call, const minilang::Scope& scope,
                                                 const minilang::Signatures& sigs) {
  std::vector<ArgumentSwap> out;
  auto vars = scope.all();
  std::sort(vars.begin(), vars.end());
  for (std::size_t j = 0; j < call.operands.size(); ++j) {
    std::optional<MiniType> arg_type;
    try {
      arg_type = minilang::infer_type(call.operands[j], scope, sigs);
    } catch (const minilang::SourceError&) {
      continue;
    }
    for (const auto& [name, type] : vars) {
      if (type != *arg_type) continue;
      const auto& arg = call.operands[j];
      if (arg.kind == ExprKind::Var && arg.name == name) continue;
      out.push_back({j, name});
    }
  }
  return out;
}

inline Expr guard_condition(const std::string& array, const Expr& index) {
  return Expr::binary(
      BinaryOp::And, Expr::binary(BinaryOp::Ge, index, Expr::int_lit(0)),
      Expr::binary(BinaryOp::Lt, index, Expr::len(Expr::var(array))));
}

}  // namespace detail

/// Applies a template op. Random parameters not already present in `op` are
/// drawn from `rng`; the returned op carries them so it replays exactly.
inline ApplyResult apply_par_template(const SourceUnit& parent, const PatchOp& op, Rng& rng) {
  if (mode_of(op.kind) != Mode::JPar) return ApplyResult::skip(SkipReason::NotApplicable);
  SourceUnit child = parent;
  auto* block = detail::target_block(child, op);
  if (!block) return ApplyResult::skip(SkipReason::StalePoint);
  const std::size_t index = detail::target_index(op);
  Stmt& stmt = (*block)[index];
  PatchOp resolved = op;

  switch (op.kind) {
    case PatchKind::TemplateGuardArrayAccess: {
      std::optional<Expr> cond;
      if (op.site == kAssignTargetSite) {
        if (stmt.kind != StmtKind::IndexAssign) return ApplyResult::skip(SkipReason::NotApplicable);
        cond = detail::guard_condition(stmt.name, stmt.exprs[0]);
      } else {
        const Expr* access = minilang::site_at(stmt, op.site);
        if (!access || access->kind != ExprKind::Index)
          return ApplyResult::skip(SkipReason::NotApplicable);
        cond = detail::guard_condition(access->name, access->operands[0]);
      }
      Stmt guarded = Stmt::if_(std::move(*cond), {std::move(stmt)});
      stmt = std::move(guarded);
      break;
    }
    case PatchKind::TemplateMutateConditionTerm: {
      if (stmt.kind != StmtKind::If && stmt.kind != StmtKind::While)
        return ApplyResult::skip(SkipReason::NotApplicable);
      if (!resolved.condition_edit) {
        const auto scope = minilang::scope_at(parent, op.point.path);
        const auto actions = detail::condition_actions(stmt, *scope);
        if (actions.empty()) return ApplyResult::skip(SkipReason::NotApplicable);
        ConditionEdit edit;
        edit.action = actions[rng.uniform_index(actions.size())];
        if (edit.action == ConditionAction::Conjoin || edit.action == ConditionAction::Disjoin) {
          const auto ints = detail::int_variables(*scope);
          const std::size_t a = rng.uniform_index(ints.size());
          std::size_t b = rng.uniform_index(ints.size() - 1);
          if (b >= a) ++b;
          edit.lhs = ints[a];
          edit.rhs = ints[b];
          edit.comparison = minilang::kRelationalOps[rng.uniform_index(6)];
        }
        resolved.condition_edit = edit;
      }
      const auto& edit = *resolved.condition_edit;
      Expr& cond = stmt.exprs[0];
      switch (edit.action) {
        case ConditionAction::Conjoin:
        case ConditionAction::Disjoin: {
          Expr term = Expr::binary(edit.comparison, Expr::var(edit.lhs), Expr::var(edit.rhs));
          const BinaryOp join =
              edit.action == ConditionAction::Conjoin ? BinaryOp::And : BinaryOp::Or;
          cond = Expr::binary(join, std::move(cond), std::move(term));
          break;
        }
        case ConditionAction::RemoveLeft:
        case ConditionAction::RemoveRight: {
          if (!detail::is_logical_node(cond)) return ApplyResult::skip(SkipReason::NotApplicable);
          Expr kept = std::move(cond.operands[edit.action == ConditionAction::RemoveLeft ? 1 : 0]);
          cond = std::move(kept);
          break;
        }
      }
      break;
    }
    case PatchKind::TemplateSwapCallArg: {
      Expr* call = minilang::site_at(stmt, op.site);
      if (!call || call->kind != ExprKind::Call) return ApplyResult::skip(SkipReason::NotApplicable);
      if (!resolved.argument_swap) {
        const auto sigs = minilang::collect_signatures(parent);
        const auto scope = minilang::scope_at(parent, op.point.path, sigs);
        const auto candidates = detail::swap_candidates(*call, *scope, sigs);
        if (candidates.empty()) return ApplyResult::skip(SkipReason::NotApplicable);
        resolved.argument_swap = candidates[rng.uniform_index(candidates.size())];
      }
      const auto& swap = *resolved.argument_swap;
      if (swap.argument >= call->operands.size())
        return ApplyResult::skip(SkipReason::NotApplicable);
      call->operands[swap.argument] = Expr::var(swap.variable);
      break;
    }
    default:
      return ApplyResult::skip(SkipReason::NotApplicable);
  }
  return detail::finish(std::move(child), std::move(resolved));
}

// ---------------------------------------------------------------------------
// Mutation operators.

inline ApplyResult apply_mutation(const SourceUnit& parent, const PatchOp& op) {
  if (mode_of(op.kind) != Mode::JMutRepair) return ApplyResult::skip(SkipReason::NotApplicable);
  SourceUnit child = parent;
  auto* block = detail::target_block(child, op);
  if (!block) return ApplyResult::skip(SkipReason::StalePoint);
  Stmt& stmt = (*block)[detail::target_index(op)];
  PatchOp resolved = op;

  if (op.kind == PatchKind::MutNegateCondition) {
    if (stmt.kind != StmtKind::If && stmt.kind != StmtKind::While)
      return ApplyResult::skip(SkipReason::NotApplicable);
    stmt.exprs[0] = Expr::unary(minilang::UnaryOp::Not, std::move(stmt.exprs[0]));
    return detail::finish(std::move(child), std::move(resolved));
  }

  Expr* site = minilang::site_at(stmt, op.site);
  if (!site || site->kind != ExprKind::Binary) return ApplyResult::skip(SkipReason::NotApplicable);
  const BinaryOp current = site->binary_op;
  switch (op.kind) {
    case PatchKind::MutLogicalOp:
      if (!minilang::is_logical(current)) return ApplyResult::skip(SkipReason::NotApplicable);
      resolved.replacement = current == BinaryOp::And ? BinaryOp::Or : BinaryOp::And;
      break;
    case PatchKind::MutRelationalOp:
      if (!minilang::is_relational(current) || !op.replacement ||
          !minilang::is_relational(*op.replacement) || *op.replacement == current)
        return ApplyResult::skip(SkipReason::NotApplicable);
      break;
    case PatchKind::MutArithmeticOp:
      if (!minilang::is_arithmetic(current) || !op.replacement ||
          !minilang::is_arithmetic(*op.replacement) || *op.replacement == current)
        return ApplyResult::skip(SkipReason::NotApplicable);
      break;
    default:
      return ApplyResult::skip(SkipReason::NotApplicable);
  }
  site->binary_op = *resolved.replacement;
  return detail::finish(std::move(child), std::move(resolved));
}

/// Dispatches on the op's family. `rng` is only consulted by templates.
inline ApplyResult apply(const SourceUnit& parent, const PatchOp& op, Rng& rng) {
  switch (mode_of(op.kind)) {
    case Mode::JGenProg: return apply_genprog(parent, op);
    case Mode::JPar: return apply_par_template(parent, op, rng);
    case Mode::JMutRepair: return apply_mutation(parent, op);
  }
  return ApplyResult::skip(SkipReason::NotApplicable);
}

// ---------------------------------------------------------------------------
// Search-space enumeration.

/// Every applicable op for `mode` at `point`. Template random parameters are
/// left unset and drawn when the op is applied.
inline std::vector<PatchOp> enumerate_ops(Mode mode, const ModificationPoint& point,
                                          const SourceUnit& ast, const IngredientPool& pool) {
  std::vector<PatchOp> ops;
  const Stmt* stmt = minilang::resolve(ast, point.path);
  if (!stmt) return ops;
  auto make = [&](PatchKind kind) {
    PatchOp op;
    op.kind = kind;
    op.point = point;
    return op;
  };
  const bool is_conditional = stmt->kind == StmtKind::If || stmt->kind == StmtKind::While;

  switch (mode) {
    case Mode::JGenProg: {
      ops.push_back(make(PatchKind::Remove));
      for (const auto& ing : pool.entries) {
        if (!check_scope(ing, point, ast)) continue;
        if (ing.stmt.kind != StmtKind::Return) {
          auto op = make(PatchKind::InsertBefore);
          op.ingredient = ing;
          ops.push_back(std::move(op));
        }
        auto op = make(PatchKind::Replace);
        op.ingredient = ing;
        ops.push_back(std::move(op));
      }
      break;
    }
    case Mode::JPar: {
      const auto sigs = minilang::collect_signatures(ast);
      const auto scope = minilang::scope_at(ast, point.path, sigs);
      if (stmt->kind == StmtKind::IndexAssign) {
        auto op = make(PatchKind::TemplateGuardArrayAccess);
        op.site = kAssignTargetSite;
        ops.push_back(std::move(op));
      }
      minilang::for_each_site(*stmt, [&](const Expr& e, std::size_t site) {
        if (e.kind == ExprKind::Index) {
          auto op = make(PatchKind::TemplateGuardArrayAccess);
          op.site = site;
          ops.push_back(std::move(op));
        }
        return false;
      });
      if (is_conditional && !detail::condition_actions(*stmt, *scope).empty())
        ops.push_back(make(PatchKind::TemplateMutateConditionTerm));
      minilang::for_each_site(*stmt, [&](const Expr& e, std::size_t site) {
        if (e.kind == ExprKind::Call && !detail::swap_candidates(e, *scope, sigs).empty()) {
          auto op = make(PatchKind::TemplateSwapCallArg);
          op.site = site;
          ops.push_back(std::move(op));
        }
        return false;
      });
      break;
    }
    case Mode::JMutRepair: {
      const auto sigs = minilang::collect_signatures(ast);
      const auto scope = minilang::scope_at(ast, point.path, sigs);
      minilang::for_each_site(*stmt, [&](const Expr& e, std::size_t site) {
        if (e.kind != ExprKind::Binary) return false;
        const BinaryOp current = e.binary_op;
        if (minilang::is_relational(current)) {
          bool ints = true;
          if (current == BinaryOp::Eq || current == BinaryOp::Ne) {
            try {
              ints = minilang::infer_type(e.operands[0], *scope, sigs) == MiniType::Int;
            } catch (const minilang::SourceError&) {
              ints = false;
            }
          }
          for (BinaryOp r : minilang::kRelationalOps) {
            if (r == current) continue;
            if (!ints && r != BinaryOp::Eq && r != BinaryOp::Ne) continue;
            auto op = make(PatchKind::MutRelationalOp);
            op.site = site;
            op.replacement = r;
            ops.push_back(std::move(op));
          }
        } else if (minilang::is_logical(current)) {
          auto op = make(PatchKind::MutLogicalOp);
          op.site = site;
          op.replacement = current == BinaryOp::And ? BinaryOp::Or : BinaryOp::And;
          ops.push_back(std::move(op));
        } else {
          for (BinaryOp r : minilang::kArithmeticOps) {
            if (r == current) continue;
            auto op = make(PatchKind::MutArithmeticOp);
            op.site = site;
            op.replacement = r;
            ops.push_back(std::move(op));
          }
        }
        return false;
      });
      if (is_conditional) ops.push_back(make(PatchKind::MutNegateCondition));
      break;
    }
  }
  return ops;
}

namespace detail {

inline std::string one_line(const std::string& text) {
  std::string out;
  bool space = false;
  for (char c : text) {
    if (c == '\n' || c == ' ') {
      space = !out.empty();
      continue;
    }
    if (space) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

}  // namespace detail

/// Short human-readable description of the op's payload.
inline std::string payload_summary(const PatchOp& op) {
  switch (op.kind) {
    case PatchKind::Remove:
      return "remove statement";
    case PatchKind::InsertBefore:
    case PatchKind::Replace:
      return op.ingredient ? detail::one_line(minilang::print_statement(op.ingredient->stmt)) +
                                 " (from " + op.ingredient->origin.str() + ")"
                           : "";
    case PatchKind::TemplateGuardArrayAccess:
      return op.site == kAssignTargetSite ? "guard assignment target"
                                          : "guard access at site " + std::to_string(op.site);
    case PatchKind::TemplateMutateConditionTerm: {
      if (!op.condition_edit) return "condition term (unresolved)";
      const auto& e = *op.condition_edit;
      const std::string term =
          e.lhs + " " + std::string(minilang::to_string(e.comparison)) + " " + e.rhs;
      switch (e.action) {
        case ConditionAction::Conjoin: return "&& " + term;
        case ConditionAction::Disjoin: return "|| " + term;
        case ConditionAction::RemoveLeft: return "drop left term";
        case ConditionAction::RemoveRight: return "drop right term";
      }
      return "";
    }
    case PatchKind::TemplateSwapCallArg:
      if (!op.argument_swap) return "swap call argument (unresolved)";
      return "call at site " + std::to_string(op.site) + ": argument " +
             std::to_string(op.argument_swap->argument + 1) + " := " + op.argument_swap->variable;
    case PatchKind::MutRelationalOp:
    case PatchKind::MutLogicalOp:
    case PatchKind::MutArithmeticOp:
      return "site " + std::to_string(op.site) + " -> " +
             (op.replacement ? std::string(minilang::to_string(*op.replacement)) : "?");
    case PatchKind::MutNegateCondition:
      return "negate condition";
  }
  return "";
}

}  // namespace minirepair::operators
