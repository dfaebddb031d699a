#pragma once

// Random generator of well-typed MiniLang units, built directly as ASTs.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "minirepair/minilang.hpp"

namespace gen {

using namespace minirepair::minilang;

class ProgramGenerator {
 public:
  explicit ProgramGenerator(std::uint64_t seed) : rng_(seed) {}

  SourceUnit unit() {
    SourceUnit u;
    u.source_name = "generated.ml";
    const int n_functions = pick(1, 3);
    for (int f = 0; f < n_functions; ++f) u.functions.push_back(function(u, f));
    renumber(u);
    return u;
  }

 private:
  struct Var {
    std::string name;
    MiniType type;
  };

  std::mt19937_64 rng_;
  std::vector<std::vector<Var>> scopes_;
  const SourceUnit* unit_ = nullptr;
  int next_var_ = 0;

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(int percent) { return pick(1, 100) <= percent; }

  MiniType any_type() {
    const int r = pick(0, 9);
    return r < 6 ? MiniType::Int : r < 9 ? MiniType::Bool : MiniType::IntArray;
  }

  std::vector<Var> visible(MiniType t) const {
    std::vector<Var> out;
    for (const auto& s : scopes_)
      for (const auto& v : s)
        if (v.type == t) out.push_back(v);
    return out;
  }

  std::string fresh() { return "v" + std::to_string(next_var_++); }

  FunctionDef function(const SourceUnit& u, int index) {
    unit_ = &u;
    next_var_ = 0;
    FunctionDef fn;
    fn.name = "f" + std::to_string(index);
    fn.return_type = any_type();
    scopes_.assign(1, {});
    const int n_params = pick(0, 3);
    for (int p = 0; p < n_params; ++p) {
      Param param{"p" + std::to_string(p), any_type()};
      scopes_.back().push_back({param.name, param.type});
      fn.params.push_back(param);
    }
    fn.body = block(3, fn.return_type, true);
    scopes_.clear();
    return fn;
  }

  std::vector<Stmt> block(int depth, MiniType ret, bool must_return) {
    scopes_.emplace_back();
    std::vector<Stmt> out;
    const int n = pick(0, 4);
    for (int k = 0; k < n; ++k) out.push_back(statement(depth, ret));
    if (must_return || chance(20)) out.push_back(Stmt::return_(expr(ret, 3)));
    scopes_.pop_back();
    return out;
  }

  Stmt statement(int depth, MiniType ret) {
    const int r = pick(0, 9);
    if (r <= 2 || depth == 0) {
      const MiniType t = any_type();
      Expr value = expr(t, 3);
      const std::string name = fresh();
      scopes_.back().push_back({name, t});
      return Stmt::let(name, std::move(value));
    }
    if (r <= 4) {
      const MiniType t = any_type();
      auto vars = visible(t);
      if (!vars.empty()) return Stmt::assign(vars[pick(0, int(vars.size()) - 1)].name, expr(t, 3));
    }
    if (r == 5) {
      auto arrays = visible(MiniType::IntArray);
      if (!arrays.empty())
        return Stmt::index_assign(arrays[pick(0, int(arrays.size()) - 1)].name,
                                  expr(MiniType::Int, 2), expr(MiniType::Int, 2));
    }
    if (r == 6) return Stmt::while_(expr(MiniType::Bool, 2), block(depth - 1, ret, false));
    if (r == 7 && unit_ && !unit_->functions.empty()) {
      const auto& callee = unit_->functions[pick(0, int(unit_->functions.size()) - 1)];
      return Stmt::expr(call(callee, 2));
    }
    auto then_block = block(depth - 1, ret, false);
    std::vector<Stmt> else_block;
    if (chance(50)) else_block = block(depth - 1, ret, false);
    return Stmt::if_(expr(MiniType::Bool, 2), std::move(then_block), std::move(else_block));
  }

  Expr call(const FunctionDef& callee, int depth) {
    std::vector<Expr> args;
    for (const auto& p : callee.params) args.push_back(expr(p.type, depth - 1));
    return Expr::call(callee.name, std::move(args));
  }

  Expr leaf(MiniType t) {
    auto vars = visible(t);
    if (!vars.empty() && chance(60)) return Expr::var(vars[pick(0, int(vars.size()) - 1)].name);
    switch (t) {
      case MiniType::Int:
        return Expr::int_lit(pick(0, 99));
      case MiniType::Bool:
        return Expr::bool_lit(chance(50));
      case MiniType::IntArray: {
        std::vector<Expr> elems;
        const int n = pick(0, 3);
        for (int k = 0; k < n; ++k) elems.push_back(Expr::int_lit(pick(0, 9)));
        return Expr::array_lit(std::move(elems));
      }
    }
    return Expr::int_lit(0);
  }

  Expr expr(MiniType t, int depth) {
    if (depth <= 0 || chance(30)) return leaf(t);
    if (unit_ && chance(10)) {
      for (const auto& fn : unit_->functions)
        if (fn.return_type == t) return call(fn, depth);
    }
    switch (t) {
      case MiniType::Int: {
        const int r = pick(0, 9);
        if (r == 0) return Expr::unary(UnaryOp::Neg, expr(t, depth - 1));
        if (r == 1) return Expr::len(expr(MiniType::IntArray, depth - 1));
        if (r == 2) {
          auto arrays = visible(MiniType::IntArray);
          if (!arrays.empty())
            return Expr::index(arrays[pick(0, int(arrays.size()) - 1)].name, expr(t, depth - 1));
        }
        const BinaryOp op = kArithmeticOps[pick(0, 4)];
        return Expr::binary(op, expr(t, depth - 1), expr(t, depth - 1));
      }
      case MiniType::Bool: {
        const int r = pick(0, 9);
        if (r == 0) return Expr::unary(UnaryOp::Not, expr(t, depth - 1));
        if (r <= 3) {
          const BinaryOp op = chance(50) ? BinaryOp::And : BinaryOp::Or;
          return Expr::binary(op, expr(t, depth - 1), expr(t, depth - 1));
        }
        if (r == 4) {
          const MiniType operand = chance(50) ? MiniType::Bool : MiniType::IntArray;
          const BinaryOp op = chance(50) ? BinaryOp::Eq : BinaryOp::Ne;
          return Expr::binary(op, expr(operand, depth - 1), expr(operand, depth - 1));
        }
        const BinaryOp op = kRelationalOps[pick(0, 5)];
        return Expr::binary(op, expr(MiniType::Int, depth - 1), expr(MiniType::Int, depth - 1));
      }
      case MiniType::IntArray: {
        std::vector<Expr> elems;
        const int n = pick(0, 3);
        for (int k = 0; k < n; ++k) elems.push_back(expr(MiniType::Int, depth - 1));
        return Expr::array_lit(std::move(elems));
      }
    }
    return leaf(t);
  }
};

}  // namespace gen
