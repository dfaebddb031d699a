#pragma once

#include <string>
#include <vector>

#include "minirepair/minilang/ast.hpp"

namespace minirepair::minilang {

namespace detail {

inline int binary_precedence(BinaryOp op) {
  switch (op) {
    case BinaryOp::Or: return 1;
    case BinaryOp::And: return 2;
    case BinaryOp::Add: case BinaryOp::Sub: return 4;
    case BinaryOp::Mul: case BinaryOp::Div: case BinaryOp::Mod: return 5;
    default: return 3;
  }
}

constexpr int kUnaryPrecedence = 6;

inline int expr_precedence(const Expr& e) {
  if (e.kind == ExprKind::Binary) return binary_precedence(e.binary_op);
  if (e.kind == ExprKind::Unary) return kUnaryPrecedence;
  return 7;
}

inline void print_expr(const Expr& e, std::string& out);

// Parenthesizes `e` when its precedence is below `min_prec`.
inline void print_operand(const Expr& e, int min_prec, std::string& out) {
  if (expr_precedence(e) < min_prec) {
    out += '(';
    print_expr(e, out);
    out += ')';
  } else {
    print_expr(e, out);
  }
}

inline void print_list(const std::vector<Expr>& items, std::string& out) {
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k > 0) out += ", ";
    print_expr(items[k], out);
  }
}

inline void print_expr(const Expr& e, std::string& out) {
  switch (e.kind) {
    case ExprKind::IntLit:
      out += std::to_string(e.int_value);
      break;
    case ExprKind::BoolLit:
      out += e.bool_value ? "true" : "false";
      break;
    case ExprKind::Var:
      out += e.name;
      break;
    case ExprKind::Binary: {
      const int prec = binary_precedence(e.binary_op);
      print_operand(e.operands[0], prec, out);
      out += ' ';
      out += to_string(e.binary_op);
      out += ' ';
      print_operand(e.operands[1], prec + 1, out);
      break;
    }
    case ExprKind::Unary:
      out += to_string(e.unary_op);
      print_operand(e.operands[0], kUnaryPrecedence, out);
      break;
    case ExprKind::Index:
      out += e.name;
      out += '[';
      print_expr(e.operands[0], out);
      out += ']';
      break;
    case ExprKind::Len:
      out += "len(";
      print_expr(e.operands[0], out);
      out += ')';
      break;
    case ExprKind::Call:
      out += e.name;
      out += '(';
      print_list(e.operands, out);
      out += ')';
      break;
    case ExprKind::ArrayLit:
      out += '[';
      print_list(e.operands, out);
      out += ']';
      break;
  }
}

inline void print_block(const std::vector<Stmt>& block, int depth, std::string& out);

inline void print_stmt(const Stmt& s, int depth, std::string& out) {
  const std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
  out += indent;
  switch (s.kind) {
    case StmtKind::Let:
      out += "let " + s.name + " = ";
      print_expr(s.exprs[0], out);
      out += ";\n";
      break;
    case StmtKind::Assign:
      out += s.name + " = ";
      print_expr(s.exprs[0], out);
      out += ";\n";
      break;
    case StmtKind::IndexAssign:
      out += s.name + "[";
      print_expr(s.exprs[0], out);
      out += "] = ";
      print_expr(s.exprs[1], out);
      out += ";\n";
      break;
    case StmtKind::If:
      out += "if (";
      print_expr(s.exprs[0], out);
      out += ") {\n";
      print_block(s.body, depth + 1, out);
      if (!s.else_body.empty()) {
        out += indent + "} else {\n";
        print_block(s.else_body, depth + 1, out);
      }
      out += indent + "}\n";
      break;
    case StmtKind::While:
      out += "while (";
      print_expr(s.exprs[0], out);
      out += ") {\n";
      print_block(s.body, depth + 1, out);
      out += indent + "}\n";
      break;
    case StmtKind::Return:
      out += "return ";
      print_expr(s.exprs[0], out);
      out += ";\n";
      break;
    case StmtKind::ExprStmt:
      print_expr(s.exprs[0], out);
      out += ";\n";
      break;
  }
}

inline void print_block(const std::vector<Stmt>& block, int depth, std::string& out) {
  for (const auto& s : block) print_stmt(s, depth, out);
}

}  // namespace detail

inline std::string print_expression(const Expr& e) {
  std::string out;
  detail::print_expr(e, out);
  return out;
}

/// Single statement (and its nested blocks) at indentation depth 0.
inline std::string print_statement(const Stmt& s) {
  std::string out;
  detail::print_stmt(s, 0, out);
  return out;
}

/// Canonical source text: one statement per line, two spaces per block depth,
/// functions separated by a blank line.
inline std::string pretty_print(const SourceUnit& unit) {
  std::string out;
  for (std::size_t f = 0; f < unit.functions.size(); ++f) {
    const auto& fn = unit.functions[f];
    if (f > 0) out += '\n';
    out += "fn " + fn.name + "(";
    for (std::size_t k = 0; k < fn.params.size(); ++k) {
      if (k > 0) out += ", ";
      out += fn.params[k].name + ": " + std::string(to_string(fn.params[k].type));
    }
    out += ") -> " + std::string(to_string(fn.return_type)) + " {\n";
    detail::print_block(fn.body, 1, out);
    out += "}\n";
  }
  return out;
}

}  // namespace minirepair::minilang
