#pragma once

#include <cctype>
#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "minirepair/minilang/ast.hpp"
#include "minirepair/minilang/errors.hpp"
#include "minirepair/minilang/typecheck.hpp"

namespace minirepair::minilang {

enum class TokenKind {
  Identifier,
  Integer,
  // keywords
  Fn, Let, If, Else, While, Return, True, False, Len, IntKw, BoolKw,
  // punctuation
  LParen, RParen, LBrace, RBrace, LBracket, RBracket, Comma, Semicolon, Colon, Arrow,
  Assign, Plus, Minus, Star, Slash, Percent, Less, LessEq, Greater, GreaterEq, EqEq, NotEq,
  AndAnd, OrOr, Bang,
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  SourceLoc loc;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> tokenize() {
    std::vector<Token> tokens;
    for (;;) {
      skip_space_and_comments();
      Token tok;
      tok.loc = {line_, column_};
      if (pos_ >= text_.size()) {
        tok.kind = TokenKind::End;
        tokens.push_back(tok);
        return tokens;
      }
      const char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
          advance();
        tok.text = std::string(text_.substr(start, pos_ - start));
        tok.kind = keyword_or_identifier(tok.text);
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
          advance();
        tok.text = std::string(text_.substr(start, pos_ - start));
        tok.kind = TokenKind::Integer;
      } else {
        tok.kind = punctuation(tok.loc);
        tok.text = std::string(text_.substr(pos_ - punct_len_, punct_len_));
      }
      tokens.push_back(std::move(tok));
    }
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_space_and_comments() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        advance();
      } else if (text_.substr(pos_, 2) == "//") {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  static TokenKind keyword_or_identifier(std::string_view word) {
    static constexpr std::pair<std::string_view, TokenKind> kKeywords[] = {
        {"fn", TokenKind::Fn},         {"let", TokenKind::Let},     {"if", TokenKind::If},
        {"else", TokenKind::Else},     {"while", TokenKind::While}, {"return", TokenKind::Return},
        {"true", TokenKind::True},     {"false", TokenKind::False}, {"len", TokenKind::Len},
        {"int", TokenKind::IntKw},     {"bool", TokenKind::BoolKw},
    };
    for (const auto& [text, kind] : kKeywords)
      if (text == word) return kind;
    return TokenKind::Identifier;
  }

  TokenKind punctuation(const SourceLoc& loc) {
    static constexpr std::pair<std::string_view, TokenKind> kPunct[] = {
        {"->", TokenKind::Arrow},     {"<=", TokenKind::LessEq}, {">=", TokenKind::GreaterEq},
        {"==", TokenKind::EqEq},      {"!=", TokenKind::NotEq},  {"&&", TokenKind::AndAnd},
        {"||", TokenKind::OrOr},      {"(", TokenKind::LParen},  {")", TokenKind::RParen},
        {"{", TokenKind::LBrace},     {"}", TokenKind::RBrace},  {"[", TokenKind::LBracket},
        {"]", TokenKind::RBracket},   {",", TokenKind::Comma},   {";", TokenKind::Semicolon},
        {":", TokenKind::Colon},      {"=", TokenKind::Assign},  {"+", TokenKind::Plus},
        {"-", TokenKind::Minus},      {"*", TokenKind::Star},    {"/", TokenKind::Slash},
        {"%", TokenKind::Percent},    {"<", TokenKind::Less},    {">", TokenKind::Greater},
        {"!", TokenKind::Bang},
    };
    for (const auto& [text, kind] : kPunct) {
      if (text_.substr(pos_, text.size()) == text) {
        for (std::size_t k = 0; k < text.size(); ++k) advance();
        punct_len_ = text.size();
        return kind;
      }
    }
    throw SourceError(SourceErrorKind::Syntax, loc,
                      std::string("unexpected character '") + text_[pos_] + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  std::size_t punct_len_ = 0;
};

/// Recursive-descent parser producing an unchecked AST.
class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(Lexer(text).tokenize()) {}

  SourceUnit parse_unit(std::string source_name) {
    SourceUnit unit;
    unit.source_name = std::move(source_name);
    while (peek().kind != TokenKind::End) unit.functions.push_back(parse_function());
    return unit;
  }

  Expr parse_standalone_expression() {
    Expr e = parse_expr();
    expect(TokenKind::End, "end of input");
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  bool at(TokenKind kind) const { return peek().kind == kind; }
  const Token& take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  bool accept(TokenKind kind) {
    if (!at(kind)) return false;
    take();
    return true;
  }

  const Token& expect(TokenKind kind, std::string_view what) {
    if (!at(kind)) {
      const auto& t = peek();
      throw SourceError(SourceErrorKind::Syntax, t.loc,
                        "expected " + std::string(what) + ", found " +
                            (t.kind == TokenKind::End ? std::string("end of input")
                                                      : "'" + t.text + "'"));
    }
    return take();
  }

  MiniType parse_type() {
    if (accept(TokenKind::BoolKw)) return MiniType::Bool;
    expect(TokenKind::IntKw, "type");
    if (accept(TokenKind::LBracket)) {
      expect(TokenKind::RBracket, "']'");
      return MiniType::IntArray;
    }
    return MiniType::Int;
  }

  FunctionDef parse_function() {
    FunctionDef fn;
    fn.loc = expect(TokenKind::Fn, "'fn'").loc;
    fn.name = expect(TokenKind::Identifier, "function name").text;
    expect(TokenKind::LParen, "'('");
    if (!at(TokenKind::RParen)) {
      do {
        Param p;
        p.name = expect(TokenKind::Identifier, "parameter name").text;
        expect(TokenKind::Colon, "':'");
        p.type = parse_type();
        fn.params.push_back(std::move(p));
      } while (accept(TokenKind::Comma));
    }
    expect(TokenKind::RParen, "')'");
    expect(TokenKind::Arrow, "'->'");
    fn.return_type = parse_type();
    fn.body = parse_block();
    return fn;
  }

  std::vector<Stmt> parse_block() {
    expect(TokenKind::LBrace, "'{'");
    std::vector<Stmt> block;
    while (!at(TokenKind::RBrace)) {
      if (at(TokenKind::End)) expect(TokenKind::RBrace, "'}'");
      block.push_back(parse_stmt());
    }
    take();
    return block;
  }

  Stmt parse_stmt() {
    const SourceLoc loc = peek().loc;
    Stmt stmt;
    if (accept(TokenKind::Let)) {
      std::string name = expect(TokenKind::Identifier, "variable name").text;
      expect(TokenKind::Assign, "'='");
      stmt = Stmt::let(std::move(name), parse_expr());
      expect(TokenKind::Semicolon, "';'");
    } else if (accept(TokenKind::If)) {
      Expr cond = parse_paren_expr();
      std::vector<Stmt> then_block = parse_block();
      std::vector<Stmt> else_block;
      if (accept(TokenKind::Else)) else_block = parse_block();
      stmt = Stmt::if_(std::move(cond), std::move(then_block), std::move(else_block));
    } else if (accept(TokenKind::While)) {
      Expr cond = parse_paren_expr();
      stmt = Stmt::while_(std::move(cond), parse_block());
    } else if (accept(TokenKind::Return)) {
      stmt = Stmt::return_(parse_expr());
      expect(TokenKind::Semicolon, "';'");
    } else {
      Expr lhs = parse_expr();
      if (accept(TokenKind::Assign)) {
        Expr value = parse_expr();
        if (lhs.kind == ExprKind::Var) {
          stmt = Stmt::assign(lhs.name, std::move(value));
        } else if (lhs.kind == ExprKind::Index) {
          stmt = Stmt::index_assign(lhs.name, std::move(lhs.operands[0]), std::move(value));
        } else {
          throw SourceError(SourceErrorKind::Syntax, loc, "invalid assignment target");
        }
      } else {
        stmt = Stmt::expr(std::move(lhs));
      }
      expect(TokenKind::Semicolon, "';'");
    }
    stmt.loc = loc;
    return stmt;
  }

  Expr parse_paren_expr() {
    expect(TokenKind::LParen, "'('");
    Expr e = parse_expr();
    expect(TokenKind::RParen, "')'");
    return e;
  }

  Expr parse_expr() { return parse_binary(0); }

  static int precedence(TokenKind kind) {
    switch (kind) {
      case TokenKind::OrOr: return 1;
      case TokenKind::AndAnd: return 2;
      case TokenKind::Less: case TokenKind::LessEq: case TokenKind::Greater:
      case TokenKind::GreaterEq: case TokenKind::EqEq: case TokenKind::NotEq: return 3;
      case TokenKind::Plus: case TokenKind::Minus: return 4;
      case TokenKind::Star: case TokenKind::Slash: case TokenKind::Percent: return 5;
      default: return -1;
    }
  }

  static BinaryOp binary_op(TokenKind kind) {
    switch (kind) {
      case TokenKind::OrOr: return BinaryOp::Or;
      case TokenKind::AndAnd: return BinaryOp::And;
      case TokenKind::Less: return BinaryOp::Lt;
      case TokenKind::LessEq: return BinaryOp::Le;
      case TokenKind::Greater: return BinaryOp::Gt;
      case TokenKind::GreaterEq: return BinaryOp::Ge;
      case TokenKind::EqEq: return BinaryOp::Eq;
      case TokenKind::NotEq: return BinaryOp::Ne;
      case TokenKind::Plus: return BinaryOp::Add;
      case TokenKind::Minus: return BinaryOp::Sub;
      case TokenKind::Star: return BinaryOp::Mul;
      case TokenKind::Slash: return BinaryOp::Div;
      default: return BinaryOp::Mod;
    }
  }

  // Precedence climbing; every binary level is left-associative.
  Expr parse_binary(int min_prec) {
    Expr lhs = parse_unary();
    for (;;) {
      const int prec = precedence(peek().kind);
      if (prec < 0 || prec < min_prec) break;
      const Token op = take();
      Expr rhs = parse_binary(prec + 1);
      const SourceLoc start = lhs.loc;
      Expr node = Expr::binary(binary_op(op.kind), std::move(lhs), std::move(rhs));
      node.loc = start;
      lhs = std::move(node);
    }
    return lhs;
  }

  Expr parse_unary() {
    const SourceLoc loc = peek().loc;
    if (accept(TokenKind::Minus)) {
      Expr e = Expr::unary(UnaryOp::Neg, parse_unary());
      e.loc = loc;
      return e;
    }
    if (accept(TokenKind::Bang)) {
      Expr e = Expr::unary(UnaryOp::Not, parse_unary());
      e.loc = loc;
      return e;
    }
    return parse_primary();
  }

  Expr parse_primary() {
    const Token& tok = peek();
    const SourceLoc loc = tok.loc;
    Expr e;
    switch (tok.kind) {
      case TokenKind::Integer: {
        std::int64_t value = 0;
        const auto* first = tok.text.data();
        const auto* last = first + tok.text.size();
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last)
          throw SourceError(SourceErrorKind::Syntax, loc, "integer literal out of range");
        take();
        e = Expr::int_lit(value);
        break;
      }
      case TokenKind::True:
      case TokenKind::False:
        e = Expr::bool_lit(take().kind == TokenKind::True);
        break;
      case TokenKind::Len: {
        take();
        e = Expr::len(parse_paren_expr());
        break;
      }
      case TokenKind::LParen:
        e = parse_paren_expr();
        break;
      case TokenKind::LBracket: {
        take();
        std::vector<Expr> elements;
        if (!at(TokenKind::RBracket)) {
          do {
            elements.push_back(parse_expr());
          } while (accept(TokenKind::Comma));
        }
        expect(TokenKind::RBracket, "']'");
        e = Expr::array_lit(std::move(elements));
        break;
      }
      case TokenKind::Identifier: {
        std::string name = take().text;
        if (accept(TokenKind::LParen)) {
          std::vector<Expr> args;
          if (!at(TokenKind::RParen)) {
            do {
              args.push_back(parse_expr());
            } while (accept(TokenKind::Comma));
          }
          expect(TokenKind::RParen, "')'");
          e = Expr::call(std::move(name), std::move(args));
        } else if (accept(TokenKind::LBracket)) {
          Expr idx = parse_expr();
          expect(TokenKind::RBracket, "']'");
          e = Expr::index(std::move(name), std::move(idx));
        } else {
          e = Expr::var(std::move(name));
        }
        break;
      }
      default:
        expect(TokenKind::Identifier, "expression");
    }
    e.loc = loc;
    return e;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

/// Parses and statically checks MiniLang source, assigning StatementIds.
/// Throws SourceError on syntax, type, duplicate, or missing-return errors.
inline SourceUnit parse(std::string_view text, std::string source_name = "<input>") {
  SourceUnit unit = Parser(text).parse_unit(std::move(source_name));
  renumber(unit);
  check(unit);
  return unit;
}

}  // namespace minirepair::minilang
