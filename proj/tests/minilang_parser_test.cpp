#include <gtest/gtest.h>

#include <filesystem>

#include "minirepair/minilang.hpp"
#include "support/fixtures.hpp"
#include "support/program_gen.hpp"

using namespace minirepair::minilang;
using fixtures::sid;

namespace {

SourceErrorKind error_kind(const std::string& text) {
  try {
    parse(text);
  } catch (const SourceError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected a source error for: " << text;
  return SourceErrorKind::Syntax;
}

}  // namespace

TEST(Parser, MaxHasFourStatementsInPreOrder) {
  const auto unit = parse(fixtures::kBuggyMax);
  ASSERT_EQ(unit.functions.size(), 1u);
  const auto& fn = unit.functions[0];
  EXPECT_EQ(fn.name, "max");
  ASSERT_EQ(fn.params.size(), 2u);
  EXPECT_EQ(count_statements(fn.body), 4u);
  ASSERT_EQ(fn.body.size(), 3u);
  EXPECT_EQ(fn.body[0].id, sid("max", 0));
  EXPECT_EQ(fn.body[1].id, sid("max", 1));
  EXPECT_EQ(fn.body[1].body[0].id, sid("max", 2));
  EXPECT_EQ(fn.body[2].id, sid("max", 3));
}

TEST(Parser, MissingReturn) {
  try {
    parse("fn f() -> int { }");
    FAIL();
  } catch (const SourceError& e) {
    EXPECT_EQ(e.kind(), SourceErrorKind::MissingReturn);
    EXPECT_NE(std::string(e.what()).find("missing return"), std::string::npos);
    EXPECT_EQ(e.location().line, 1);
  }
}

TEST(Parser, TypeErrorLocatedAtOperator) {
  try {
    parse("fn f(x: int) -> bool { return x + true; }");
    FAIL();
  } catch (const SourceError& e) {
    EXPECT_EQ(e.kind(), SourceErrorKind::Type);
    EXPECT_EQ(e.location().line, 1);
    EXPECT_EQ(e.location().column, 31);  // the `x` that starts `x + true`
  }
}

TEST(Parser, ReturnOnOnlyOneBranchIsMissingReturn) {
  EXPECT_EQ(error_kind("fn f(x: int) -> int { if (x > 0) { return 1; } }"),
            SourceErrorKind::MissingReturn);
  EXPECT_NO_THROW(parse("fn f(x: int) -> int { if (x > 0) { return 1; } else { return 2; } }"));
}

TEST(Parser, DuplicateNames) {
  EXPECT_EQ(error_kind("fn f() -> int { return 1; } fn f() -> int { return 2; }"),
            SourceErrorKind::Duplicate);
  EXPECT_EQ(error_kind("fn f(a: int, a: int) -> int { return a; }"), SourceErrorKind::Duplicate);
  EXPECT_EQ(error_kind("fn f(a: int) -> int { let a = 1; return a; }"), SourceErrorKind::Duplicate);
}

TEST(Parser, SyntaxErrorsCarryLocation) {
  try {
    parse("fn f() -> int {\n  return 1\n}");
    FAIL();
  } catch (const SourceError& e) {
    EXPECT_EQ(e.kind(), SourceErrorKind::Syntax);
    EXPECT_EQ(e.location().line, 3);
  }
  EXPECT_EQ(error_kind("fn f() -> int { return 1 + ; }"), SourceErrorKind::Syntax);
  EXPECT_EQ(error_kind("fn f() -> int { return 1; } $"), SourceErrorKind::Syntax);
}

TEST(Parser, TypingRules) {
  EXPECT_EQ(error_kind("fn f(p: bool) -> bool { return p && 1; }"), SourceErrorKind::Type);
  EXPECT_EQ(error_kind("fn f(p: bool) -> bool { return p == 1; }"), SourceErrorKind::Type);
  EXPECT_EQ(error_kind("fn f(a: int[]) -> int { return a; }"), SourceErrorKind::Type);
  EXPECT_EQ(error_kind("fn f() -> int { return g(1); }"), SourceErrorKind::Type);
  EXPECT_EQ(error_kind("fn f() -> int { x = 1; return 0; }"), SourceErrorKind::Type);
  EXPECT_NO_THROW(parse("fn f(a: int[], b: int[]) -> bool { return a == b; }"));
  EXPECT_NO_THROW(parse("fn f(p: bool, q: bool) -> bool { return p != q || !p; }"));
}

TEST(Parser, PrecedenceAndAssociativity) {
  const auto unit = parse("fn f(a: int, b: int, c: int) -> int { return a - b - c * 2; }");
  const auto& e = unit.functions[0].body[0].exprs[0];
  ASSERT_EQ(e.kind, ExprKind::Binary);
  EXPECT_EQ(e.binary_op, BinaryOp::Sub);
  EXPECT_EQ(e.operands[0].binary_op, BinaryOp::Sub);
  EXPECT_EQ(e.operands[1].binary_op, BinaryOp::Mul);

  const auto logic = parse("fn g(p: bool, q: bool, r: bool) -> bool { return p || q && r; }");
  const auto& l = logic.functions[0].body[0].exprs[0];
  EXPECT_EQ(l.binary_op, BinaryOp::Or);
  EXPECT_EQ(l.operands[1].binary_op, BinaryOp::And);
}

TEST(Printer, RoundTripOnMax) {
  const auto unit = parse(fixtures::kBuggyMax);
  const auto text = pretty_print(unit);
  const auto again = parse(text);
  EXPECT_EQ(again, unit);
  EXPECT_EQ(pretty_print(again), text);
}

TEST(Printer, CanonicalLayout) {
  const auto unit = parse(fixtures::kBuggyMax);
  EXPECT_EQ(pretty_print(unit),
            "fn max(a: int, b: int) -> int {\n"
            "  let m = a;\n"
            "  if (b < m) {\n"
            "    m = b;\n"
            "  }\n"
            "  return m;\n"
            "}\n");
}

TEST(Printer, IndentationFollowsBlockDepth) {
  const auto unit = parse(
      "fn f(n: int) -> int { let i = 0; while (i < n) { if (i % 2 == 0) { i = i + 1; } else "
      "{ while (false) { } i = i + 2; } } return i; }");
  EXPECT_EQ(pretty_print(unit),
            "fn f(n: int) -> int {\n"
            "  let i = 0;\n"
            "  while (i < n) {\n"
            "    if (i % 2 == 0) {\n"
            "      i = i + 1;\n"
            "    } else {\n"
            "      while (false) {\n"
            "      }\n"
            "      i = i + 2;\n"
            "    }\n"
            "  }\n"
            "  return i;\n"
            "}\n");
}

TEST(Printer, EmptyElseOmitted) {
  const auto unit = parse("fn f(x: int) -> int { if (x > 0) { x = 1; } else { } return x; }");
  const auto text = pretty_print(unit);
  EXPECT_EQ(text.find("else"), std::string::npos);
  EXPECT_EQ(parse(text), unit);
}

TEST(Printer, MinimalParentheses) {
  const auto unit =
      parse("fn f(a: int, b: int) -> int { return (a - (b - 1)) * -(a + b) - (a * b); }");
  EXPECT_NE(pretty_print(unit).find("return (a - (b - 1)) * -(a + b) - a * b;"),
            std::string::npos);
}

TEST(Printer, CommentsAreDropped) {
  const auto unit = parse("// header\nfn f() -> int {\n  // inside\n  return 1;\n}\n");
  EXPECT_EQ(pretty_print(unit), "fn f() -> int {\n  return 1;\n}\n");
}

TEST(RoundTrip, CorpusPrograms) {
  std::size_t seen = 0;
  for (const auto& entry : std::filesystem::directory_iterator(fixtures::corpus_dir())) {
    const auto path = entry.path() / "program.ml";
    if (!std::filesystem::exists(path)) continue;
    const auto unit = load_program(path.string());
    const auto text = pretty_print(unit);
    const auto again = parse(text);
    EXPECT_EQ(again, unit) << path;
    EXPECT_EQ(pretty_print(again), text) << path;
    ++seen;
  }
  EXPECT_GE(seen, 12u);
}

TEST(RoundTrip, GeneratedPrograms) {
  gen::ProgramGenerator g(2024);
  for (int k = 0; k < 500; ++k) {
    const auto unit = g.unit();
    ASSERT_TRUE(type_checks(unit)) << pretty_print(unit);
    const auto text = pretty_print(unit);
    SourceUnit again;
    ASSERT_NO_THROW(again = parse(text)) << text;
    EXPECT_EQ(again, unit) << text;
    EXPECT_EQ(pretty_print(again), text);
  }
}

TEST(Ast, PathsResolveToTheirStatements) {
  const auto unit = parse(
      "fn f(n: int) -> int { let i = 0; while (i < n) { if (i > 2) { i = i + 2; } else { i = i "
      "+ 1; } } return i; }");
  for_each_statement(unit, [&](const Stmt& s, const StmtPath& path) {
    const Stmt* found = resolve(unit, path);
    ASSERT_NE(found, nullptr);
    EXPECT_EQ(found->id, s.id);
    auto back = path_of(unit, s.id);
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, path);
  });
  EXPECT_FALSE(path_of(unit, sid("f", 99)).has_value());
}
