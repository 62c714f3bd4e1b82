#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace fordc;
using namespace fordc::syntax;
using support::load;

namespace {

std::string scopeCode(std::string_view src) {
  try {
    scopeCheck(parse(src));
  } catch (const Error& e) {
    return e.code();
  }
  return "ok";
}

} // namespace

TEST_CASE("smallest enumeration") {
  auto m = parse("data Bool | true | false");
  REQUIRE(m.decls.size() == 1);
  const auto& d = std::get<DataDecl>(m.decls[0]);
  CHECK(d.name == "Bool");
  CHECK(d.indices.empty());
  REQUIRE(d.ctors.size() == 2);
  CHECK(d.ctors[0].name == "true");
  CHECK(d.ctors[1].name == "false");
  CHECK(d.ctors[0].args.empty());
  CHECK(d.ctors[1].availability.empty());
}

TEST_CASE("availability rows") {
  SUBCASE("So") {
    auto m = load("so.fda");
    const DataDecl* so = m.findData("So");
    REQUIRE(so);
    REQUIRE(so->ctors.size() == 1);
    REQUIRE(so->ctors[0].availability.size() == 1);
    auto* c = std::get_if<Pattern::Ctor>(&so->ctors[0].availability[0].node);
    REQUIRE(c);
    CHECK(c->name == "true");
    CHECK(c->args.empty());
  }
  SUBCASE("Vec") {
    auto m = load("vec.fda");
    const DataDecl* vec = m.findData("Vec");
    REQUIRE(vec);
    CHECK(vec->params.size() == 1);
    CHECK(vec->indices.size() == 1);
    REQUIRE(vec->ctors.size() == 2);
    CHECK(printPattern(vec->ctors[0].availability[0]) == "zero");
    CHECK(printPattern(vec->ctors[1].availability[0]) == "suc m");
    CHECK(vec->ctors[1].args.size() == 2);
  }
}

TEST_CASE("empty module prints as empty text") {
  CHECK(printModule(parse("")) == "");
  CHECK(printModule(parse("  -- nothing here\n")) == "");
}

TEST_CASE("print/parse round trip on every corpus file") {
  for (const auto& name : support::parseableInputs()) {
    CAPTURE(name);
    auto m = load(name);
    std::string printed = printModule(m);
    auto again = parse(printed);
    CHECK(alphaEquivalent(m, again));
    CHECK(printModule(again) == printed);
  }
}

TEST_CASE("printing is canonical") {
  auto m = parse("def f (A : Type) (B : Type) : (x : A) -> B -> A = \\x. \\y. x");
  CHECK(printModule(m) == "def f (A : Type) (B : Type) : (x : A) -> B -> A\n  = \\x y. x\n");
  auto ann = parseExpr("(a : A) -> (b : B) -> C");
  CHECK(printExpr(ann) == "(a : A) -> (b : B) -> C");
  // An annotated domain of a plain arrow keeps its own parentheses.
  auto e = arrow(syntax::ann(var("a"), var("A")), var("B"));
  CHECK(alphaEquivalent(parseExpr(printExpr(e)), e));
}

TEST_CASE("alpha-equivalence") {
  CHECK(alphaEquivalent(parseExpr("\\x. x"), parseExpr("\\y. y")));
  CHECK_FALSE(alphaEquivalent(parseExpr("\\x y. x"), parseExpr("\\x y. y")));
  CHECK(alphaEquivalent(parseExpr("(a : A) -> P a"), parseExpr("(b : A) -> P b")));
  CHECK_FALSE(alphaEquivalent(parseExpr("(a : A) -> P a"), parseExpr("(b : A) -> P a")));
}

TEST_CASE("parse errors carry position and expectations") {
  try {
    parse("data Bool\n  | true\n  | false =>\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.code() == "E-PARSE");
    CHECK(e.diagnostic().span.line == 4);
    CHECK_FALSE(e.expected().empty());
  }
  CHECK_THROWS_AS(parse("def f : = x"), ParseError);
  CHECK_THROWS_AS(parse("data"), ParseError);
}

TEST_CASE("qualified constructor names and inaccessible patterns") {
  auto m = parse("data B | t | f\n"
                 "def g (b : B) (c : B) : B\n"
                 "  | B.t, .(b) => B.f\n"
                 "  | b, c => c\n");
  auto* g = m.findFun("g");
  REQUIRE(g);
  CHECK(printPattern(g->clauses[0].patterns[0]) == "B.t");
  CHECK(printPattern(g->clauses[0].patterns[1]) == ".(b)");
}

TEST_CASE("scope pass") {
  CHECK(scopeCode("data A | a\ndata A | b") == "E-DUP");
  CHECK(scopeCode("data A | a\ndef a : A = a") == "E-DUP");
  CHECK(scopeCode("def f (x : Nat) : Nat = x") == "E-SCOPE");
  CHECK(scopeCode("data N | z | s (n : N)\ndef f (a : N) (b : N) : N | x, x => x") ==
        "E-NONLINEAR");
  CHECK(scopeCode("data N | z\ndata F (n : N) : (n : N) | z => c") == "E-DUP");
  CHECK(scopeCode("data N | z | s (n : N)\ndef f (a : N) (b : N) : N | _, _ => z") == "ok");
  CHECK(scopeCode("def two (A : Type) (x : A) : Id A x x = idp A x") == "ok");
}

TEST_CASE("fresh names count upwards") {
  CHECK(freshName("x", {}) == "x");
  CHECK(freshName("x", {"x"}) == "x1");
  CHECK(freshName("x", {"x", "x1", "x2"}) == "x3");
}
