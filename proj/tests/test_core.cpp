#include <doctest.h>

#include "lambdav/context.hpp"
#include "lambdav/encoding.hpp"
#include "lambdav/expr.hpp"
#include "lambdav/printer.hpp"
#include "lambdav/symbol.hpp"

using namespace lambdav;

TEST_CASE("binders are nameless") {
  CHECK(lam("x", var("x")) == lam("y", var("y")));
  CHECK(lam("x", var("y")) != lam("y", var("y")));
  CHECK(letPair("a", "b", var("p"), var("a")) == letPair("u", "v", var("p"), var("u")));
  CHECK(letPair("a", "b", var("p"), var("a")) != letPair("a", "b", var("p"), var("b")));
  CHECK(bigJoin("x", var("s"), setLit({var("x")})).isClosed() == false);
  CHECK(bigJoin("x", setLit({}), setLit({var("x")})).isClosed());
}

TEST_CASE("instantiate and substitute") {
  Expr body = lam("x", pair(var("x"), var("y"))).child(0);
  CHECK(instantiate(body, symbol("a")) == pair(symbol("a"), var("y")));
  Expr lp = letPair("x", "y", var("p"), pair(var("y"), var("x")));
  CHECK(instantiate2(lp.child(1), symbol("a"), symbol("b")) == pair(symbol("b"), symbol("a")));
  CHECK(substitute(lam("z", var("y")), "y", symbol("c")) == lam("z", symbol("c")));
  CHECK(freeVars(app(var("f"), lam("x", var("x")))) == std::set<std::string>{"f"});
}

TEST_CASE("values and results") {
  CHECK(botv().isValue());
  CHECK(var("x").isValue());
  CHECK(pair(symbol("a"), lam("x", bot())).isValue());
  CHECK_FALSE(pair(symbol("a"), bot()).isValue());
  CHECK_FALSE(app(lam("x", var("x")), symbol("a")).isValue());
  CHECK(bot().isResult());
  CHECK(top().isResult());
  CHECK_FALSE(top().isValue());
  CHECK(setLit({symbol("a"), symbol("b")}).isResult());
}

TEST_CASE("compare is a total order independent of interning") {
  Expr a = symbol("zz9"), b = symbol("aa1");
  CHECK(compare(a, b) > 0);
  CHECK(compare(b, a) < 0);
  CHECK(compare(a, a) == 0);
}

TEST_CASE("symbol tables") {
  CHECK(SymbolTable::discrete().join(Symbol("a"), Symbol("a")) == Symbol("a"));
  CHECK_FALSE(SymbolTable::discrete().join(Symbol("a"), Symbol("b")));
  auto t = SymbolTable::parse("# levels\nlo hi -> hi\n");
  CHECK(t.join(Symbol("hi"), Symbol("lo")) == Symbol("hi"));
  CHECK(t.leq(Symbol("lo"), Symbol("hi")));
  CHECK_FALSE(t.leq(Symbol("hi"), Symbol("lo")));
  CHECK(t.lawViolations().empty());
  auto bad = SymbolTable::parse("a b -> c\n");
  CHECK_FALSE(bad.lawViolations().empty());
  CHECK_THROWS_AS(SymbolTable::parse("a b c\n"), SymbolTableError);
}

TEST_CASE("evaluation contexts") {
  Expr e = app(app(var("f"), symbol("a")), join(bot(), symbol("b")));
  CHECK(formatPath(parsePath("/0/1")) == "/0/1");
  CHECK(formatPath(EvalCtx{}) == "/");
  CHECK(isEvalCtx(e, parsePath("/0")));
  CHECK_FALSE(isEvalCtx(lam("x", app(var("x"), var("x"))), parsePath("/0")));
  CHECK(plug(e, parsePath("/1"), top()) == app(app(var("f"), symbol("a")), top()));
  CHECK(subtermAt(e, parsePath("/1/1")) == symbol("b"));
}

TEST_CASE("decompose finds the redexes under evaluation contexts") {
  Expr r = app(lam("x", var("x")), symbol("a"));
  auto ds = decompose(setLit({r, pair(symbol("a"), r)}));
  REQUIRE(ds.size() == 2);
  CHECK(formatPath(ds[0].first) == "/0");
  CHECK(formatPath(ds[1].first) == "/1/1");
  CHECK(decompose(pair(r, r)).size() == 1);
  CHECK(decompose(lam("y", r)).empty());
}

TEST_CASE("encodings") {
  CHECK(decodeNat(natExpr(3)) == 3u);
  CHECK_FALSE(decodeNat(symbol("zero")));
  auto l = decodeList(consExpr(natExpr(0), botv()));
  REQUIRE(l);
  CHECK(l->elems.size() == 1);
  REQUIRE(l->tail);
  CHECK(*l->tail == botv());
  CHECK_FALSE(decodeList(listExpr({natExpr(1)}))->tail);
  CHECK(printResult(listExpr({natExpr(1), natExpr(2)})) == "[1, 2]");
  CHECK(printResult(consExpr(natExpr(0), consExpr(natExpr(1), botv()))) == "0 :: 1 :: ⊥_v");
  CHECK(printResult(stringExpr("ok")) == "\"ok\"");
}

TEST_CASE("printResult sorts set elements") {
  CHECK(printResult(setLit({natExpr(2), natExpr(0)})) == "{0, 2}");
  CHECK(printResult(bot()) == "⊥");
  CHECK(printResult(top()) == "⊤");
}
