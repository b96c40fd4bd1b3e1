#include <doctest.h>

#include "lambdav/encoding.hpp"
#include "lambdav/printer.hpp"
#include "lambdav/stream_eval.hpp"
#include "lambdav/surface.hpp"

using namespace lambdav;

namespace {

std::string run(std::string_view text, std::size_t fuel = 32) {
  return printResult(streamEval(compile(text), fuel));
}

} // namespace

TEST_CASE("literals desugar to the shared encodings") {
  CHECK(compile("3") == natExpr(3));
  CHECK(compile("[1]") == listExpr({natExpr(1)}));
  CHECK(compile("\"hi\"") == stringExpr("hi"));
  CHECK(compile("'a") == symbol("a"));
  CHECK(compile("(1, 'a)") == pair(natExpr(1), symbol("a")));
  CHECK(compile("bot") == bot());
  CHECK(compile("top") == top());
  CHECK(compile("botv") == botv());
}

TEST_CASE("core printer output reads back") {
  for (const char *src : {"\\x. x", "('a, \\y. y y)", "let (x, y) = ('a, 'b) in y",
                          "for x in {'a, 'b} join {x}", "let 'a = 'a in 'b", "'a \\/ bot"}) {
    Expr e = compile(src);
    CAPTURE(src);
    CHECK(compile(printCore(e)) == e);
  }
}

TEST_CASE("surface programs") {
  CHECK(run("(\\x. x) 'a") == "'a");
  CHECK(run("if true then 1 else 2") == "1");
  CHECK(run("2 + 3") == "5");
  CHECK(run("case 'b of | 'a -> 1 | 'b -> 2") == "2");
  CHECK(run("let (x, y) = (1, 2) in y") == "2");
  CHECK(run("{ok = true}.ok") == "true");
  CHECK(run("let {a} = {a = 4} in a") == "4");
  CHECK(run("def f x = x + 1\nf 1") == "2");
  CHECK(run("head [7, 8]") == "7");
}

TEST_CASE("parse and resolve errors carry locations") {
  try {
    compile("def f x = y\nf 1");
    FAIL("expected a ParseError");
  } catch (const ParseError &e) {
    CHECK(e.loc().line == 1);
    CHECK(std::string(e.what()).find("unbound identifier 'y'") != std::string::npos);
  }
  CHECK_THROWS_AS(compile("(1, "), ParseError);
  CHECK_THROWS_AS(compile("def f x = x\ndef f y = y\nf 1"), ParseError);
  CHECK_THROWS_AS(compile("def f x = x"), ParseError);
  CHECK_THROWS_AS(compileFile("/nonexistent/prog.lv"), ParseError);
}

TEST_CASE("parseProgram keeps definitions and main") {
  auto p = parseProgram("def one = 1\ndef two = 2\none");
  CHECK(p.defs.size() == 2);
  CHECK(p.defs[1].name == "two");
  REQUIRE(p.main);
  CHECK(p.main->tag == SExpr::Tag::Var);
}

TEST_CASE("prelude is non-empty surface text") {
  CHECK(preludeSource().find("def") != std::string_view::npos);
}
