#include <doctest.h>

#include "lambdav/encoding.hpp"
#include "lambdav/printer.hpp"
#include "lambdav/stream_eval.hpp"
#include "lambdav/surface.hpp"

using namespace lambdav;

TEST_CASE("fuel zero observes nothing") {
  CHECK(streamEval(symbol("a"), 0) == bot());
  CHECK(streamEval(symbol("a"), 1) == symbol("a"));
}

TEST_CASE("beta consumes fuel") {
  Expr e = app(lam("x", var("x")), symbol("a"));
  CHECK(streamEval(e, 1) == bot());
  CHECK(streamEval(e, 2) == symbol("a"));
}

TEST_CASE("join is parallel") {
  Expr loop = compile("def loop u = loop u\nloop ()");
  CHECK(streamEval(join(loop, symbol("a")), 8) == symbol("a"));
  CHECK(streamEval(join(symbol("a"), symbol("b")), 3) == top());
}

TEST_CASE("threshold waits for its symbol") {
  CHECK(streamEval(letSym(Symbol("a"), botv(), symbol("ok")), 8) == bot());
  CHECK(streamEval(letSym(Symbol("a"), symbol("a"), symbol("ok")), 8) == symbol("ok"));
  CHECK(streamEval(letSym(Symbol("a"), symbol("b"), symbol("ok")), 8) == bot());
  CHECK(streamEval(letSym(Symbol("a"), top(), symbol("ok")), 8) == top());
}

TEST_CASE("memoized evaluator matches the plain one") {
  Expr e = compile("def evens _ = {0} \\/ plus2all (evens ())\n"
                   "def plus2all xs = for x in xs join {x + 2}\nevens ()");
  StreamEvaluator ev;
  for (std::size_t n = 0; n < 24; n += 3)
    CHECK(ev.eval(e, n) == streamEval(e, n));
}

TEST_CASE("observe reports change points") {
  Expr e = compile("def fromN n = (n :: fromN (n + 1)) \\/ botv\nfromN 0");
  auto all = observe(e, 10, false);
  auto changes = observe(e, 10, true);
  CHECK(all.size() == 11);
  REQUIRE(changes.size() == 4);
  CHECK(changes[0].fuel == 0);
  CHECK(printResult(changes.back().result) == "0 :: 1 :: ⊥_v");
}

TEST_CASE("streaming order") {
  CHECK(obsLeq(bot(), symbol("a")) == true);
  CHECK(obsLeq(botv(), symbol("a")) == true);
  CHECK(obsLeq(symbol("a"), botv()) == false);
  CHECK(obsLeq(symbol("a"), top()) == true);
  CHECK(obsLeq(setLit({natExpr(0)}), setLit({natExpr(2), natExpr(0)})) == true);
  CHECK(obsLeq(setLit({natExpr(1)}), setLit({natExpr(2)})) == false);
  CHECK(obsLeq(pair(botv(), symbol("a")), pair(symbol("b"), symbol("a"))) == true);
  CHECK_FALSE(obsLeq(lam("x", var("x")), botv()).has_value());
  CHECK(containsLambda(pair(symbol("a"), lam("x", var("x")))));
}
