#include <doctest.h>

#include "lambdav/encoding.hpp"
#include "lambdav/printer.hpp"
#include "lambdav/reduction.hpp"
#include "lambdav/stream_eval.hpp"
#include "lambdav/surface.hpp"

#include <algorithm>

using namespace lambdav;

namespace {

bool hasRule(const std::vector<StepChoice> &cs, StepRule r, std::string_view path) {
  return std::any_of(cs.begin(), cs.end(), [&](const StepChoice &c) {
    return c.rule == r && formatPath(c.context) == path;
  });
}

std::vector<std::string> shown(const ExploreReport &rep) {
  std::vector<std::string> out;
  for (const auto &r : rep.results)
    out.push_back(printResult(r.result));
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

TEST_CASE("result join") {
  CHECK(resultJoin(bot(), symbol("a")) == symbol("a"));
  CHECK(resultJoin(symbol("a"), symbol("b")) == top());
  CHECK(resultJoin(symbol("a"), symbol("a")) == symbol("a"));
  CHECK(resultJoin(botv(), symbol("a")) == symbol("a"));
  CHECK(canonical(resultJoin(setLit({symbol("a")}), setLit({symbol("b")}))) ==
        canonical(setLit({symbol("a"), symbol("b")})));
  CHECK(resultJoin(pair(botv(), symbol("a")), pair(symbol("b"), botv())) ==
        pair(symbol("b"), symbol("a")));
  CHECK(resultJoin(pair(symbol("a"), symbol("a")), setLit({})) == top());
  auto t = SymbolTable::parse("lo hi -> hi\n");
  CHECK(resultJoin(symbol("lo"), symbol("hi"), t) == symbol("hi"));
}

TEST_CASE("single steps") {
  Expr id = lam("x", var("x"));
  Expr e = app(id, symbol("a"));
  auto cs = enumerateSteps(e);
  CHECK(hasRule(cs, StepRule::Beta, "/"));
  CHECK(hasRule(cs, StepRule::Approximate, "/"));
  CHECK(step(e, {EvalCtx{}, StepRule::Beta}) == symbol("a"));
  CHECK(step(e, {EvalCtx{}, StepRule::Approximate}) == bot());
  CHECK_THROWS_AS(step(e, {EvalCtx{}, StepRule::LetPairBeta}), InvalidStep);

  Expr lp = letPair("x", "y", pair(symbol("a"), symbol("b")), var("y"));
  CHECK(step(lp, {EvalCtx{}, StepRule::LetPairBeta}) == symbol("b"));

  Expr ls = letSym(Symbol("a"), symbol("a"), symbol("ok"));
  CHECK(step(ls, {EvalCtx{}, StepRule::LetSymThreshold}) == symbol("ok"));
  CHECK_FALSE(hasRule(enumerateSteps(letSym(Symbol("a"), symbol("b"), symbol("ok"))),
                      StepRule::LetSymThreshold, "/"));

  Expr bj = bigJoin("x", setLit({symbol("a"), symbol("b")}), setLit({var("x")}));
  Expr expanded = step(bj, {EvalCtx{}, StepRule::BigJoinExpand});
  CHECK(expanded == join(setLit({symbol("a")}), setLit({symbol("b")})));
  CHECK(step(bigJoin("x", setLit({}), var("x")), {EvalCtx{}, StepRule::BigJoinExpand}) == bot());

  Expr tp = pair(symbol("a"), top());
  CHECK(step(tp, {parsePath("/1"), StepRule::TopPropagate}) == top());
  CHECK_THROWS_AS(step(top(), {EvalCtx{}, StepRule::TopPropagate}), InvalidStep);
  Expr sb = setLit({symbol("a"), bot()});
  CHECK(step(sb, {EvalCtx{}, StepRule::SetDropBot}) == setLit({symbol("a")}));
}

TEST_CASE("trace text round-trips") {
  Trace t{{parsePath("/0/1"), StepRule::Beta}, {EvalCtx{}, StepRule::JoinOfResults}};
  CHECK(formatTrace(t) == "(Beta, /0/1)\n(JoinOfResults, /)\n");
  CHECK(parseTrace(formatTrace(t)) == t);
  CHECK(parseTrace("# comment\n\n(Approximate, /)\n").size() == 1);
  CHECK_THROWS_AS(parseTrace("(Nope, /)\n"), InvalidStep);
  CHECK_THROWS_AS(parseTrace("Beta /\n"), InvalidStep);
  for (auto r : {StepRule::Beta, StepRule::LetPairBeta, StepRule::LetSymThreshold,
                 StepRule::BigJoinExpand, StepRule::JoinOfResults, StepRule::SetDropBot,
                 StepRule::TopPropagate, StepRule::Approximate})
    CHECK(parseRuleName(ruleName(r)) == r);
}

TEST_CASE("explore lists both arms of a join") {
  auto rep = explore(compile("{(1, 2)} \\/ {(2, 3)}"), 8, 64);
  CHECK(shown(rep) == std::vector<std::string>{"{(1, 2), (2, 3)}", "{(1, 2)}", "{(2, 3)}", "⊥"});
  for (const auto &r : rep.results)
    CHECK(replay(compile("{(1, 2)} \\/ {(2, 3)}"), r.trace) == r.result);
}

TEST_CASE("explore agrees with breadth-first search up to approximation") {
  for (const char *src : {"(\\x. (x, x)) 'a", "'a \\/ 'b", "let (x, y) = ('a, 'b) in {x, y}",
                          "for x in {'a, 'b} join {(x, x)}"}) {
    CAPTURE(src);
    Expr e = compile(src);
    auto a = explore(e, 6, 64);
    auto b = exploreBreadthFirst(e, 6, 5000);
    CHECK_FALSE(b.truncated);
    for (const auto &r : a.results)
      CHECK(b.contains(r.result));
    for (const auto &r : b.results)
      CHECK(std::any_of(a.results.begin(), a.results.end(),
                        [&](const Reached &x) { return obsLeq(r.result, x.result) == true; }));
  }
}

TEST_CASE("frontier cap marks truncation") {
  Expr e = compile("for x in {1, 2, 3} join {x}");
  CHECK(explore(e, 12, 2).truncated);
  CHECK_FALSE(explore(e, 12, 256).truncated);
}

TEST_CASE("converges") {
  auto r = converges(compile("head (fromN 0)\ndef fromN n = (n :: fromN (n + 1)) \\/ botv"), 64);
  REQUIRE(r);
  CHECK(decodeNat(r->result) == 0u);
  CHECK_FALSE(converges(compile("def loop u = loop u\nloop ()"), 24));
}
