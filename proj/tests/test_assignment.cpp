#include <doctest.h>

#include "lambdav/assignment.hpp"
#include "lambdav/encoding.hpp"
#include "lambdav/surface.hpp"

#include <algorithm>

using namespace lambdav;

namespace {

Formula F(std::string_view s) { return parseFormula(s); }

CheckResult check(std::string_view src, std::string_view phi, std::size_t depth = 8) {
  return checkAssign({}, compile(src), F(phi), depth);
}

bool valid(const CheckResult &r) { return r && !validateDerivation(*r.derivation); }

bool contains(const std::vector<Formula> &fs, std::string_view phi) {
  return std::find(fs.begin(), fs.end(), F(phi)) != fs.end();
}

} // namespace

TEST_CASE("leaf rules") {
  auto r = check("def loop u = loop u\nloop ()", "bot", 0);
  REQUIRE(valid(r));
  CHECK(r.derivation->rule == AssignRule::TBot);
  CHECK(r.derivation->premises.empty());

  r = check("\\x. x x", "botv", 0);
  REQUIRE(valid(r));
  CHECK(r.derivation->rule == AssignRule::TBotV);

  r = check("'a", "'a");
  REQUIRE(valid(r));
  CHECK(r.derivation->rule == AssignRule::TSym);
  CHECK(valid(check("top", "top")));
  CHECK_FALSE(check("'a", "top"));
}

TEST_CASE("identity against a single clause") {
  auto r = check("\\x. x", "\\/ ['a -> 'a]");
  REQUIRE(valid(r));
  CHECK(r.derivation->rule == AssignRule::TFun);
  CHECK(printDerivation(*r.derivation).rfind("TFUN", 0) == 0);
  CHECK_FALSE(check("\\x. x", "\\/ ['a -> 'b]"));
  CHECK(valid(check("\\x. x", "\\/ ['a -> 'a, 'b -> 'b]")));
  CHECK(valid(check("\\x. x", "\\/ [('a, botv) -> ('a, botv)]")));
}

TEST_CASE("unprovable shapes report the bound") {
  auto r = check("{0}", "{'two}");
  CHECK_FALSE(r);
  CHECK(r.depthUsed == 8);
  CHECK_FALSE(check("'a", "'b"));
  CHECK_FALSE(check("'a", "{}"));
  CHECK_FALSE(check("def loop u = loop u\nloop ()", "botv"));
}

TEST_CASE("structural rules") {
  CHECK(valid(check("('a, 'b)", "('a, botv)")));
  CHECK(valid(check("{'a, 'b}", "{'b}")));
  CHECK(valid(check("{'a, 'b}", "{}")));
  CHECK(valid(check("'a \\/ 'b", "top")));
  CHECK(valid(check("let (x, y) = ('a, 'b) in y", "'b")));
  CHECK(valid(check("let 'a = 'a in 'ok", "'ok")));
  CHECK_FALSE(check("let 'a = 'b in 'ok", "'ok"));
  CHECK(valid(check("for x in {'a, 'b} join {(x, x)}", "{('a, 'a), ('b, 'b)}")));
  CHECK(valid(check("(\\f. f 'a) (\\x. (x, x))", "('a, 'a)")));
}

TEST_CASE("environments") {
  FormEnv env{{"x", F("('a, 'b)")}};
  auto r = checkAssign(env, var("x"), F("('a, botv)"), 4);
  REQUIRE(valid(r));
  CHECK(checkAssign(env, letPair("p", "q", var("x"), var("q")), F("'b"), 4));
  CHECK_FALSE(checkAssign(env, var("x"), F("('b, botv)"), 4));
  CHECK(checkAssign({{"f", F("\\/ ['a -> 'c]")}}, app(var("f"), symbol("a")), F("'c"), 4));
  CHECK_FALSE(checkAssign({{"f", F("\\/ ['a -> 'c]")}}, app(var("f"), symbol("b")), F("'c"), 4));
}

TEST_CASE("top propagation") {
  CHECK(valid(check("let (x, y) = top in 'a", "top")));
  CHECK(valid(check("let 'a = top in 'b", "top")));
  CHECK(valid(check("top 'a", "top")));
  CHECK(valid(check("(\\x. x) top", "top")));
  CHECK(valid(check("for x in top join {x}", "top")));
}

TEST_CASE("validator rejects tampered derivations") {
  auto r = check("('a, 'b)", "('a, 'b)");
  REQUIRE(valid(r));
  Derivation bad = *r.derivation;
  bad.formula = F("('b, 'a)");
  CHECK(validateDerivation(bad));
  Derivation wrongRule = *r.derivation;
  wrongRule.rule = AssignRule::TSet;
  CHECK(validateDerivation(wrongRule));
  CHECK(derivationSize(*r.derivation) >= 3);
  CHECK(derivationHeight(*r.derivation) >= 2);
}

TEST_CASE("printDerivation cuts long trees") {
  auto r = check("for x in {'a, 'b, 'c} join {(x, x)}", "{('a, 'a), ('b, 'b), ('c, 'c)}");
  REQUIRE(valid(r));
  std::string cut = printDerivation(*r.derivation, 3);
  CHECK(std::count(cut.begin(), cut.end(), '\n') == 4);
  CHECK(cut.find("distinct nodes in total") != std::string::npos);
}

TEST_CASE("synthesis") {
  auto fs = synthesizeForms(compile("('a, {'b})"), 4, 3);
  CHECK(contains(fs, "('a, {'b})"));
  CHECK(contains(fs, "botv"));
  CHECK(contains(fs, "bot"));
  for (const auto &f : fs)
    CHECK(checkAssign({}, compile("('a, {'b})"), f, 5));

  auto id = synthesizeForms(compile("\\x. x"), 4, 2);
  CHECK(contains(id, "\\/ ['a -> 'a]"));

  CHECK(evidentForm(compile("('a, ('b, 'c))"), 4, 2) == F("('a, botv)"));
  CHECK(evidentForm(top(), 4, 2) == fTop());
}

TEST_CASE("bounded logical approximation") {
  CHECK(logLeqBounded(compile("{'a}"), compile("{'a, 'b}"), 4, 3).holds);
  auto rep = logLeqBounded(compile("{'a, 'b}"), compile("{'a}"), 4, 3);
  CHECK_FALSE(rep.holds);
  REQUIRE(rep.witness);
  CHECK(formLeq(F("{'b}"), *rep.witness));
  CHECK(logLeqBounded(compile("bot"), compile("'a"), 4, 3).holds);
}
