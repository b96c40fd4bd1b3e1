#include <doctest.h>

#include "lambdav/formula.hpp"

using namespace lambdav;

namespace {

Formula F(std::string_view s) { return parseFormula(s); }

} // namespace

TEST_CASE("formula text round-trips") {
  for (const char *s : {"bot", "top", "botv", "'a", "('a, botv)", "{'a, 'b}", "{}",
                        "\\/ ['a -> 'b]", "\\/ []", "\\/ ['a -> 'b, ('a, 'a) -> top]"}) {
    CAPTURE(s);
    CHECK(printFormula(F(s)) == s);
  }
  CHECK(F("{'b, 'a, 'a}") == F("{'a, 'b}"));
  CHECK(F("2") == fNat(2));
  CHECK_THROWS_AS(F("('a, bot)"), FormulaParseError);
  CHECK_THROWS_AS(F("\\/ ['a ->"), FormulaParseError);
  CHECK_THROWS_AS(F("'a 'b"), FormulaParseError);
}

TEST_CASE("order") {
  CHECK(formLeq(F("bot"), F("'a")));
  CHECK(formLeq(F("botv"), F("'a")));
  CHECK(formLeq(F("'a"), F("top")));
  CHECK_FALSE(formLeq(F("'a"), F("'b")));
  CHECK_FALSE(formLeq(F("top"), F("'a")));
  CHECK(formLeq(F("{'a}"), F("{'a, 'b}")));
  CHECK_FALSE(formLeq(F("{'a, 'b}"), F("{'a}")));
  CHECK(formLeq(F("('a, botv)"), F("('a, 'b)")));
  CHECK(formLeq(F("\\/ []"), F("\\/ ['a -> 'b]")));
  CHECK(formLeq(F("\\/ ['a -> 'b]"), F("\\/ [botv -> 'b]")));
  CHECK_FALSE(formLeq(F("\\/ [botv -> 'b]"), F("\\/ ['a -> 'b]")));
  CHECK(formLeq(F("\\/ ['a -> ('b, botv)]"), F("\\/ ['a -> ('b, botv), 'a -> (botv, 'b)]")));
  CHECK(formLeq(F("\\/ ['a -> ('b, 'b)]"), F("\\/ ['a -> ('b, botv), 'a -> (botv, 'b)]")));
  CHECK_FALSE(formLeq(F("'a"), F("{'a}")));
}

TEST_CASE("join") {
  CHECK(formJoin(F("'a"), F("'b")) == fTop());
  CHECK(formJoin(F("'a"), F("botv")) == F("'a"));
  CHECK(formJoin(F("{'a}"), F("{'b}")) == F("{'a, 'b}"));
  CHECK(formJoin(F("('a, botv)"), F("(botv, 'b)")) == F("('a, 'b)"));
  CHECK(formJoin(F("'a"), F("{}")) == fTop());
  CHECK(formJoin(F("bot"), F("'a")) == F("'a"));
  auto t = SymbolTable::parse("lo hi -> hi\n");
  CHECK(formJoin(F("'lo"), F("'hi"), t) == F("'hi"));
  CHECK(formLeq(F("'lo"), F("'hi"), t));
}

TEST_CASE("lifting") {
  CHECK(formLiftPair(F("'a"), F("bot")) == fBot());
  CHECK(formLiftPair(F("'a"), F("top")) == fTop());
  CHECK(formLiftPair(F("'a"), F("'b")) == F("('a, 'b)"));
  CHECK(formLiftSet(F("bot")) == fBot());
  CHECK(formLiftSet(F("top")) == fTop());
  CHECK(formLiftSet(F("'a")) == F("{'a}"));
}

TEST_CASE("size") {
  CHECK(formSize(F("bot")) == 1);
  CHECK(formSize(F("top")) == 1);
  CHECK(formSize(F("'a")) == 1);
  CHECK(formSize(F("('a, {'b})")) == 3);
  CHECK(formSize(F("\\/ ['a -> 'b]")) == 2);
}

TEST_CASE("enumeration") {
  std::vector<Symbol> syms{Symbol("a"), Symbol("b")};
  CHECK(enumerateForms(0, syms).empty());
  auto d1 = enumerateForms(1, syms);
  CHECK(d1.size() == 5);
  auto d2 = enumerateForms(2, syms);
  CHECK(d2.size() == 37);
  for (const auto &f : d2)
    CHECK(formSize(f) <= 2);
  CHECK(enumerateForms(3, syms).size() == 3157);
}

TEST_CASE("random formulae respect their bounds") {
  std::mt19937_64 rng(7);
  std::vector<Symbol> syms{Symbol("a")};
  RandomFormOptions o;
  o.height = 3;
  o.valueOnly = true;
  for (int i = 0; i < 200; ++i) {
    Formula f = randomForm(rng, syms, o);
    CHECK(f.isValue());
    CHECK(formSize(f) <= 3);
  }
}
