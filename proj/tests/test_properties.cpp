#include <doctest.h>

#include "lambdav/printer.hpp"
#include "lambdav/properties.hpp"

#include <stdexcept>

using namespace lambdav;

TEST_CASE("random terms are closed and reproducible") {
  std::mt19937_64 a(5), b(5);
  for (int i = 0; i < 200; ++i) {
    Expr x = randomTerm(a), y = randomTerm(b);
    CHECK(x == y);
    CHECK(x.isClosed());
  }
}

TEST_CASE("corpus loads in name order") {
  auto c = loadCorpus(LAMBDAV_CORPUS_DIR);
  REQUIRE(c.size() >= 10);
  CHECK(c.front().name == "ambiguous");
  for (std::size_t i = 1; i < c.size(); ++i)
    CHECK(c[i - 1].name < c[i].name);
}

TEST_CASE("oracle budget") {
  CHECK(oracleBudget(0) == 5);
  CHECK(oracleBudget(8) == 45);
}

TEST_CASE("suites run with small settings and reproduce by seed") {
  SuiteOptions o;
  o.depth = 2;
  o.samples = 500;
  o.terms = 40;
  o.maxFuel = 12;
  for (const auto &name : suiteNames()) {
    CAPTURE(name);
    SuiteReport r = runSuite(name, o);
    CHECK(r.passed());
    CHECK(r.cases > 0);
    CHECK(r.seed == o.seed);
  }
  o.seed = 99;
  auto x = runSuite("expansion", o), y = runSuite("expansion", o);
  CHECK(x.cases == y.cases);
  CHECK(x.notes == y.notes);
  CHECK_THROWS_AS(runSuite("nope", o), std::invalid_argument);
}
