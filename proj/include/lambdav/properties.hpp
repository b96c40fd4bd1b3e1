#pragma once

#include "lambdav/expr.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace lambdav {

struct CorpusProgram {
  std::string name; // file stem
  Expr expr;
};

// Every *.lv file in dir, compiled, sorted by name.
std::vector<CorpusProgram> loadCorpus(const std::string &dir);

// Reduction-step budget under which explore must find streamEval(p, n).
std::size_t oracleBudget(std::size_t fuel);

// Budget used when asking converges for a certified program.
inline constexpr std::size_t kAdequacyBudget = 64;

// Subject expansion: successor formulae are synthesized at this fuel and
// height, then re-checked for the predecessor at kExpansionDepth.
inline constexpr std::size_t kExpansionFuel = 6;
inline constexpr std::size_t kExpansionHeight = 3;
inline constexpr std::size_t kExpansionDepth = 8;

struct RandomTermOptions {
  std::size_t size = 7;       // rough node budget
  double redexBias = 0.5;     // chance that an application is a β-redex
};

Expr randomTerm(std::mt19937_64 &rng, const RandomTermOptions &opts = {});

struct SuiteOptions {
  std::uint64_t seed = 20240601;
  std::size_t depth = 3;           // order suite: enumeration depth
  std::size_t samples = 100000;    // order suite: sampled triples
  std::size_t terms = 1000;        // expansion suite: random terms
  std::size_t maxFuel = 64;        // monotonicity suite: n < maxFuel
  std::size_t oracleFuel = 8;      // oracle suite: n <= oracleFuel
  std::string corpusDir;
};

struct SuiteReport {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::uint64_t seed = 0;
  double seconds = 0;
  std::vector<std::string> notes; // first few failures, plus summary facts
  bool passed() const { return failures == 0; }
};

const std::vector<std::string> &suiteNames();

// Throws std::invalid_argument for an unknown suite name.
SuiteReport runSuite(const std::string &name, const SuiteOptions &opts);

} // namespace lambdav
