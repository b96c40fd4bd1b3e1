#pragma once

#include "lambdav/expr.hpp"

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

namespace lambdav {

struct Observation {
  std::size_t fuel = 0;
  Expr result;
};

// Fuel-indexed evaluator. Every construct evaluates its parts at the same
// fuel; only the body of a beta-reduction runs at one unit less.
class StreamEvaluator {
public:
  explicit StreamEvaluator(const SymbolTable &table = SymbolTable::discrete());

  Expr eval(const Expr &e, std::size_t fuel);

private:
  struct Key {
    Expr e;
    std::size_t fuel;
    bool operator==(const Key &) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key &k) const { return k.e.hash() ^ (k.fuel * 0x9e3779b97f4a7c15ull); }
  };
  const SymbolTable &table_;
  std::unordered_map<Key, Expr, KeyHash> memo_;

  Expr compute(const Expr &e, std::size_t fuel);
};

Expr streamEval(const Expr &e, std::size_t fuel,
                const SymbolTable &table = SymbolTable::discrete());

// One observation per fuel 0..maxFuel, or only the change-points.
std::vector<Observation> observe(const Expr &e, std::size_t maxFuel,
                                 bool changePointsOnly = true,
                                 const SymbolTable &table = SymbolTable::discrete());

// Streaming order on first-order results; nullopt when a lambda is involved.
std::optional<bool> obsLeq(const Expr &r1, const Expr &r2,
                           const SymbolTable &table = SymbolTable::discrete());

bool containsLambda(const Expr &e);

} // namespace lambdav
