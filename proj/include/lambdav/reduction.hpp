#pragma once

#include "lambdav/context.hpp"
#include "lambdav/expr.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lambdav {

Expr resultJoin(const Expr &r1, const Expr &r2,
                const SymbolTable &table = SymbolTable::discrete());
Expr compLift(const Expr &r1, const Expr &r2);

// Normal form modulo the equations the semantics never observes: set
// elements are sorted and deduplicated, nested joins are flattened, sorted
// and deduplicated. Used to compare results up to element order.
Expr canonical(const Expr &e);

enum class StepRule {
  Beta,
  LetPairBeta,
  LetSymThreshold,
  BigJoinExpand,
  JoinOfResults,
  SetDropBot,
  TopPropagate,
  Approximate,
};

const char *ruleName(StepRule r);
std::optional<StepRule> parseRuleName(std::string_view name);

struct StepChoice {
  EvalCtx context;
  StepRule rule = StepRule::Approximate;
  friend bool operator==(const StepChoice &, const StepChoice &) = default;
};

using Trace = std::vector<StepChoice>;

class InvalidStep : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

std::vector<StepChoice> enumerateSteps(const Expr &e,
                                       const SymbolTable &table = SymbolTable::discrete());

// Throws InvalidStep when the choice does not apply to e.
Expr step(const Expr &e, const StepChoice &c,
          const SymbolTable &table = SymbolTable::discrete());

Expr replay(const Expr &e, const Trace &trace,
            const SymbolTable &table = SymbolTable::discrete());

// One `(Rule, /path)` per line.
std::string formatTrace(const Trace &trace);
Trace parseTrace(std::string_view text);

struct Reached {
  Expr result;
  Trace trace; // replays from the explored term to `result`
};

struct ExploreReport {
  std::vector<Reached> results; // distinct up to canonical(), sorted by trace length
  bool truncated = false;
  std::size_t statesVisited = 0;

  bool contains(const Expr &r) const;
};

// Results reachable within `budget` steps. Reachability is computed
// compositionally: each subterm's reachable results (with the shortest trace
// found) are combined according to its evaluation contexts, and each
// subterm keeps at most `frontierCap` results.
ExploreReport explore(const Expr &e, std::size_t budget, std::size_t frontierCap,
                      const SymbolTable &table = SymbolTable::discrete());

// Literal breadth-first search over enumerateSteps, deduplicating states by
// alpha-equivalence. Never takes two Approximate steps in a row at the same
// position. Feasible only for small terms.
ExploreReport exploreBreadthFirst(const Expr &e, std::size_t budget,
                                  std::size_t frontierCap,
                                  const SymbolTable &table = SymbolTable::discrete());

// Some non-⊥ result within the budget.
std::optional<Reached> converges(const Expr &e, std::size_t budget,
                                 std::size_t frontierCap = 256,
                                 const SymbolTable &table = SymbolTable::discrete());

} // namespace lambdav
