#pragma once

#include "lambdav/expr.hpp"
#include "lambdav/formula.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace lambdav {

// Γ: variable name to value formula.
using FormEnv = std::map<std::string, Formula>;

enum class AssignRule : std::uint8_t {
  TSub,
  TBot,
  TBotV,
  TTop,
  TVar,
  TJoin,
  TSym,
  TPair,
  TSet,
  TFun,
  TLetSym,
  TLetPair,
  TForIn,
  TApp,
  TLetPairTop,
  TLetSymTop,
  TAppLTop,
  TAppRTop,
  TForInTop,
};

const char *assignRuleName(AssignRule r);

struct Derivation;
using DerivationPtr = std::shared_ptr<const Derivation>;

// One node of a Γ ⊢ e : φ derivation. Binders in `expr` are opened with
// the names that premises add to their environment.
struct Derivation {
  std::shared_ptr<const FormEnv> env;
  Expr expr;
  Formula formula;
  AssignRule rule;
  std::vector<DerivationPtr> premises;
};

std::size_t derivationSize(const Derivation &d); // distinct nodes
std::size_t derivationHeight(const Derivation &d);

// Checks every node against its rule schema. Returns the first problem
// found, or nullopt when the derivation is valid.
std::optional<std::string> validateDerivation(const Derivation &d,
                                              const SymbolTable &table = SymbolTable::discrete());

struct CheckResult {
  DerivationPtr derivation; // null when not found
  std::size_t depthUsed = 0; // evaluation fuel of the successful attempt, or the bound
  explicit operator bool() const { return derivation != nullptr; }
};

// Searches for Γ ⊢ e : φ. The search evaluates e at fuel 1..depth, letting
// each lambda collect the clauses its uses demand, and returns the first
// derivation that reaches φ. A failure only means none was found within
// `depth`.
CheckResult checkAssign(const FormEnv &env, const Expr &e, const Formula &phi,
                        std::size_t depth,
                        const SymbolTable &table = SymbolTable::discrete());

// Formulae of height <= height read off streamEval(e, fuel), each one
// certified by checkAssign at depth `fuel + 1`. Sorted, duplicate-free.
std::vector<Formula> synthesizeForms(const Expr &e, std::size_t fuel, std::size_t height,
                                     const SymbolTable &table = SymbolTable::discrete());

// The formula a closed result evidently has, with lambdas probed by
// application to small witness values. Parts that do not fit in `height`
// are cut down to ⊥_v.
Formula evidentForm(const Expr &result, std::size_t fuel, std::size_t height,
                    const SymbolTable &table = SymbolTable::discrete());

struct LogLeqReport {
  bool holds = true;
  std::optional<Formula> witness; // a formula of e1 not certified for e2
  std::size_t checked = 0;
};

// Bounded e1 ≤log e2: every synthesized formula of e1 is certified for e2.
LogLeqReport logLeqBounded(const Expr &e1, const Expr &e2, std::size_t fuel,
                           std::size_t height,
                           const SymbolTable &table = SymbolTable::discrete());

// Indented tree, one judgement per line; stops after maxLines.
std::string printDerivation(const Derivation &d, std::size_t maxLines = 400);

} // namespace lambdav
