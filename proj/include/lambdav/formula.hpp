#pragma once

#include "lambdav/symbol.hpp"

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lambdav {

enum class FKind : std::uint8_t { Bot, Top, BotV, Sym, Pair, Set, Fun };

struct FNode;

// Computation formula (⊥, ⊤ or a value formula). Sets and clause lists are
// kept sorted and duplicate-free, so structural equality is canonical.
class Formula {
public:
  Formula(); // ⊥

  FKind kind() const;
  std::size_t hash() const;
  Symbol symbol() const;
  std::span<const Formula> children() const; // Pair: 2, Set: elements
  const Formula &child(std::size_t i) const;

  struct Clause {
    const Formula &input;
    const Formula &output;
  };
  std::size_t clauseCount() const;
  Clause clause(std::size_t i) const;

  bool isValue() const { return kind() != FKind::Bot && kind() != FKind::Top; }

  friend bool operator==(const Formula &a, const Formula &b);
  friend bool operator!=(const Formula &a, const Formula &b) { return !(a == b); }
  friend int compare(const Formula &a, const Formula &b);

  const FNode *raw() const { return node_.get(); }

private:
  explicit Formula(std::shared_ptr<const FNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const FNode> node_;
  friend Formula makeFormula(FKind, Symbol, std::vector<Formula>);
};

Formula fBot();
Formula fTop();
Formula fBotV();
Formula fSym(Symbol s);
Formula fSym(std::string_view name);
Formula fPair(Formula a, Formula b); // both must be value formulae
Formula fSet(std::vector<Formula> elems);
Formula fFun(std::vector<std::pair<Formula, Formula>> clauses);
Formula fNat(std::uint64_t n);

bool formLeq(const Formula &a, const Formula &b,
             const SymbolTable &table = SymbolTable::discrete());
bool formEquiv(const Formula &a, const Formula &b,
               const SymbolTable &table = SymbolTable::discrete());
Formula formJoin(const Formula &a, const Formula &b,
                 const SymbolTable &table = SymbolTable::discrete());
Formula formJoinAll(std::span<const Formula> fs,
                    const SymbolTable &table = SymbolTable::discrete());
Formula formLiftPair(const Formula &a, const Formula &b);
Formula formLiftSet(const Formula &a);
std::size_t formSize(const Formula &f);

struct EnumLimits {
  std::size_t maxSetElems = 2;
  std::size_t maxClauses = 1;
};

// Every formula of height <= depth over the given symbols, within limits.
// The order is deterministic.
std::vector<Formula> enumerateForms(std::size_t depth, const std::vector<Symbol> &symbols,
                                    EnumLimits limits = {});

struct RandomFormOptions {
  std::size_t height = 3;
  std::size_t maxSetElems = 3;
  std::size_t maxClauses = 4;
  bool valueOnly = false;
};

Formula randomForm(std::mt19937_64 &rng, const std::vector<Symbol> &symbols,
                   const RandomFormOptions &opts);

class FormulaParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

//   bot | top | botv | 'sym | "str" | true | false | () | n
//   (τ, τ) | {τ, ...} | \/ [τ -> φ, ...]
Formula parseFormula(std::string_view text);
std::string printFormula(const Formula &f);

} // namespace lambdav

template <> struct std::hash<lambdav::Formula> {
  std::size_t operator()(const lambdav::Formula &f) const noexcept { return f.hash(); }
};
