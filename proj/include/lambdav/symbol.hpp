#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lambdav {

// Interned base constant. Names are stored verbatim: identifiers as-is,
// string literals with their surrounding quotes, unit as "()".
class Symbol {
public:
  Symbol() = default;
  explicit Symbol(std::string_view name);
  static Symbol fromId(std::uint32_t id);

  const std::string &name() const;
  std::uint32_t id() const { return id_; }

  // Deterministic across runs (depends only on the name).
  std::size_t stableHash() const;

  bool isString() const;
  bool isUnit() const;

  friend bool operator==(Symbol a, Symbol b) { return a.id_ == b.id_; }
  friend bool operator!=(Symbol a, Symbol b) { return a.id_ != b.id_; }

private:
  std::uint32_t id_ = 0;
};

// Total order by name, used wherever output must not depend on interning order.
inline bool nameLess(Symbol a, Symbol b) { return a.name() < b.name(); }

std::ostream &operator<<(std::ostream &os, Symbol s);

namespace sym {
Symbol unit();
Symbol trueSym();
Symbol falseSym();
Symbol nil();
Symbol cons();
Symbol zero();
Symbol succ();
} // namespace sym

class SymbolTableError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Partial join on symbols. Every symbol joins with itself; any other pair is
// undefined unless listed.
class SymbolTable {
public:
  SymbolTable() = default;

  static const SymbolTable &discrete();

  // Lines of the form `a b -> c`; `#` starts a comment.
  static SymbolTable parse(std::string_view text);
  static SymbolTable load(const std::string &path);

  void define(Symbol a, Symbol b, Symbol result);

  std::optional<Symbol> join(Symbol a, Symbol b) const;
  bool leq(Symbol a, Symbol b) const;

  // Symbols mentioned by explicit entries, sorted by name.
  std::vector<Symbol> alphabet() const;

  // Commutativity, associativity and idempotence over the alphabet.
  // Returns one message per violation.
  std::vector<std::string> lawViolations() const;

  bool empty() const { return joins_.empty(); }

private:
  std::map<std::pair<std::uint32_t, std::uint32_t>, Symbol> joins_;
};

} // namespace lambdav

template <> struct std::hash<lambdav::Symbol> {
  std::size_t operator()(lambdav::Symbol s) const noexcept { return s.id(); }
};
