#include "lambdav/symbol.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace lambdav {

namespace {

struct Interner {
  std::mutex mutex;
  std::deque<std::string> names;
  std::unordered_map<std::string_view, std::uint32_t> ids;

  Interner() { intern(""); }

  std::uint32_t intern(std::string_view name) {
    std::lock_guard lock(mutex);
    if (auto it = ids.find(name); it != ids.end())
      return it->second;
    names.emplace_back(name);
    auto id = static_cast<std::uint32_t>(names.size() - 1);
    ids.emplace(names.back(), id);
    return id;
  }

  const std::string &name(std::uint32_t id) {
    std::lock_guard lock(mutex);
    return names[id];
  }
};

Interner &interner() {
  static Interner instance;
  return instance;
}

} // namespace

Symbol::Symbol(std::string_view name) : id_(interner().intern(name)) {}

Symbol Symbol::fromId(std::uint32_t id) {
  Symbol s;
  s.id_ = id;
  return s;
}

const std::string &Symbol::name() const { return interner().name(id_); }

std::size_t Symbol::stableHash() const {
  // FNV-1a
  std::size_t h = 1469598103934665603ull;
  for (unsigned char c : name()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

bool Symbol::isString() const {
  const auto &n = name();
  return n.size() >= 2 && n.front() == '"' && n.back() == '"';
}

bool Symbol::isUnit() const { return name() == "()"; }

std::ostream &operator<<(std::ostream &os, Symbol s) { return os << s.name(); }

namespace sym {
Symbol unit() {
  static const Symbol s("()");
  return s;
}
Symbol trueSym() {
  static const Symbol s("true");
  return s;
}
Symbol falseSym() {
  static const Symbol s("false");
  return s;
}
Symbol nil() {
  static const Symbol s("nil");
  return s;
}
Symbol cons() {
  static const Symbol s("cons");
  return s;
}
Symbol zero() {
  static const Symbol s("zero");
  return s;
}
Symbol succ() {
  static const Symbol s("succ");
  return s;
}
} // namespace sym

const SymbolTable &SymbolTable::discrete() {
  static const SymbolTable table;
  return table;
}

void SymbolTable::define(Symbol a, Symbol b, Symbol result) {
  joins_[{a.id(), b.id()}] = result;
}

std::optional<Symbol> SymbolTable::join(Symbol a, Symbol b) const {
  if (a == b)
    return a;
  if (auto it = joins_.find({a.id(), b.id()}); it != joins_.end())
    return it->second;
  if (auto it = joins_.find({b.id(), a.id()}); it != joins_.end())
    return it->second;
  return std::nullopt;
}

bool SymbolTable::leq(Symbol a, Symbol b) const {
  auto j = join(a, b);
  return j && *j == b;
}

std::vector<Symbol> SymbolTable::alphabet() const {
  std::set<std::uint32_t> seen;
  std::vector<Symbol> out;
  auto add = [&](Symbol s) {
    if (seen.insert(s.id()).second)
      out.push_back(s);
  };
  for (const auto &[key, result] : joins_) {
    add(Symbol::fromId(key.first));
    add(Symbol::fromId(key.second));
    add(result);
  }
  std::sort(out.begin(), out.end(), nameLess);
  return out;
}

std::vector<std::string> SymbolTable::lawViolations() const {
  std::vector<std::string> problems;
  auto show = [](std::optional<Symbol> s) {
    return s ? s->name() : std::string("undefined");
  };
  const auto alpha = alphabet();
  for (Symbol a : alpha) {
    if (join(a, a) != a)
      problems.push_back("idempotence fails for " + a.name());
    for (Symbol b : alpha) {
      auto ab = joins_.find({a.id(), b.id()});
      auto ba = joins_.find({b.id(), a.id()});
      if (ab != joins_.end() && ba != joins_.end() && ab->second != ba->second)
        problems.push_back("commutativity fails for " + a.name() + ", " +
                           b.name());
      for (Symbol c : alpha) {
        auto ab_ = join(a, b);
        auto bc_ = join(b, c);
        std::optional<Symbol> left = ab_ ? join(*ab_, c) : std::nullopt;
        std::optional<Symbol> right = bc_ ? join(a, *bc_) : std::nullopt;
        if (left != right)
          problems.push_back("associativity fails for " + a.name() + ", " +
                             b.name() + ", " + c.name() + ": " + show(left) +
                             " vs " + show(right));
      }
    }
  }
  return problems;
}

SymbolTable SymbolTable::parse(std::string_view text) {
  SymbolTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream words(line);
    std::vector<std::string> toks;
    for (std::string w; words >> w;)
      toks.push_back(w);
    if (toks.empty())
      continue;
    if (toks.size() != 4 || toks[2] != "->")
      throw SymbolTableError("symbol table line " + std::to_string(lineNo) +
                             ": expected `a b -> c`");
    table.define(Symbol(toks[0]), Symbol(toks[1]), Symbol(toks[3]));
  }
  return table;
}

SymbolTable SymbolTable::load(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw SymbolTableError("cannot open symbol table " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

} // namespace lambdav
