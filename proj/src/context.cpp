#include "lambdav/context.hpp"

#include <stdexcept>

namespace lambdav {

EvalCtx EvalCtx::extended(std::uint32_t i) const {
  EvalCtx c = *this;
  c.path.push_back(i);
  return c;
}

EvalCtx EvalCtx::prefixed(std::uint32_t i) const {
  EvalCtx c;
  c.path.reserve(path.size() + 1);
  c.path.push_back(i);
  c.path.insert(c.path.end(), path.begin(), path.end());
  return c;
}

std::string formatPath(const EvalCtx &c) {
  if (c.path.empty())
    return "/";
  std::string out;
  for (auto i : c.path)
    out += "/" + std::to_string(i);
  return out;
}

EvalCtx parsePath(std::string_view text) {
  if (text.empty() || text.front() != '/')
    throw std::invalid_argument("context path must start with '/'");
  EvalCtx c;
  std::size_t pos = 1;
  while (pos < text.size()) {
    std::size_t next = text.find('/', pos);
    if (next == std::string_view::npos)
      next = text.size();
    std::string part(text.substr(pos, next - pos));
    if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("bad context path segment '" + part + "'");
    c.path.push_back(static_cast<std::uint32_t>(std::stoul(part)));
    pos = next + 1;
  }
  return c;
}

std::vector<std::uint32_t> evalChildren(const Expr &e) {
  switch (e.kind()) {
  case Kind::Pair:
  case Kind::App:
    if (e.child(0).isValue())
      return {0, 1};
    return {0};
  case Kind::Set: {
    std::vector<std::uint32_t> out(e.arity());
    for (std::uint32_t i = 0; i < out.size(); ++i)
      out[i] = i;
    return out;
  }
  case Kind::LetPair:
  case Kind::LetSym:
  case Kind::BigJoin:
    return {0};
  case Kind::Join:
    return {0, 1};
  default:
    return {};
  }
}

bool isEvalCtx(const Expr &e, const EvalCtx &c) {
  const Expr *cur = &e;
  for (auto i : c.path) {
    bool ok = false;
    for (auto j : evalChildren(*cur))
      ok = ok || j == i;
    if (!ok)
      return false;
    cur = &cur->child(i);
  }
  return true;
}

const Expr &subtermAt(const Expr &e, const EvalCtx &c) {
  const Expr *cur = &e;
  for (auto i : c.path) {
    if (i >= cur->arity())
      throw std::out_of_range("context path leaves the term");
    cur = &cur->child(i);
  }
  return *cur;
}

namespace {
Expr plugAt(const Expr &e, const std::vector<std::uint32_t> &path,
            std::size_t at, const Expr &filler) {
  if (at == path.size())
    return filler;
  auto i = path[at];
  if (i >= e.arity())
    throw std::out_of_range("context path leaves the term");
  std::vector<Expr> kids(e.children().begin(), e.children().end());
  kids[i] = plugAt(kids[i], path, at + 1, filler);
  return withChildren(e, std::move(kids));
}

void collectPositions(const Expr &e, EvalCtx &cur, std::vector<EvalCtx> &out) {
  out.push_back(cur);
  for (auto i : evalChildren(e)) {
    cur.path.push_back(i);
    collectPositions(e.child(i), cur, out);
    cur.path.pop_back();
  }
}
} // namespace

Expr plug(const Expr &e, const EvalCtx &c, const Expr &filler) {
  return plugAt(e, c.path, 0, filler);
}

std::vector<EvalCtx> evalPositions(const Expr &e) {
  std::vector<EvalCtx> out;
  EvalCtx cur;
  collectPositions(e, cur, out);
  return out;
}

bool isRedex(const Expr &e, const SymbolTable &table) {
  switch (e.kind()) {
  case Kind::App:
    return e.child(0).kind() == Kind::Lam && e.child(1).isValue();
  case Kind::LetPair:
    return e.child(0).kind() == Kind::Pair && e.child(0).isValue();
  case Kind::LetSym:
    return e.child(0).kind() == Kind::Sym &&
           table.leq(e.symbol(), e.child(0).symbol());
  case Kind::BigJoin:
    return e.child(0).kind() == Kind::Set && e.child(0).isValue();
  case Kind::Join:
    return e.child(0).isResult() && e.child(1).isResult();
  case Kind::Set:
    for (const auto &c : e.children())
      if (c.kind() == Kind::Bot)
        return true;
    return false;
  default:
    return false;
  }
}

std::vector<std::pair<EvalCtx, Expr>> decompose(const Expr &e,
                                                const SymbolTable &table) {
  std::vector<std::pair<EvalCtx, Expr>> out;
  for (auto &c : evalPositions(e)) {
    const Expr &sub = subtermAt(e, c);
    if ((sub.kind() == Kind::Top && !c.isHole()) || isRedex(sub, table))
      out.emplace_back(std::move(c), sub);
  }
  return out;
}

} // namespace lambdav
