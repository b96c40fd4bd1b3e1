#include "lambdav/formula.hpp"

#include <algorithm>
#include <unordered_set>

namespace lambdav {

namespace {

void subsetsUpTo(const std::vector<Formula> &pool, std::size_t maxSize, std::size_t start,
                 std::vector<Formula> &cur, std::vector<std::vector<Formula>> &out) {
  out.push_back(cur);
  if (cur.size() == maxSize)
    return;
  for (std::size_t i = start; i < pool.size(); ++i) {
    cur.push_back(pool[i]);
    subsetsUpTo(pool, maxSize, i + 1, cur, out);
    cur.pop_back();
  }
}

} // namespace

std::vector<Formula> enumerateForms(std::size_t depth, const std::vector<Symbol> &symbols,
                                    EnumLimits limits) {
  if (depth == 0)
    return {};
  std::vector<Formula> values{fBotV()};
  for (Symbol s : symbols)
    values.push_back(fSym(s));
  for (std::size_t h = 2; h <= depth; ++h) {
    std::vector<Formula> comps{fBot(), fTop()};
    comps.insert(comps.end(), values.begin(), values.end());
    std::vector<Formula> next = values;
    std::unordered_set<Formula> seen(values.begin(), values.end());
    auto add = [&](Formula f) {
      if (seen.insert(f).second)
        next.push_back(std::move(f));
    };
    for (const auto &a : values)
      for (const auto &b : values)
        add(fPair(a, b));
    std::vector<std::vector<Formula>> subsets;
    std::vector<Formula> cur;
    subsetsUpTo(values, limits.maxSetElems, 0, cur, subsets);
    for (auto &s : subsets)
      add(fSet(s));
    std::vector<std::pair<Formula, Formula>> clauses;
    for (const auto &in : values)
      for (const auto &out : comps)
        clauses.emplace_back(in, out);
    std::vector<std::vector<std::size_t>> picks{{}};
    for (std::size_t k = 0; k < limits.maxClauses; ++k) {
      std::vector<std::vector<std::size_t>> grown;
      for (const auto &p : picks) {
        if (p.size() != k)
          continue;
        for (std::size_t i = p.empty() ? 0 : p.back() + 1; i < clauses.size(); ++i) {
          auto q = p;
          q.push_back(i);
          grown.push_back(std::move(q));
        }
      }
      picks.insert(picks.end(), grown.begin(), grown.end());
    }
    for (const auto &p : picks) {
      std::vector<std::pair<Formula, Formula>> cs;
      for (auto i : p)
        cs.push_back(clauses[i]);
      add(fFun(std::move(cs)));
    }
    values = std::move(next);
  }
  std::vector<Formula> all{fBot(), fTop()};
  all.insert(all.end(), values.begin(), values.end());
  return all;
}

namespace {
Formula randomValue(std::mt19937_64 &rng, const std::vector<Symbol> &symbols,
                    const RandomFormOptions &o, std::size_t height);

Formula randomComp(std::mt19937_64 &rng, const std::vector<Symbol> &symbols,
                   const RandomFormOptions &o, std::size_t height) {
  std::uniform_int_distribution<int> pick(0, 9);
  int r = pick(rng);
  if (r == 0)
    return fBot();
  if (r == 1)
    return fTop();
  return randomValue(rng, symbols, o, height);
}

Formula randomValue(std::mt19937_64 &rng, const std::vector<Symbol> &symbols,
                    const RandomFormOptions &o, std::size_t height) {
  std::size_t leaves = 1 + symbols.size();
  if (height <= 1) {
    std::uniform_int_distribution<std::size_t> pick(0, leaves - 1);
    std::size_t i = pick(rng);
    return i == 0 ? fBotV() : fSym(symbols[i - 1]);
  }
  std::uniform_int_distribution<int> shape(0, 4);
  switch (shape(rng)) {
  case 0:
    return randomValue(rng, symbols, o, 1);
  case 1:
    return fPair(randomValue(rng, symbols, o, height - 1),
                 randomValue(rng, symbols, o, height - 1));
  case 2: {
    std::uniform_int_distribution<std::size_t> n(0, o.maxSetElems);
    std::vector<Formula> elems;
    for (std::size_t k = n(rng); k > 0; --k)
      elems.push_back(randomValue(rng, symbols, o, height - 1));
    return fSet(std::move(elems));
  }
  default: {
    std::uniform_int_distribution<std::size_t> n(0, o.maxClauses);
    std::vector<std::pair<Formula, Formula>> cs;
    for (std::size_t k = n(rng); k > 0; --k)
      cs.emplace_back(randomValue(rng, symbols, o, height - 1),
                      randomComp(rng, symbols, o, height - 1));
    return fFun(std::move(cs));
  }
  }
}
} // namespace

Formula randomForm(std::mt19937_64 &rng, const std::vector<Symbol> &symbols,
                   const RandomFormOptions &opts) {
  if (opts.valueOnly)
    return randomValue(rng, symbols, opts, opts.height);
  return randomComp(rng, symbols, opts, opts.height);
}

} // namespace lambdav
