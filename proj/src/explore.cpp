#include "lambdav/reduction.hpp"

#include <algorithm>
#include <deque>
#include <memory>
#include <unordered_map>
#include <unordered_set>

namespace lambdav {

namespace {

struct Entry {
  Expr result;
  Trace trace;
  // The trace already ends the whole program in ⊤ (a TopPropagate fired).
  bool escaped = false;
};

using Entries = std::vector<Entry>;

Trace lifted(const Trace &t, std::uint32_t i) {
  Trace out;
  out.reserve(t.size());
  for (const auto &c : t)
    out.push_back({c.context.prefixed(i), c.rule});
  return out;
}

Trace concat(Trace a, const Trace &b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

class Accumulator {
public:
  void add(Expr result, Trace trace, bool escaped = false) {
    Expr key = canonical(result);
    auto k = std::make_pair(key, escaped);
    auto it = index_.find(k);
    if (it == index_.end()) {
      index_.emplace(k, entries_.size());
      entries_.push_back({std::move(result), std::move(trace), escaped});
    } else if (trace.size() < entries_[it->second].trace.size()) {
      entries_[it->second] = {std::move(result), std::move(trace), escaped};
    }
  }

  Entries take() { return std::move(entries_); }

private:
  struct KeyHash {
    std::size_t operator()(const std::pair<Expr, bool> &k) const {
      return k.first.hash() * 2 + k.second;
    }
  };
  std::unordered_map<std::pair<Expr, bool>, std::size_t, KeyHash> index_;
  Entries entries_;
};

class Explorer {
public:
  Explorer(const SymbolTable &table, std::size_t cap) : table_(table), cap_(cap) {}

  bool truncated = false;
  std::size_t visited = 0;

  const Entries &reach(const Expr &e, std::size_t budget) {
    auto it = memo_.find(e);
    if (it != memo_.end() && it->second.budget >= budget) {
      if (it->second.budget == budget)
        return *it->second.entries;
      auto filtered = std::make_shared<Entries>();
      for (const auto &en : *it->second.entries)
        if (en.trace.size() <= budget)
          filtered->push_back(en);
      scratch_.push_back(filtered);
      return *filtered;
    }
    ++visited;
    auto entries = std::make_shared<Entries>(compute(e, budget));
    memo_[e] = {budget, entries};
    return *entries;
  }

private:
  struct Memo {
    std::size_t budget;
    std::shared_ptr<Entries> entries;
  };
  const SymbolTable &table_;
  std::size_t cap_;
  std::unordered_map<Expr, Memo> memo_;
  std::vector<std::shared_ptr<Entries>> scratch_;

  // A subterm at child i reached ⊤: the whole program steps to ⊤.
  void addTop(Accumulator &acc, const Trace &prefix, const Entry &en,
              std::uint32_t i, std::size_t budget) {
    Trace t = concat(prefix, lifted(en.trace, i));
    if (!en.escaped)
      t.push_back({EvalCtx{{i}}, StepRule::TopPropagate});
    if (t.size() <= budget)
      acc.add(top(), std::move(t), true);
  }

  // After a contraction at the root, continue with the contractum.
  void continueWith(Accumulator &acc, const Trace &prefix, const Expr &next,
                    std::size_t budget) {
    if (prefix.size() > budget)
      return;
    for (const auto &en : reach(next, budget - prefix.size()))
      acc.add(en.result, concat(prefix, en.trace), en.escaped);
  }

  Entries compute(const Expr &e, std::size_t budget) {
    Accumulator acc;
    if (e.kind() == Kind::Bot) {
      acc.add(bot(), {});
      return acc.take();
    }
    if (e.isResult())
      acc.add(e, {});
    if (budget >= 1)
      acc.add(bot(), {{EvalCtx{}, StepRule::Approximate}});
    if (e.isResult() || budget == 0)
      return finish(acc.take());

    switch (e.kind()) {
    case Kind::Pair:
    case Kind::App: {
      const Entries left = reach(e.child(0), budget);
      for (const auto &ea : left) {
        if (ea.result.kind() == Kind::Top) {
          addTop(acc, {}, ea, 0, budget);
          continue;
        }
        if (!ea.result.isValue())
          continue;
        Trace ta = lifted(ea.trace, 0);
        const Entries right = reach(e.child(1), budget - ta.size());
        for (const auto &eb : right) {
          if (eb.result.kind() == Kind::Top) {
            addTop(acc, ta, eb, 1, budget);
            continue;
          }
          if (!eb.result.isValue())
            continue;
          Trace t = concat(ta, lifted(eb.trace, 1));
          if (e.kind() == Kind::Pair) {
            acc.add(pair(ea.result, eb.result), std::move(t));
          } else if (ea.result.kind() == Kind::Lam) {
            t.push_back({EvalCtx{}, StepRule::Beta});
            continueWith(acc, t, instantiate(ea.result.child(0), eb.result), budget);
          }
        }
      }
      break;
    }
    case Kind::Set:
      setCase(acc, e, budget);
      break;
    case Kind::LetPair:
    case Kind::LetSym:
    case Kind::BigJoin: {
      const Entries scrut = reach(e.child(0), budget);
      for (const auto &es : scrut) {
        const Expr &r = es.result;
        if (r.kind() == Kind::Top) {
          addTop(acc, {}, es, 0, budget);
          continue;
        }
        Trace t = lifted(es.trace, 0);
        if (e.kind() == Kind::LetPair && r.kind() == Kind::Pair && r.isValue()) {
          t.push_back({EvalCtx{}, StepRule::LetPairBeta});
          continueWith(acc, t, instantiate2(e.child(1), r.child(0), r.child(1)), budget);
        } else if (e.kind() == Kind::LetSym && r.kind() == Kind::Sym &&
                   table_.leq(e.symbol(), r.symbol())) {
          t.push_back({EvalCtx{}, StepRule::LetSymThreshold});
          continueWith(acc, t, e.child(1), budget);
        } else if (e.kind() == Kind::BigJoin && r.kind() == Kind::Set && r.isValue()) {
          t.push_back({EvalCtx{}, StepRule::BigJoinExpand});
          std::vector<Expr> arms;
          for (const auto &v : r.children())
            arms.push_back(instantiate(e.child(1), v));
          continueWith(acc, t, joinAll(arms), budget);
        }
      }
      break;
    }
    case Kind::Join: {
      const Entries left = reach(e.child(0), budget);
      for (const auto &ea : left) {
        if (ea.result.kind() == Kind::Top) {
          addTop(acc, {}, ea, 0, budget);
          continue;
        }
        Trace ta = lifted(ea.trace, 0);
        if (ta.size() >= budget)
          continue;
        const Entries right = reach(e.child(1), budget - ta.size() - 1);
        for (const auto &eb : right) {
          if (eb.result.kind() == Kind::Top) {
            addTop(acc, {}, eb, 1, budget);
            continue;
          }
          Trace t = concat(ta, lifted(eb.trace, 1));
          t.push_back({EvalCtx{}, StepRule::JoinOfResults});
          acc.add(resultJoin(ea.result, eb.result, table_), std::move(t));
        }
      }
      break;
    }
    default:
      break;
    }
    return finish(acc.take());
  }

  void setCase(Accumulator &acc, const Expr &e, std::size_t budget) {
    struct Partial {
      std::vector<Expr> kept;
      Trace trace;
      std::size_t drops = 0;
    };
    std::vector<Partial> partials{{}};
    for (std::uint32_t i = 0; i < e.arity(); ++i) {
      std::vector<Partial> next;
      for (const auto &p : partials) {
        std::size_t used = p.trace.size() + p.drops;
        if (used > budget)
          continue;
        for (const auto &en : reach(e.child(i), budget - used)) {
          if (en.result.kind() == Kind::Top) {
            addTop(acc, p.trace, en, i, budget);
            continue;
          }
          Partial q = p;
          q.trace = concat(q.trace, lifted(en.trace, i));
          if (en.result.kind() == Kind::Bot)
            ++q.drops;
          else
            q.kept.push_back(en.result);
          if (q.trace.size() + q.drops <= budget)
            next.push_back(std::move(q));
        }
      }
      std::stable_sort(next.begin(), next.end(), [](const Partial &a, const Partial &b) {
        return a.trace.size() + a.drops < b.trace.size() + b.drops;
      });
      if (next.size() > cap_) {
        truncated = true;
        next.resize(cap_);
      }
      partials = std::move(next);
    }
    for (auto &p : partials) {
      for (std::size_t k = 0; k < p.drops; ++k)
        p.trace.push_back({EvalCtx{}, StepRule::SetDropBot});
      acc.add(setLit(p.kept), std::move(p.trace));
    }
  }

  Entries finish(Entries entries) {
    std::stable_sort(entries.begin(), entries.end(), [](const Entry &a, const Entry &b) {
      return a.trace.size() < b.trace.size();
    });
    if (entries.size() > cap_) {
      truncated = true;
      entries.resize(cap_);
    }
    return entries;
  }
};

ExploreReport makeReport(const Entries &entries, bool truncated, std::size_t visited) {
  ExploreReport report;
  report.truncated = truncated;
  report.statesVisited = visited;
  Accumulator acc;
  for (const auto &en : entries)
    acc.add(en.escaped ? top() : en.result, en.trace);
  for (auto &en : acc.take())
    report.results.push_back({std::move(en.result), std::move(en.trace)});
  std::stable_sort(report.results.begin(), report.results.end(),
                   [](const Reached &a, const Reached &b) {
                     return a.trace.size() < b.trace.size();
                   });
  return report;
}

} // namespace

ExploreReport explore(const Expr &e, std::size_t budget, std::size_t frontierCap,
                      const SymbolTable &table) {
  Explorer ex(table, std::max<std::size_t>(frontierCap, 1));
  Entries entries = ex.reach(e, budget);
  return makeReport(entries, ex.truncated, ex.visited);
}

ExploreReport exploreBreadthFirst(const Expr &e, std::size_t budget,
                                  std::size_t frontierCap, const SymbolTable &table) {
  struct State {
    Expr term;
    Trace trace;
  };
  std::unordered_set<Expr> seen{e};
  std::deque<State> queue{{e, {}}};
  Entries found;
  bool truncated = false;
  while (!queue.empty()) {
    State s = std::move(queue.front());
    queue.pop_front();
    if (s.term.isResult())
      found.push_back({s.term, s.trace, false});
    if (s.trace.size() >= budget)
      continue;
    for (const auto &choice : enumerateSteps(s.term, table)) {
      if (choice.rule == StepRule::Approximate && !s.trace.empty() &&
          s.trace.back().rule == StepRule::Approximate &&
          s.trace.back().context == choice.context)
        continue;
      Expr next = step(s.term, choice, table);
      if (!seen.insert(next).second)
        continue;
      if (seen.size() > frontierCap) {
        truncated = true;
        continue;
      }
      Trace t = s.trace;
      t.push_back(choice);
      queue.push_back({next, std::move(t)});
    }
  }
  return makeReport(found, truncated, seen.size());
}

std::optional<Reached> converges(const Expr &e, std::size_t budget,
                                 std::size_t frontierCap, const SymbolTable &table) {
  auto report = explore(e, budget, frontierCap, table);
  for (auto &r : report.results)
    if (r.result.kind() != Kind::Bot)
      return r;
  return std::nullopt;
}

} // namespace lambdav
