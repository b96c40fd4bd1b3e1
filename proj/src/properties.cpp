#include "lambdav/properties.hpp"

#include "lambdav/assignment.hpp"
#include "lambdav/formula.hpp"
#include "lambdav/printer.hpp"
#include "lambdav/reduction.hpp"
#include "lambdav/stream_eval.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace lambdav {

namespace {

constexpr std::size_t kMaxNotes = 8;

class Tally {
public:
  Tally(SuiteReport &rep) : rep_(rep) {}

  void check(bool ok, const std::function<std::string()> &describe) {
    ++rep_.cases;
    if (ok)
      return;
    ++rep_.failures;
    if (rep_.notes.size() < kMaxNotes)
      rep_.notes.push_back(describe());
  }

  void note(std::string s) { rep_.notes.push_back(std::move(s)); }

private:
  SuiteReport &rep_;
};

std::string show(const Formula &f) { return printFormula(f); }
std::string show(const Expr &e) { return printCore(e); }

// ---- symbol ----

std::vector<Expr> smallResults() {
  std::vector<Expr> leaves{botv(), symbol("a"), symbol("b")};
  std::vector<Expr> out{bot(), top()};
  out.insert(out.end(), leaves.begin(), leaves.end());
  for (const auto &a : leaves)
    for (const auto &b : leaves)
      out.push_back(pair(a, b));
  out.push_back(setLit({}));
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    out.push_back(setLit({leaves[i]}));
    for (std::size_t j = i + 1; j < leaves.size(); ++j)
      out.push_back(setLit({leaves[i], leaves[j]}));
  }
  out.push_back(lam("x", var("x")));
  out.push_back(lam("x", symbol("a")));
  return out;
}

void symbolSuite(const SuiteOptions &, Tally &t) {
  SymbolTable lattice = SymbolTable::parse("lo mid -> mid\nmid hi -> hi\nlo hi -> hi\n");
  for (const SymbolTable *table : std::vector<const SymbolTable *>{&SymbolTable::discrete(), &lattice}) {
    auto v = table->lawViolations();
    t.check(v.empty(), [&] { return "symbol table law: " + v.front(); });
  }
  auto rs = smallResults();
  auto eq = [](const Expr &a, const Expr &b) { return canonical(a) == canonical(b); };
  for (const auto &a : rs) {
    t.check(eq(resultJoin(bot(), a), a) && eq(resultJoin(a, bot()), a),
            [&] { return "⊥ is not a unit for " + show(a); });
    t.check(resultJoin(top(), a).kind() == Kind::Top && resultJoin(a, top()).kind() == Kind::Top,
            [&] { return "⊤ does not absorb " + show(a); });
    for (const auto &b : rs) {
      t.check(eq(resultJoin(a, b), resultJoin(b, a)),
              [&] { return "join not commutative: " + show(a) + ", " + show(b); });
      for (const auto &c : rs)
        t.check(eq(resultJoin(resultJoin(a, b), c), resultJoin(a, resultJoin(b, c))), [&] {
          return "join not associative: " + show(a) + ", " + show(b) + ", " + show(c);
        });
    }
  }
}

// ---- order ----

void orderSuite(const SuiteOptions &opts, Tally &t, std::mt19937_64 &rng) {
  std::vector<Symbol> syms{Symbol("a"), Symbol("b")};
  auto fs = enumerateForms(opts.depth, syms);
  const std::size_t n = fs.size();
  t.note(std::to_string(n) + " formulae at depth " + std::to_string(opts.depth));

  for (const auto &f : fs)
    t.check(formLeq(f, f), [&] { return "reflexivity: " + show(f); });

  std::vector<std::vector<std::uint32_t>> up(n), down(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (formLeq(fs[i], fs[j])) {
        up[i].push_back(static_cast<std::uint32_t>(j));
        down[j].push_back(static_cast<std::uint32_t>(i));
      }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Formula jn = formJoin(fs[i], fs[j]);
      t.check(formSize(jn) <= std::max(formSize(fs[i]), formSize(fs[j])),
              [&] { return "size of join: " + show(fs[i]) + " ⊔ " + show(fs[j]); });
    }

  auto any = [&](const std::vector<std::uint32_t> &v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  auto idx = [&] { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  for (std::size_t s = 0; s < opts.samples; ++s) {
    std::size_t a = idx();
    std::size_t b = any(up[a]);
    std::size_t c = any(up[b]);
    t.check(formLeq(fs[a], fs[c]), [&] {
      return "transitivity: " + show(fs[a]) + " ⊑ " + show(fs[b]) + " ⊑ " + show(fs[c]);
    });
  }
  for (std::size_t s = 0; s < opts.samples; ++s) {
    std::size_t a = idx(), b = idx();
    Formula jn = formJoin(fs[a], fs[b]);
    t.check(formLeq(fs[a], jn) && formLeq(fs[b], jn),
            [&] { return "join not an upper bound: " + show(fs[a]) + ", " + show(fs[b]); });
    std::size_t c = idx();
    std::size_t x = any(down[c]), y = any(down[c]);
    t.check(formLeq(formJoin(fs[x], fs[y]), fs[c]), [&] {
      return "join not least: " + show(fs[x]) + ", " + show(fs[y]) + " below " + show(fs[c]);
    });
    std::size_t a2 = any(up[a]), b2 = any(up[b]);
    t.check(formLeq(formLiftPair(fs[a], fs[b]), formLiftPair(fs[a2], fs[b2])),
            [&] { return "lifted pair not monotone at " + show(fs[a]) + ", " + show(fs[b]); });
    t.check(formLeq(formLiftSet(fs[a]), formLiftSet(fs[a2])),
            [&] { return "lifted set not monotone at " + show(fs[a]); });
  }

  auto small = enumerateForms(std::min<std::size_t>(opts.depth, 2), syms);
  for (const auto &tau : small) {
    if (!tau.isValue())
      continue;
    for (const auto &p : small)
      for (const auto &q : small) {
        Formula lhs = fFun({{tau, formJoin(p, q)}});
        Formula rhs = fFun({{tau, p}, {tau, q}});
        t.check(formLeq(lhs, rhs), [&] { return "distributivity: " + show(lhs) + " vs " + show(rhs); });
      }
  }
}

// ---- expansion ----

void expansionSuite(const SuiteOptions &opts, Tally &t, std::mt19937_64 &rng) {
  std::size_t made = 0, forms = 0, attempts = 0;
  while (made < opts.terms && attempts < opts.terms * 100) {
    ++attempts;
    RandomTermOptions ro;
    ro.size = 3 + rng() % 6;
    Expr e = randomTerm(rng, ro);
    std::vector<StepChoice> steps;
    for (const auto &c : enumerateSteps(e))
      if (c.rule != StepRule::Approximate)
        steps.push_back(c);
    if (steps.empty())
      continue;
    ++made;
    const StepChoice &c = steps[rng() % steps.size()];
    Expr next = step(e, c);
    for (const auto &phi : synthesizeForms(next, kExpansionFuel, kExpansionHeight)) {
      ++forms;
      t.check(static_cast<bool>(checkAssign({}, e, phi, kExpansionDepth)), [&] {
        return show(e) + " --" + ruleName(c.rule) + "--> " + show(next) + " loses " + show(phi);
      });
    }
  }
  t.note(std::to_string(made) + " terms, " + std::to_string(forms) + " successor formulae");
  t.check(made == opts.terms, [&] { return "only " + std::to_string(made) + " terms had a step"; });
}

// ---- assignment ----

bool usesRule(const Derivation &d, AssignRule r) {
  if (d.rule == r)
    return true;
  for (const auto &p : d.premises)
    if (usesRule(*p, r))
      return true;
  return false;
}

void assignmentSuite(const SuiteOptions &opts, Tally &t, std::mt19937_64 &rng) {
  const std::size_t depth = kExpansionDepth;
  Expr id = lam("x", var("x"));
  Formula a = fSym("a"), b = fSym("b");

  struct TopCase {
    AssignRule rule;
    Expr term;
  };
  std::vector<TopCase> tops{
      {AssignRule::TLetPairTop, letPair("x", "y", top(), symbol("a"))},
      {AssignRule::TLetSymTop, letSym(Symbol("a"), top(), symbol("b"))},
      {AssignRule::TAppLTop, app(top(), symbol("a"))},
      {AssignRule::TAppRTop, app(id, top())},
      {AssignRule::TForInTop, bigJoin("x", top(), setLit({var("x")}))},
  };
  for (const auto &tc : tops) {
    auto r = checkAssign({}, tc.term, fTop(), depth);
    t.check(r && usesRule(*r.derivation, tc.rule),
            [&] { return std::string(assignRuleName(tc.rule)) + " not used for " + show(tc.term); });
  }

  t.check(checkAssign({}, symbol("a"), a, 1) && !checkAssign({}, symbol("a"), b, depth),
          [] { return "TSYM: 'a must have 'a and not 'b"; });
  t.check(static_cast<bool>(checkAssign({}, id, fFun({{a, a}}), depth)),
          [] { return "identity lacks 'a -> 'a"; });
  auto j = checkAssign({}, join(symbol("a"), setLit({})), fTop(), depth);
  t.check(j && j.derivation->rule == AssignRule::TJoin, [] { return "TJOIN of 'a and {} to ⊤"; });

  std::vector<Symbol> syms{Symbol("a"), Symbol("b")};
  auto small = enumerateForms(2, syms);
  std::vector<Formula> values;
  for (const auto &f : small)
    if (f.isValue())
      values.push_back(f);

  std::size_t terms = std::max<std::size_t>(opts.terms / 5, 20);
  for (std::size_t i = 0; i < terms; ++i) {
    RandomTermOptions ro;
    ro.size = 3 + rng() % 5;
    Expr e = randomTerm(rng, ro);

    t.check(static_cast<bool>(checkAssign({}, e, fBot(), 0)), [&] { return "TBOT fails on " + show(e); });
    if (e.isValue())
      t.check(static_cast<bool>(checkAssign({}, e, fBotV(), 0)),
              [&] { return "TBOTV fails on " + show(e); });
    if (e.kind() == Kind::Set)
      t.check(static_cast<bool>(checkAssign({}, e, fSet({}), depth)),
              [&] { return "{} not certified for " + show(e); });

    auto forms = synthesizeForms(e, kExpansionFuel, kExpansionHeight);
    for (std::size_t x = 0; x < forms.size(); ++x) {
      for (std::size_t y = x + 1; y < forms.size(); ++y) {
        Formula jn = formJoin(forms[x], forms[y]);
        t.check(static_cast<bool>(checkAssign({}, e, jn, depth + 2)), [&] {
          return "directedness: " + show(e) + " lacks " + show(jn);
        });
      }
      for (const auto &psi : small)
        if (formLeq(psi, forms[x]))
          t.check(static_cast<bool>(checkAssign({}, e, psi, depth)), [&] {
            return "downward closure: " + show(e) + " lacks " + show(psi) + " below " +
                   show(forms[x]);
          });
    }

    // Weakening on the body of a random abstraction.
    Expr body = randomTerm(rng, ro);
    Expr open = instantiate(lam("x", body).child(0), var("x"));
    const Formula &lo = values[rng() % values.size()];
    for (const auto &phi : small) {
      if (!checkAssign({{"x", lo}}, open, phi, depth))
        continue;
      for (const auto &hi : values)
        if (formLeq(lo, hi))
          t.check(static_cast<bool>(checkAssign({{"x", hi}}, open, phi, depth)), [&] {
            return "weakening: " + show(open) + " : " + show(phi) + " under x:" + show(lo) +
                   " but not x:" + show(hi);
          });
    }
  }
}

// ---- corpus suites ----

std::string corpusDir(const SuiteOptions &opts) {
#ifdef LAMBDAV_CORPUS_DIR
  if (opts.corpusDir.empty())
    return LAMBDAV_CORPUS_DIR;
#endif
  return opts.corpusDir;
}

void monotonicitySuite(const SuiteOptions &opts, Tally &t) {
  std::size_t skipped = 0;
  for (const auto &p : loadCorpus(corpusDir(opts))) {
    StreamEvaluator ev;
    Expr prev = ev.eval(p.expr, 0);
    for (std::size_t n = 0; n + 1 < opts.maxFuel; ++n) {
      Expr next = ev.eval(p.expr, n + 1);
      auto le = obsLeq(prev, next);
      if (!le)
        ++skipped;
      t.check(!le || *le, [&] {
        return p.name + ": fuel " + std::to_string(n) + " gives " + printResult(prev) +
               " but fuel " + std::to_string(n + 1) + " gives " + printResult(next);
      });
      prev = next;
    }
  }
  t.note(std::to_string(skipped) + " comparisons involved lambdas and were not ordered");
}

void oracleSuite(const SuiteOptions &opts, Tally &t) {
  for (const auto &p : loadCorpus(corpusDir(opts))) {
    StreamEvaluator ev;
    for (std::size_t n = 0; n <= opts.oracleFuel; ++n) {
      Expr r = ev.eval(p.expr, n);
      auto rep = explore(p.expr, oracleBudget(n), 256);
      t.check(rep.contains(r), [&] {
        return p.name + ": streamEval at fuel " + std::to_string(n) + " = " + printResult(r) +
               " not reached within " + std::to_string(oracleBudget(n)) + " steps";
      });
    }
  }
}

void adequacySuite(const SuiteOptions &opts, Tally &t) {
  std::size_t certified = 0;
  const std::size_t fuel = 16;
  for (const auto &p : loadCorpus(corpusDir(opts))) {
    std::vector<Formula> values;
    for (const auto &f : synthesizeForms(p.expr, fuel, 6))
      if (f.isValue())
        values.push_back(f);
    if (values.empty() && checkAssign({}, p.expr, fBotV(), fuel + 1))
      values.push_back(fBotV());
    if (values.empty())
      continue;
    ++certified;
    auto found = converges(p.expr, kAdequacyBudget);
    t.check(found.has_value(), [&] {
      return p.name + " is certified at " + show(values.back()) + " but converges found nothing";
    });
  }
  t.note(std::to_string(certified) + " corpus programs certified at a value formula");
}

void replaySuite(const SuiteOptions &opts, Tally &t, std::mt19937_64 &rng) {
  auto replays = [&](const std::string &what, const Expr &e, const ExploreReport &rep) {
    for (const auto &r : rep.results) {
      bool ok = false;
      try {
        ok = canonical(replay(e, r.trace)) == canonical(r.result);
      } catch (const InvalidStep &) {
      }
      t.check(ok, [&] { return what + ": trace to " + printResult(r.result) + " does not replay"; });
    }
  };
  for (const auto &p : loadCorpus(corpusDir(opts)))
    replays(p.name, p.expr, explore(p.expr, 24, 64));
  std::size_t terms = std::max<std::size_t>(opts.terms / 5, 20);
  for (std::size_t i = 0; i < terms; ++i) {
    RandomTermOptions ro;
    ro.size = 3 + rng() % 4;
    Expr e = randomTerm(rng, ro);
    replays(show(e), e, explore(e, 6, 64));
    replays(show(e), e, exploreBreadthFirst(e, 4, 2000));
  }
}

} // namespace

const std::vector<std::string> &suiteNames() {
  static const std::vector<std::string> names{"symbol",     "order",   "expansion", "assignment",
                                              "monotonicity", "oracle", "adequacy",  "replay"};
  return names;
}

SuiteReport runSuite(const std::string &name, const SuiteOptions &opts) {
  SuiteReport rep;
  rep.name = name;
  rep.seed = opts.seed;
  Tally t(rep);
  std::mt19937_64 rng(opts.seed);
  auto t0 = std::chrono::steady_clock::now();
  if (name == "symbol")
    symbolSuite(opts, t);
  else if (name == "order")
    orderSuite(opts, t, rng);
  else if (name == "expansion")
    expansionSuite(opts, t, rng);
  else if (name == "assignment")
    assignmentSuite(opts, t, rng);
  else if (name == "monotonicity")
    monotonicitySuite(opts, t);
  else if (name == "oracle")
    oracleSuite(opts, t);
  else if (name == "adequacy")
    adequacySuite(opts, t);
  else if (name == "replay")
    replaySuite(opts, t, rng);
  else
    throw std::invalid_argument("unknown suite: " + name);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

} // namespace lambdav
