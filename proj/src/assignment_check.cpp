#include "lambdav/assignment.hpp"

#include "lambdav/printer.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unordered_set>

namespace lambdav {

const char *assignRuleName(AssignRule r) {
  switch (r) {
  case AssignRule::TSub: return "TSUB";
  case AssignRule::TBot: return "TBOT";
  case AssignRule::TBotV: return "TBOTV";
  case AssignRule::TTop: return "TTOP";
  case AssignRule::TVar: return "TVAR";
  case AssignRule::TJoin: return "TJOIN";
  case AssignRule::TSym: return "TSYM";
  case AssignRule::TPair: return "TPAIR";
  case AssignRule::TSet: return "TSET";
  case AssignRule::TFun: return "TFUN";
  case AssignRule::TLetSym: return "TLETSYM";
  case AssignRule::TLetPair: return "TLETPAIR";
  case AssignRule::TForIn: return "TFORIN";
  case AssignRule::TApp: return "TAPP";
  case AssignRule::TLetPairTop: return "TLETPAIRTOP";
  case AssignRule::TLetSymTop: return "TLETSYMTOP";
  case AssignRule::TAppLTop: return "TAPPLTOP";
  case AssignRule::TAppRTop: return "TAPPRTOP";
  case AssignRule::TForInTop: return "TFORINTOP";
  }
  return "?";
}

namespace {

void collect(const Derivation &d, std::unordered_set<const Derivation *> &seen) {
  if (!seen.insert(&d).second)
    return;
  for (const auto &p : d.premises)
    collect(*p, seen);
}

// Names present in `ext` but not in `base`, provided ext agrees with base
// everywhere else.
std::optional<std::vector<std::string>> extension(const FormEnv &base, const FormEnv &ext) {
  if (ext.size() < base.size())
    return std::nullopt;
  std::vector<std::string> added;
  for (const auto &[k, v] : ext) {
    auto it = base.find(k);
    if (it == base.end())
      added.push_back(k);
    else if (it->second != v)
      return std::nullopt;
  }
  if (ext.size() - added.size() != base.size())
    return std::nullopt;
  return added;
}

class Validator {
public:
  explicit Validator(const SymbolTable &table) : table_(table) {}

  std::optional<std::string> run(const Derivation &d) {
    if (!done_.insert(&d).second)
      return std::nullopt;
    for (const auto &p : d.premises)
      if (!p)
        return fail(d, "null premise");
    if (auto err = local(d))
      return err;
    for (const auto &p : d.premises)
      if (auto err = run(*p))
        return err;
    return std::nullopt;
  }

private:
  std::optional<std::string> fail(const Derivation &d, const std::string &why) const {
    return std::string(assignRuleName(d.rule)) + " at " + printCore(d.expr) + " : " +
           printFormula(d.formula) + ": " + why;
  }

  bool sameEnv(const Derivation &a, const Derivation &b) const {
    return a.env == b.env || *a.env == *b.env;
  }

  std::optional<std::string> arity(const Derivation &d, std::size_t n) const {
    if (d.premises.size() != n)
      return fail(d, "expected " + std::to_string(n) + " premises");
    return std::nullopt;
  }

  // Premise i is a judgement about child c of d under the same environment.
  bool about(const Derivation &d, std::size_t i, const Expr &c) const {
    return d.premises[i]->expr == c && sameEnv(d, *d.premises[i]);
  }

  std::optional<std::string> local(const Derivation &d) const {
    const Expr &e = d.expr;
    const Formula &phi = d.formula;
    auto top = [&](Kind k) -> std::optional<std::string> {
      if (e.kind() != k)
        return fail(d, "wrong expression form");
      if (auto err = arity(d, 1))
        return err;
      if (!about(d, 0, e.child(0)) || d.premises[0]->formula.kind() != FKind::Top)
        return fail(d, "premise must assign ⊤ to the scrutinee");
      if (phi.kind() != FKind::Top)
        return fail(d, "conclusion must be ⊤");
      return std::nullopt;
    };
    switch (d.rule) {
    case AssignRule::TSub:
      if (auto err = arity(d, 1))
        return err;
      if (!about(d, 0, e))
        return fail(d, "premise judges a different term");
      if (!formLeq(phi, d.premises[0]->formula, table_))
        return fail(d, "conclusion not below premise");
      return std::nullopt;
    case AssignRule::TBot:
      if (phi.kind() != FKind::Bot || !d.premises.empty())
        return fail(d, "TBOT concludes ⊥ without premises");
      return std::nullopt;
    case AssignRule::TBotV:
      if (phi.kind() != FKind::BotV || !d.premises.empty() || !e.isValue())
        return fail(d, "TBOTV needs a value");
      return std::nullopt;
    case AssignRule::TTop:
      if (phi.kind() != FKind::Top || e.kind() != Kind::Top || !d.premises.empty())
        return fail(d, "TTOP shape");
      return std::nullopt;
    case AssignRule::TSym:
      if (e.kind() != Kind::Sym || phi != fSym(e.symbol()) || !d.premises.empty())
        return fail(d, "TSYM shape");
      return std::nullopt;
    case AssignRule::TVar: {
      if (e.kind() != Kind::Var || !d.premises.empty())
        return fail(d, "TVAR shape");
      auto it = d.env->find(e.name());
      if (it == d.env->end() || it->second != phi || !phi.isValue())
        return fail(d, "formula differs from Γ(x)");
      return std::nullopt;
    }
    case AssignRule::TJoin:
      if (e.kind() != Kind::Join)
        return fail(d, "wrong expression form");
      if (auto err = arity(d, 2))
        return err;
      if (!about(d, 0, e.child(0)) || !about(d, 1, e.child(1)))
        return fail(d, "premises do not match the arms");
      if (phi != formJoin(d.premises[0]->formula, d.premises[1]->formula, table_))
        return fail(d, "conclusion is not the join");
      return std::nullopt;
    case AssignRule::TPair:
      if (e.kind() != Kind::Pair)
        return fail(d, "wrong expression form");
      if (auto err = arity(d, 2))
        return err;
      if (!about(d, 0, e.child(0)) || !about(d, 1, e.child(1)))
        return fail(d, "premises do not match the components");
      if (phi != formLiftPair(d.premises[0]->formula, d.premises[1]->formula))
        return fail(d, "conclusion is not the lifted pair");
      return std::nullopt;
    case AssignRule::TSet: {
      if (e.kind() != Kind::Set)
        return fail(d, "wrong expression form");
      if (auto err = arity(d, e.arity()))
        return err;
      Formula acc = fSet({});
      for (std::size_t i = 0; i < e.arity(); ++i) {
        if (!about(d, i, e.child(i)))
          return fail(d, "premise does not match element");
        acc = formJoin(acc, formLiftSet(d.premises[i]->formula), table_);
      }
      if (phi != acc)
        return fail(d, "conclusion is not the lifted set");
      return std::nullopt;
    }
    case AssignRule::TFun: {
      if (e.kind() != Kind::Lam)
        return fail(d, "wrong expression form");
      std::vector<std::pair<Formula, Formula>> clauses;
      for (const auto &p : d.premises) {
        auto added = extension(*d.env, *p->env);
        if (!added || added->size() != 1)
          return fail(d, "premise must bind exactly one new variable");
        const std::string &x = added->front();
        if (p->expr != instantiate(e.child(0), var(x)))
          return fail(d, "premise is not the opened body");
        const Formula &tau = p->env->at(x);
        if (!tau.isValue())
          return fail(d, "clause input must be a value formula");
        clauses.emplace_back(tau, p->formula);
      }
      if (phi != fFun(std::move(clauses)))
        return fail(d, "conclusion is not the join of clauses");
      return std::nullopt;
    }
    case AssignRule::TLetSym:
      if (e.kind() != Kind::LetSym)
        return fail(d, "wrong expression form");
      if (auto err = arity(d, 2))
        return err;
      if (!about(d, 0, e.child(0)) || d.premises[0]->formula != fSym(e.symbol()))
        return fail(d, "scrutinee must be assigned the threshold symbol");
      if (!about(d, 1, e.child(1)) || d.premises[1]->formula != phi)
        return fail(d, "body premise mismatch");
      return std::nullopt;
    case AssignRule::TLetPair: {
      if (e.kind() != Kind::LetPair)
        return fail(d, "wrong expression form");
      if (auto err = arity(d, 2))
        return err;
      if (!about(d, 0, e.child(0)))
        return fail(d, "scrutinee premise mismatch");
      const Derivation &b = *d.premises[1];
      auto added = extension(*d.env, *b.env);
      if (!added || added->size() != 2)
        return fail(d, "body must bind exactly two new variables");
      std::string x1 = (*added)[0], x2 = (*added)[1];
      if (b.expr != instantiate2(e.child(1), var(x1), var(x2)))
        std::swap(x1, x2);
      if (b.expr != instantiate2(e.child(1), var(x1), var(x2)))
        return fail(d, "body premise is not the opened body");
      if (d.premises[0]->formula != fPair(b.env->at(x1), b.env->at(x2)))
        return fail(d, "scrutinee formula must pair the bound formulas");
      if (b.formula != phi)
        return fail(d, "conclusion differs from body");
      return std::nullopt;
    }
    case AssignRule::TForIn: {
      if (e.kind() != Kind::BigJoin)
        return fail(d, "wrong expression form");
      if (d.premises.empty() || !about(d, 0, e.child(0)))
        return fail(d, "source premise mismatch");
      const Formula &src = d.premises[0]->formula;
      if (src.kind() != FKind::Set)
        return fail(d, "source must be assigned a set formula");
      std::vector<Formula> taus;
      Formula acc = fBot();
      for (std::size_t i = 1; i < d.premises.size(); ++i) {
        const Derivation &b = *d.premises[i];
        auto added = extension(*d.env, *b.env);
        if (!added || added->size() != 1)
          return fail(d, "body must bind exactly one new variable");
        const std::string &x = added->front();
        if (b.expr != instantiate(e.child(1), var(x)))
          return fail(d, "body premise is not the opened body");
        taus.push_back(b.env->at(x));
        acc = formJoin(acc, b.formula, table_);
      }
      if (fSet(taus) != src)
        return fail(d, "bodies must cover exactly the source elements");
      if (phi != acc)
        return fail(d, "conclusion is not the join of bodies");
      return std::nullopt;
    }
    case AssignRule::TApp: {
      if (e.kind() != Kind::App)
        return fail(d, "wrong expression form");
      if (auto err = arity(d, 2))
        return err;
      if (!about(d, 0, e.child(0)) || !about(d, 1, e.child(1)))
        return fail(d, "premises do not match function and argument");
      const Formula &f = d.premises[0]->formula;
      if (f.kind() != FKind::Fun || f.clauseCount() != 1)
        return fail(d, "function premise must be a single clause");
      if (f.clause(0).input != d.premises[1]->formula)
        return fail(d, "argument formula differs from clause input");
      if (f.clause(0).output != phi)
        return fail(d, "conclusion differs from clause output");
      return std::nullopt;
    }
    case AssignRule::TLetPairTop:
      return top(Kind::LetPair);
    case AssignRule::TLetSymTop:
      return top(Kind::LetSym);
    case AssignRule::TAppLTop:
      return top(Kind::App);
    case AssignRule::TForInTop:
      return top(Kind::BigJoin);
    case AssignRule::TAppRTop:
      if (e.kind() != Kind::App)
        return fail(d, "wrong expression form");
      if (auto err = arity(d, 2))
        return err;
      if (!about(d, 0, e.child(0)) || !about(d, 1, e.child(1)))
        return fail(d, "premises do not match function and argument");
      if (!d.premises[0]->formula.isValue())
        return fail(d, "function premise must be a value formula");
      if (d.premises[1]->formula.kind() != FKind::Top || phi.kind() != FKind::Top)
        return fail(d, "argument and conclusion must be ⊤");
      return std::nullopt;
    }
    return fail(d, "unknown rule");
  }

  const SymbolTable &table_;
  std::unordered_set<const Derivation *> done_;
};

} // namespace

std::size_t derivationSize(const Derivation &d) {
  std::unordered_set<const Derivation *> seen;
  collect(d, seen);
  return seen.size();
}

std::size_t derivationHeight(const Derivation &d) {
  std::size_t h = 0;
  for (const auto &p : d.premises)
    h = std::max(h, derivationHeight(*p));
  return h + 1;
}

std::optional<std::string> validateDerivation(const Derivation &d, const SymbolTable &table) {
  Validator v(table);
  return v.run(d);
}

std::string printDerivation(const Derivation &d, std::size_t maxLines) {
  std::ostringstream out;
  std::size_t lines = 0;
  bool cut = false;
  std::function<void(const Derivation &, const FormEnv *, std::size_t)> go =
      [&](const Derivation &n, const FormEnv *parent, std::size_t indent) {
        if (lines >= maxLines) {
          cut = true;
          return;
        }
        ++lines;
        out << std::string(indent * 2, ' ') << assignRuleName(n.rule) << "  ";
        if (parent) {
          if (auto added = extension(*parent, *n.env); added && !added->empty()) {
            out << "[";
            for (std::size_t i = 0; i < added->size(); ++i)
              out << (i ? ", " : "") << (*added)[i] << " : "
                  << printFormula(n.env->at((*added)[i]));
            out << "] ";
          }
        } else if (!n.env->empty()) {
          out << "[";
          bool first = true;
          for (const auto &[k, v] : *n.env) {
            out << (first ? "" : ", ") << k << " : " << printFormula(v);
            first = false;
          }
          out << "] ";
        }
        std::string text = printCore(n.expr);
        if (text.size() > 60) {
          std::size_t cutAt = 57;
          while (cutAt > 0 && (static_cast<unsigned char>(text[cutAt]) & 0xC0) == 0x80)
            --cutAt;
          text = text.substr(0, cutAt) + "...";
        }
        out << text << " : " << printFormula(n.formula) << "\n";
        for (const auto &p : n.premises)
          go(*p, n.env.get(), indent + 1);
      };
  go(d, nullptr, 0);
  if (cut)
    out << "... (" << derivationSize(d) << " distinct nodes in total)\n";
  return out.str();
}

} // namespace lambdav
