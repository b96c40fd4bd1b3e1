#include "lambdav/reduction.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace lambdav {

Expr resultJoin(const Expr &r1, const Expr &r2, const SymbolTable &table) {
  if (r2.kind() == Kind::Bot)
    return r1;
  if (r1.kind() == Kind::Bot)
    return r2;
  if (r1.kind() == Kind::Top || r2.kind() == Kind::Top)
    return top();
  if (r2.kind() == Kind::BotV)
    return r1;
  if (r1.kind() == Kind::BotV)
    return r2;
  if (r1.kind() != r2.kind())
    return top();
  switch (r1.kind()) {
  case Kind::Sym: {
    auto s = table.join(r1.symbol(), r2.symbol());
    return s ? symbol(*s) : top();
  }
  case Kind::Pair:
    return compLift(resultJoin(r1.child(0), r2.child(0), table),
                    resultJoin(r1.child(1), r2.child(1), table));
  case Kind::Set: {
    std::vector<Expr> elems(r1.children().begin(), r1.children().end());
    for (const auto &v : r2.children())
      if (std::find(elems.begin(), elems.end(), v) == elems.end())
        elems.push_back(v);
    return setLit(std::move(elems));
  }
  case Kind::Lam:
    return lamRaw(r1.name(), join(r1.child(0), r2.child(0)));
  default:
    return top();
  }
}

Expr compLift(const Expr &r1, const Expr &r2) {
  if (r1.kind() == Kind::Bot)
    return bot();
  if (r1.kind() == Kind::Top)
    return top();
  if (r2.kind() == Kind::Bot)
    return bot();
  if (r2.kind() == Kind::Top)
    return top();
  return pair(r1, r2);
}

namespace {
void flattenJoins(const Expr &e, std::vector<Expr> &out) {
  if (e.kind() == Kind::Join) {
    flattenJoins(e.child(0), out);
    flattenJoins(e.child(1), out);
  } else {
    out.push_back(canonical(e));
  }
}

void sortUnique(std::vector<Expr> &xs) {
  std::sort(xs.begin(), xs.end(),
            [](const Expr &a, const Expr &b) { return compare(a, b) < 0; });
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
}
} // namespace

Expr canonical(const Expr &e) {
  if (e.arity() == 0)
    return e;
  if (e.kind() == Kind::Join) {
    std::vector<Expr> arms;
    flattenJoins(e, arms);
    sortUnique(arms);
    return joinAll(arms);
  }
  std::vector<Expr> kids;
  kids.reserve(e.arity());
  for (const auto &c : e.children())
    kids.push_back(canonical(c));
  if (e.kind() == Kind::Set)
    sortUnique(kids);
  return withChildren(e, std::move(kids));
}

namespace {
constexpr std::array<std::pair<StepRule, const char *>, 8> kRuleNames = {{
    {StepRule::Beta, "Beta"},
    {StepRule::LetPairBeta, "LetPairBeta"},
    {StepRule::LetSymThreshold, "LetSymThreshold"},
    {StepRule::BigJoinExpand, "BigJoinExpand"},
    {StepRule::JoinOfResults, "JoinOfResults"},
    {StepRule::SetDropBot, "SetDropBot"},
    {StepRule::TopPropagate, "TopPropagate"},
    {StepRule::Approximate, "Approximate"},
}};

std::optional<StepRule> redexRule(const Expr &e, const SymbolTable &table) {
  if (!isRedex(e, table))
    return std::nullopt;
  switch (e.kind()) {
  case Kind::App: return StepRule::Beta;
  case Kind::LetPair: return StepRule::LetPairBeta;
  case Kind::LetSym: return StepRule::LetSymThreshold;
  case Kind::BigJoin: return StepRule::BigJoinExpand;
  case Kind::Join: return StepRule::JoinOfResults;
  case Kind::Set: return StepRule::SetDropBot;
  default: return std::nullopt;
  }
}

Expr contract(const Expr &e, StepRule rule, const SymbolTable &table) {
  switch (rule) {
  case StepRule::Beta:
    return instantiate(e.child(0).child(0), e.child(1));
  case StepRule::LetPairBeta:
    return instantiate2(e.child(1), e.child(0).child(0), e.child(0).child(1));
  case StepRule::LetSymThreshold:
    return e.child(1);
  case StepRule::BigJoinExpand: {
    std::vector<Expr> arms;
    for (const auto &v : e.child(0).children())
      arms.push_back(instantiate(e.child(1), v));
    return joinAll(arms);
  }
  case StepRule::JoinOfResults:
    return resultJoin(e.child(0), e.child(1), table);
  case StepRule::SetDropBot: {
    std::vector<Expr> kids(e.children().begin(), e.children().end());
    kids.erase(std::find_if(kids.begin(), kids.end(),
                            [](const Expr &k) { return k.kind() == Kind::Bot; }));
    return setLit(std::move(kids));
  }
  default:
    return e;
  }
}
} // namespace

const char *ruleName(StepRule r) {
  for (const auto &[rule, name] : kRuleNames)
    if (rule == r)
      return name;
  return "?";
}

std::optional<StepRule> parseRuleName(std::string_view name) {
  for (const auto &[rule, n] : kRuleNames)
    if (name == n)
      return rule;
  return std::nullopt;
}

std::vector<StepChoice> enumerateSteps(const Expr &e, const SymbolTable &table) {
  std::vector<StepChoice> out;
  for (const auto &c : evalPositions(e)) {
    const Expr &sub = subtermAt(e, c);
    if (sub.kind() == Kind::Top && !c.isHole())
      out.push_back({c, StepRule::TopPropagate});
    if (auto rule = redexRule(sub, table))
      out.push_back({c, *rule});
    out.push_back({c, StepRule::Approximate});
  }
  return out;
}

Expr step(const Expr &e, const StepChoice &c, const SymbolTable &table) {
  if (!isEvalCtx(e, c.context))
    throw InvalidStep("not an evaluation context: " + formatPath(c.context));
  const Expr &sub = subtermAt(e, c.context);
  switch (c.rule) {
  case StepRule::Approximate:
    return plug(e, c.context, bot());
  case StepRule::TopPropagate:
    if (sub.kind() != Kind::Top || c.context.isHole())
      throw InvalidStep("TopPropagate needs ⊤ under a non-empty context");
    return top();
  default:
    if (redexRule(sub, table) != c.rule)
      throw InvalidStep(std::string(ruleName(c.rule)) + " does not apply at " +
                        formatPath(c.context));
    return plug(e, c.context, contract(sub, c.rule, table));
  }
}

Expr replay(const Expr &e, const Trace &trace, const SymbolTable &table) {
  Expr cur = e;
  for (const auto &c : trace)
    cur = step(cur, c, table);
  return cur;
}

std::string formatTrace(const Trace &trace) {
  std::string out;
  for (const auto &c : trace)
    out += std::string("(") + ruleName(c.rule) + ", " + formatPath(c.context) + ")\n";
  return out;
}

Trace parseTrace(std::string_view text) {
  Trace trace;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#')
      continue;
    auto open = line.find('(');
    auto comma = line.find(',');
    auto close = line.rfind(')');
    if (open == std::string::npos || comma == std::string::npos ||
        close == std::string::npos || !(open < comma && comma < close))
      throw InvalidStep("trace line " + std::to_string(lineNo) +
                        ": expected (Rule, /path)");
    auto trim = [](std::string s) {
      auto b = s.find_first_not_of(" \t");
      auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string rule = trim(line.substr(open + 1, comma - open - 1));
    std::string path = trim(line.substr(comma + 1, close - comma - 1));
    auto r = parseRuleName(rule);
    if (!r)
      throw InvalidStep("trace line " + std::to_string(lineNo) + ": unknown rule " + rule);
    try {
      trace.push_back({parsePath(path), *r});
    } catch (const std::invalid_argument &ex) {
      throw InvalidStep("trace line " + std::to_string(lineNo) + ": " + ex.what());
    }
  }
  return trace;
}

bool ExploreReport::contains(const Expr &r) const {
  Expr want = canonical(r);
  return std::any_of(results.begin(), results.end(), [&](const Reached &x) {
    return canonical(x.result) == want;
  });
}

} // namespace lambdav
