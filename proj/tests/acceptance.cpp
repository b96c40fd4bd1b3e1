// One line per acceptance criterion; exit status 1 if any fails.
#include "lambdav/encoding.hpp"
#include "lambdav/printer.hpp"
#include "lambdav/properties.hpp"
#include "lambdav/reduction.hpp"
#include "lambdav/stream_eval.hpp"
#include "lambdav/surface.hpp"

#include <chrono>
#include <cstdio>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <string>

using namespace lambdav;

namespace {

struct Verdict {
  bool ok;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

Expr program(const std::string &name) {
  return compileFile(std::string(LAMBDAV_CORPUS_DIR) + "/" + name + ".lv");
}

bool same(const Expr &a, const Expr &b) { return canonical(a) == canonical(b); }

std::string changePoints(const std::vector<Observation> &obs) {
  std::string s;
  for (const auto &o : obs)
    s += (s.empty() ? "" : " | ") + printResult(o.result);
  return s;
}

bool matches(const std::vector<Observation> &obs, const std::vector<Expr> &want) {
  if (obs.size() != want.size())
    return false;
  for (std::size_t i = 0; i < obs.size(); ++i)
    if (!same(obs[i].result, want[i]))
      return false;
  return true;
}

// First fuel n <= maxFuel at which streamEval(e, n) equals want.
std::optional<std::size_t> reachesAt(const Expr &e, const Expr &want, std::size_t maxFuel) {
  StreamEvaluator ev;
  for (std::size_t n = 0; n <= maxFuel; ++n)
    if (same(ev.eval(e, n), want))
      return n;
  return std::nullopt;
}

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Verdict fromNTrace() {
  auto t0 = Clock::now();
  auto obs = observe(program("fromN"), 10);
  double secs = since(t0);
  std::vector<Expr> want{bot(), botv(), consExpr(natExpr(0), botv()),
                         consExpr(natExpr(0), consExpr(natExpr(1), botv()))};
  return {matches(obs, want) && secs < 1.0,
          changePoints(obs) + " at max-fuel 10, " + std::to_string(secs) + "s"};
}

Verdict evensTable() {
  auto t0 = Clock::now();
  Expr e = program("evens");
  std::vector<Expr> want{setLit({natExpr(0)}), setLit({natExpr(0), natExpr(2)}),
                         setLit({natExpr(0), natExpr(2), natExpr(4)})};
  std::size_t next = 0;
  std::string seen;
  for (const auto &o : observe(e, 32)) {
    seen += (seen.empty() ? "" : " | ") + printResult(o.result);
    if (next < want.size() && same(o.result, want[next]))
      ++next;
  }
  double secs = since(t0);
  return {next == want.size() && secs < 1.0, seen + ", " + std::to_string(secs) + "s"};
}

Verdict headOfStream() {
  Expr e = program("head_fromN");
  auto conv = converges(e, kAdequacyBudget);
  auto at = reachesAt(e, natExpr(0), 64);
  bool ok = conv && decodeNat(conv->result) == 0u && at;
  return {ok, "converges to " + (conv ? printResult(conv->result) : std::string("nothing")) +
                  ", streamEval gives 0 at fuel " + (at ? std::to_string(*at) : "-")};
}

Verdict membership() {
  auto at = reachesAt(program("member"), stringExpr("success"), 64);
  return {at.has_value(), "\"success\" at fuel " + (at ? std::to_string(*at) : "-")};
}

Verdict parallelOr() {
  auto t = reachesAt(program("por_true"), symbol(sym::trueSym()), 64);
  auto f = reachesAt(program("por_false"), symbol(sym::falseSym()), 64);
  Expr loop = compile("def loop u = loop u\nloop ()");
  bool loopSilent = !converges(loop, 32) && streamEval(loop, 64).kind() == Kind::Bot;
  return {t && f && loopSilent, "true at fuel " + (t ? std::to_string(*t) : "-") +
                                    ", false at fuel " + (f ? std::to_string(*f) : "-") +
                                    (loopSilent ? ", loop stays ⊥" : ", loop produced output")};
}

using Record = std::map<std::string, std::string>;

std::optional<Record> recordView(const Expr &r) {
  auto fields = decodeRecord(r);
  if (!fields)
    return std::nullopt;
  Record out;
  for (const auto &[k, v] : *fields)
    out[k] = printResult(v);
  return out;
}

Verdict twoPhase() {
  auto obs = observe(program("twophase"), 64);
  std::vector<Record> want{
      {},
      {{"proposal", "5"}},
      {{"ok1", "true"}, {"ok2", "true"}, {"proposal", "5"}},
      {{"ok1", "true"}, {"ok2", "true"}, {"proposal", "5"}, {"res", "\"accepted\""}}};
  bool ok = obs.size() == want.size() + 1 && obs[0].result.kind() == Kind::Bot;
  for (std::size_t i = 0; ok && i < want.size(); ++i)
    ok = recordView(obs[i + 1].result) == want[i];
  bool fix = !obs.empty() && obs.back().fuel < 64;
  return {ok && fix, changePoints(obs) + "; last change at fuel " +
                         (obs.empty() ? std::string("-") : std::to_string(obs.back().fuel)) +
                         ", none after up to 64"};
}

// Plain BFS over the adjacency the program encodes.
std::set<std::string> graphReach(const std::map<std::string, std::vector<std::string>> &g,
                                 const std::string &from) {
  std::set<std::string> seen{from};
  std::deque<std::string> todo{from};
  while (!todo.empty()) {
    auto n = todo.front();
    todo.pop_front();
    for (const auto &m : g.at(n))
      if (seen.insert(m).second)
        todo.push_back(m);
  }
  return seen;
}

Verdict reachesGraph() {
  std::map<std::string, std::vector<std::string>> g{
      {"a", {"b"}}, {"b", {"c"}}, {"c", {"a", "d"}}, {"d", {}}};
  std::vector<Expr> elems;
  for (const auto &n : graphReach(g, "a"))
    elems.push_back(symbol(n));
  Expr want = setLit(elems);
  Expr e = program("reaches");
  auto at = reachesAt(e, want, 64);
  bool stays = at && same(streamEval(e, 64), want);
  return {at && stays, printResult(want) + " at fuel " + (at ? std::to_string(*at) : "-") +
                           (stays ? ", unchanged at 64" : "")};
}

Verdict suite(const std::string &name, double limitSeconds = 0) {
  SuiteOptions o;
  SuiteReport r = runSuite(name, o);
  bool ok = r.passed() && (limitSeconds == 0 || r.seconds < limitSeconds);
  std::string d = std::to_string(r.cases) + " cases, " + std::to_string(r.failures) +
                  " failures, seed " + std::to_string(r.seed) + ", " + std::to_string(r.seconds) + "s";
  for (const auto &n : r.notes)
    d += "; " + n;
  return {ok, d};
}

} // namespace

int main() {
  struct Criterion {
    const char *name;
    std::function<Verdict()> run;
  };
  std::vector<Criterion> all{
      {"fromN 0 golden trace", fromNTrace},
      {"evens table", evensTable},
      {"head of an infinite stream", headOfStream},
      {"membership search", membership},
      {"parallel or", parallelOr},
      {"two-phase commit", twoPhase},
      {"reaches on a cyclic graph", reachesGraph},
      {"formula order laws", [] { return suite("order", 60); }},
      {"subject expansion", [] { return suite("expansion"); }},
      {"fuel monotonicity", [] { return suite("monotonicity"); }},
      {"oracle equivalence", [] { return suite("oracle"); }},
      {"bounded adequacy", [] { return suite("adequacy"); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    Verdict v;
    try {
      v = all[i].run();
    } catch (const std::exception &ex) {
      v = {false, std::string("exception: ") + ex.what()};
    }
    failed += !v.ok;
    std::printf("criterion %2zu %s  %s: %s\n", i + 1, v.ok ? "PASS" : "FAIL", all[i].name,
                v.detail.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
