#include "lambdav/cli.hpp"

#include "lambdav/assignment.hpp"
#include "lambdav/printer.hpp"
#include "lambdav/properties.hpp"
#include "lambdav/reduction.hpp"
#include "lambdav/stream_eval.hpp"
#include "lambdav/surface.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace lambdav {

namespace {

using json = nlohmann::json;

enum class Format { Pretty, JsonLines };

struct RunConfig {
  std::string sourcePath;
  std::size_t maxFuel = 32;
  bool everyFuel = false;
  std::string symbolTablePath;
  Format format = Format::Pretty;

  std::size_t budget = 32;
  std::size_t frontierCap = 256;
  bool allowTruncate = false;
  bool showTraces = false;
  bool breadthFirst = false;
  std::string replayPath;

  std::string formula;
  std::size_t depth = 8;
  std::size_t fuel = 16;
  std::size_t height = 4;

  std::vector<std::string> suites;
  SuiteOptions suite;
};

class Paint {
public:
  explicit Paint(bool on) : on_(on) {}
  std::string operator()(const char *code, const std::string &s) const {
    return on_ ? std::string("\x1b[") + code + "m" + s + "\x1b[0m" : s;
  }

private:
  bool on_;
};

bool colorEnabled() {
  const char *v = std::getenv("LAMBDAV_COLOR");
  return v && std::string(v) == "1";
}

struct Session {
  const RunConfig &cfg;
  std::ostream &out;
  std::ostream &err;
  SymbolTable table;
  Paint paint;

  const SymbolTable &symbols() const { return table; }
};

std::string readFile(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string resultText(const Session &s, const Expr &r) {
  std::string text = printResult(r);
  return r.kind() == Kind::Top ? s.paint("31", text) : text;
}

int cmdObserve(Session &s, const Expr &e) {
  auto obs = observe(e, s.cfg.maxFuel, !s.cfg.everyFuel, s.symbols());
  for (const auto &o : obs) {
    if (s.cfg.format == Format::JsonLines) {
      s.out << json{{"fuel", o.fuel}, {"result", printResult(o.result)}}.dump() << '\n';
    } else {
      std::ostringstream fuel;
      fuel << std::setw(4) << o.fuel;
      s.out << s.paint("2", fuel.str()) << "  " << resultText(s, o.result) << '\n';
    }
  }
  if (s.cfg.format == Format::Pretty && !s.cfg.everyFuel && !obs.empty())
    s.out << "no change after fuel " << obs.back().fuel << " (checked to " << s.cfg.maxFuel
          << ")\n";
  return !obs.empty() && obs.back().result.kind() == Kind::Top ? kExitTop : kExitOk;
}

int cmdReplay(Session &s, const Expr &e) {
  Trace trace = parseTrace(readFile(s.cfg.replayPath));
  Expr r = replay(e, trace, s.symbols());
  if (s.cfg.format == Format::JsonLines)
    s.out << json{{"steps", trace.size()}, {"result", printResult(r)}}.dump() << '\n';
  else
    s.out << resultText(s, r) << '\n';
  return kExitOk;
}

int cmdExplore(Session &s, const Expr &e) {
  if (!s.cfg.replayPath.empty())
    return cmdReplay(s, e);
  ExploreReport rep = s.cfg.breadthFirst
                          ? exploreBreadthFirst(e, s.cfg.budget, s.cfg.frontierCap, s.symbols())
                          : explore(e, s.cfg.budget, s.cfg.frontierCap, s.symbols());
  if (rep.truncated && !s.cfg.allowTruncate) {
    s.err << "lambdav: frontier exceeded " << s.cfg.frontierCap
          << " results; raise --frontier-cap or pass --allow-truncate\n";
    return kExitUsage;
  }
  for (const auto &r : rep.results) {
    if (s.cfg.format == Format::JsonLines) {
      json line{{"result", printResult(r.result)}, {"steps", r.trace.size()}};
      if (s.cfg.showTraces)
        line["trace"] = formatTrace(r.trace);
      s.out << line.dump() << '\n';
      continue;
    }
    s.out << resultText(s, r.result) << "  (" << r.trace.size() << " steps)\n";
    if (s.cfg.showTraces) {
      std::istringstream lines(formatTrace(r.trace));
      for (std::string line; std::getline(lines, line);)
        s.out << "    " << line << '\n';
    }
  }
  if (s.cfg.format == Format::JsonLines)
    s.out << json{{"truncated", rep.truncated}, {"states", rep.statesVisited}}.dump() << '\n';
  else
    s.out << rep.results.size() << " results, " << rep.statesVisited << " states"
          << (rep.truncated ? ", truncated" : "") << '\n';
  return kExitOk;
}

int cmdCheck(Session &s, const Expr &e) {
  if (s.cfg.formula.empty()) {
    auto forms = synthesizeForms(e, s.cfg.fuel, s.cfg.height, s.symbols());
    for (const auto &f : forms) {
      if (s.cfg.format == Format::JsonLines)
        s.out << json{{"formula", printFormula(f)}}.dump() << '\n';
      else
        s.out << printFormula(f) << '\n';
    }
    return kExitOk;
  }
  Formula phi = parseFormula(s.cfg.formula);
  CheckResult res = checkAssign({}, e, phi, s.cfg.depth, s.symbols());
  if (res) {
    if (s.cfg.format == Format::JsonLines)
      s.out << json{{"found", true},
                    {"formula", printFormula(phi)},
                    {"depth", res.depthUsed},
                    {"size", derivationSize(*res.derivation)},
                    {"height", derivationHeight(*res.derivation)}}
                   .dump()
            << '\n';
    else
      s.out << printDerivation(*res.derivation);
    return kExitOk;
  }
  Expr r = streamEval(e, s.cfg.fuel, s.symbols());
  Formula seen = evidentForm(r, s.cfg.fuel, s.cfg.height, s.symbols());
  if (s.cfg.format == Format::JsonLines) {
    s.out << json{{"found", false},
                  {"formula", printFormula(phi)},
                  {"depth", res.depthUsed},
                  {"fuel", s.cfg.fuel},
                  {"observed", printResult(r)},
                  {"evident", printFormula(seen)}}
                 .dump()
          << '\n';
  } else {
    s.out << s.paint("33", "not found") << ": " << printFormula(phi) << " within depth "
          << res.depthUsed << '\n'
          << "at fuel " << s.cfg.fuel << " the program gives " << printResult(r) << '\n'
          << "evident formula: " << printFormula(seen) << '\n';
  }
  return kExitNotFound;
}

int cmdTest(Session &s) {
  std::vector<std::string> names = s.cfg.suites.empty() ? suiteNames() : s.cfg.suites;
  bool ok = true;
  for (const auto &name : names) {
    SuiteReport rep = runSuite(name, s.cfg.suite);
    ok = ok && rep.passed();
    if (s.cfg.format == Format::JsonLines) {
      s.out << json{{"suite", rep.name},       {"passed", rep.passed()}, {"cases", rep.cases},
                    {"failures", rep.failures}, {"seed", rep.seed},       {"seconds", rep.seconds},
                    {"notes", rep.notes}}
                   .dump()
            << '\n';
      continue;
    }
    std::ostringstream secs;
    secs << std::fixed << std::setprecision(2) << rep.seconds << "s";
    s.out << (rep.passed() ? s.paint("32", "PASS") : s.paint("31", "FAIL")) << "  "
          << std::left << std::setw(13) << rep.name << std::right << " cases=" << rep.cases
          << " failures=" << rep.failures << " seed=" << rep.seed << " " << secs.str() << '\n';
    for (const auto &n : rep.notes)
      s.out << "      " << n << '\n';
  }
  return ok ? kExitOk : kExitFailed;
}

} // namespace

int runCli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  RunConfig cfg;
  std::string format = "pretty";

  CLI::App app{"Run, explore and check lambda-v programs", "lambdav"};
  app.require_subcommand(1);
  app.add_option("--sym-table", cfg.symbolTablePath, "Symbol join table, one 'a b -> c' per line")
      ->check(CLI::ExistingFile);
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"pretty", "json-lines"}));

  auto *observeCmd = app.add_subcommand("observe", "Stream observations up to --max-fuel");
  observeCmd->add_option("file", cfg.sourcePath, "Program (.lv)")->required()->check(CLI::ExistingFile);
  observeCmd->add_option("--max-fuel", cfg.maxFuel, "Largest fuel to evaluate");
  observeCmd->add_flag("--every-fuel", cfg.everyFuel, "Print every fuel, not only changes");

  auto *exploreCmd = app.add_subcommand("explore", "List results reachable by reduction");
  exploreCmd->add_option("file", cfg.sourcePath, "Program (.lv)")->required()->check(CLI::ExistingFile);
  exploreCmd->add_option("--budget", cfg.budget, "Reduction steps per result");
  exploreCmd->add_option("--frontier-cap", cfg.frontierCap, "Results kept per subterm");
  exploreCmd->add_flag("--allow-truncate", cfg.allowTruncate, "Accept a capped frontier");
  exploreCmd->add_flag("--trace", cfg.showTraces, "Print a replayable trace for each result");
  exploreCmd->add_flag("--bfs", cfg.breadthFirst, "Use plain breadth-first search");
  exploreCmd->add_option("--replay", cfg.replayPath, "Replay a trace file instead")
      ->check(CLI::ExistingFile);

  auto *checkCmd = app.add_subcommand("check", "Certify a formula for a program");
  checkCmd->add_option("file", cfg.sourcePath, "Program (.lv)")->required()->check(CLI::ExistingFile);
  checkCmd->add_option("--formula", cfg.formula, "Formula; omit to list certified formulae");
  checkCmd->add_option("--depth", cfg.depth, "Fuel bound of the derivation search");
  checkCmd->add_option("--fuel", cfg.fuel, "Evaluation fuel for reports and listing");
  checkCmd->add_option("--height", cfg.height, "Formula height bound for listing");

  auto *testCmd = app.add_subcommand("test", "Run the property suites");
  testCmd->add_option("--suite", cfg.suites, "Suite to run (repeatable)")
      ->check(CLI::IsMember(suiteNames()));
  testCmd->add_option("--seed", cfg.suite.seed, "Random seed");
  testCmd->add_option("--depth", cfg.suite.depth, "Formula enumeration depth (order)");
  testCmd->add_option("--samples", cfg.suite.samples, "Sampled cases (order)");
  testCmd->add_option("--terms", cfg.suite.terms, "Random terms (expansion)");
  testCmd->add_option("--max-fuel", cfg.suite.maxFuel, "Fuel bound (monotonicity)");
  testCmd->add_option("--corpus", cfg.suite.corpusDir, "Corpus directory")
      ->check(CLI::ExistingDirectory);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &ex) {
    int code = app.exit(ex, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  cfg.format = format == "json-lines" ? Format::JsonLines : Format::Pretty;

  try {
    Session s{cfg, out, err,
              cfg.symbolTablePath.empty() ? SymbolTable::discrete()
                                          : SymbolTable::load(cfg.symbolTablePath),
              Paint(colorEnabled() && cfg.format == Format::Pretty)};
    if (testCmd->parsed())
      return cmdTest(s);
    Expr e = compileFile(cfg.sourcePath);
    if (observeCmd->parsed())
      return cmdObserve(s, e);
    if (exploreCmd->parsed())
      return cmdExplore(s, e);
    return cmdCheck(s, e);
  } catch (const ParseError &ex) {
    err << cfg.sourcePath << ":" << ex.what() << '\n';
  } catch (const std::exception &ex) {
    err << "lambdav: " << ex.what() << '\n';
  }
  return kExitUsage;
}

} // namespace lambdav
