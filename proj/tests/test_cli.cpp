#include <doctest.h>

#include "lambdav/cli.hpp"

#include <json.hpp>

#include <algorithm>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace lambdav;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  setenv("LAMBDAV_COLOR", "0", 1);
  args.insert(args.begin(), "lambdav");
  std::vector<const char *> argv;
  for (const auto &a : args)
    argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = runCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string corpus(const std::string &name) {
  return std::string(LAMBDAV_CORPUS_DIR) + "/" + name + ".lv";
}

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string scratch(const std::string &name, const std::string &text) {
  auto path = std::filesystem::temp_directory_path() / ("lambdav_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

} // namespace

TEST_CASE("golden traces") {
  auto fromN = cli({"observe", corpus("fromN"), "--max-fuel", "10"});
  CHECK(fromN.code == kExitOk);
  CHECK(fromN.out == slurp(LAMBDAV_GOLDEN_DIR "/fromN.observe"));
  auto twophase = cli({"observe", corpus("twophase"), "--max-fuel", "32"});
  CHECK(twophase.code == kExitOk);
  CHECK(twophase.out == slurp(LAMBDAV_GOLDEN_DIR "/twophase.observe"));
}

TEST_CASE("observe") {
  auto amb = cli({"observe", corpus("ambiguous")});
  CHECK(amb.code == kExitTop);
  CHECK(amb.out.find("   1  ⊤\n") != std::string::npos);

  auto every = cli({"observe", corpus("fromN"), "--max-fuel", "3", "--every-fuel"});
  CHECK(every.out == "   0  ⊥\n   1  ⊥\n   2  ⊥\n   3  ⊥\n");
}

TEST_CASE("json-lines describes the same results") {
  auto pretty = cli({"observe", corpus("twophase"), "--max-fuel", "20"});
  auto lines = cli({"--format", "json-lines", "observe", corpus("twophase"), "--max-fuel", "20"});
  std::istringstream in(lines.out);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line); ++n) {
    auto j = nlohmann::json::parse(line);
    REQUIRE(j.contains("fuel"));
    REQUIRE(j.contains("result"));
    CHECK(pretty.out.find(j["result"].get<std::string>() + "\n") != std::string::npos);
  }
  CHECK(n == 5);
}

TEST_CASE("explore") {
  auto r = cli({"explore", corpus("pairs_join")});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("{(1, 2), (2, 3)}  (1 steps)") != std::string::npos);
  CHECK(r.out.find("{(1, 2)}  (2 steps)") != std::string::npos);
  CHECK(r.out.find("{(2, 3)}  (2 steps)") != std::string::npos);

  auto evens = cli({"explore", corpus("evens"), "--budget", "48"});
  CHECK(evens.out.find("{0, 2}  (") != std::string::npos);

  auto capped = cli({"explore", corpus("evens"), "--budget", "24", "--frontier-cap", "2"});
  CHECK(capped.code == kExitUsage);
  CHECK(capped.err.find("frontier") != std::string::npos);
  auto allowed = cli(
      {"explore", corpus("evens"), "--budget", "24", "--frontier-cap", "2", "--allow-truncate"});
  CHECK(allowed.code == kExitOk);
  CHECK(allowed.out.find("truncated") != std::string::npos);
}

TEST_CASE("replay round-trips a trace") {
  auto r = cli({"--format", "json-lines", "explore", corpus("evens"), "--budget", "24", "--trace"});
  std::istringstream in(r.out);
  std::size_t replayed = 0;
  for (std::string line; std::getline(in, line);) {
    auto j = nlohmann::json::parse(line);
    if (!j.contains("trace"))
      continue;
    auto path = scratch("trace" + std::to_string(replayed), j["trace"].get<std::string>());
    auto back = cli({"explore", corpus("evens"), "--replay", path});
    CHECK(back.code == kExitOk);
    CHECK(back.out == j["result"].get<std::string>() + "\n");
    ++replayed;
  }
  CHECK(replayed >= 3);
  auto bad = cli({"explore", corpus("evens"), "--replay", scratch("bad", "(Beta, /7)\n")});
  CHECK(bad.code == kExitUsage);
}

TEST_CASE("check") {
  auto id = scratch("id.lv", "\\x. x\n");
  auto r = cli({"check", id, "--formula", "\\/ ['a -> 'a]", "--depth", "4", "--fuel", "8"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.rfind("TFUN", 0) == 0);

  auto b = cli({"check", corpus("fromN"), "--formula", "bot"});
  CHECK(b.code == kExitOk);
  CHECK(std::count(b.out.begin(), b.out.end(), '\n') == 1);
  CHECK(b.out.rfind("TBOT ", 0) == 0);

  auto set = scratch("zero.lv", "{0}\n");
  auto nf = cli({"check", set, "--formula", "{'two}", "--depth", "6"});
  CHECK(nf.code == kExitNotFound);
  CHECK(nf.out.find("not found") != std::string::npos);
  CHECK(nf.out.find("within depth 6") != std::string::npos);

  auto malformed = cli({"check", set, "--formula", "{'two"});
  CHECK(malformed.code == kExitUsage);
  CHECK_FALSE(malformed.err.empty());

  auto listed = cli({"check", corpus("reaches"), "--fuel", "16", "--height", "2"});
  CHECK(listed.code == kExitOk);
  CHECK(listed.out.find("{'a, 'b, 'c, 'd}") != std::string::npos);
}

TEST_CASE("test subcommand") {
  auto r = cli({"test", "--suite", "order", "--depth", "2", "--samples", "100"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.rfind("PASS  order", 0) == 0);
  auto a = cli({"test", "--suite", "expansion", "--terms", "30", "--seed", "17"});
  auto b = cli({"test", "--suite", "expansion", "--terms", "30", "--seed", "17"});
  CHECK(a.code == kExitOk);
  auto strip = [](std::string s) { return s.substr(0, s.find(" seed=")); };
  CHECK(strip(a.out) == strip(b.out));
  CHECK(a.out.find("seed=17") != std::string::npos);
  CHECK(cli({"test", "--suite", "nope"}).code == kExitUsage);
}

TEST_CASE("usage and input errors") {
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"observe"}).code == kExitUsage);
  CHECK(cli({"observe", "/nonexistent.lv"}).code == kExitUsage);
  CHECK(cli({"--help"}).code == kExitOk);
  auto bad = cli({"observe", scratch("bad.lv", "def f x = y\nf 1\n")});
  CHECK(bad.code == kExitUsage);
  CHECK(bad.err.find(":1:") != std::string::npos);
  auto badTable = cli({"--sym-table", scratch("bad.sym", "a b\n"), "observe", corpus("fromN")});
  CHECK(badTable.code == kExitUsage);
}

TEST_CASE("symbol tables change joins") {
  auto prog = scratch("lohi.lv", "'lo \\/ 'hi\n");
  CHECK(cli({"observe", prog}).code == kExitTop);
  auto r = cli({"--sym-table", scratch("lohi.sym", "lo hi -> hi\n"), "observe", prog});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("'hi\n") != std::string::npos);
}
