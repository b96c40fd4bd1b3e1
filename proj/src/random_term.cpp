#include "lambdav/properties.hpp"

#include "lambdav/surface.hpp"

#include <algorithm>
#include <filesystem>

namespace lambdav {

namespace {

class TermGen {
public:
  TermGen(std::mt19937_64 &rng, const RandomTermOptions &opts) : rng_(rng), opts_(opts) {}

  Expr term(std::size_t size) {
    if (size <= 1)
      return leaf();
    switch (pick(9)) {
    case 0:
      return binder(size, [&](const std::string &x, std::size_t s) { return lam(x, term(s)); });
    case 1:
    case 2: {
      std::size_t left = 1 + pick(size - 1);
      if (chance(opts_.redexBias))
        return app(binder(left, [&](const std::string &x, std::size_t s) { return lam(x, term(s)); }),
                   value(size - left));
      return app(term(left), term(size - left));
    }
    case 3: {
      std::size_t left = 1 + pick(size - 1);
      return pair(term(left), term(size - left));
    }
    case 4: {
      std::vector<Expr> elems;
      std::size_t n = pick(3);
      for (std::size_t i = 0; i < n; ++i)
        elems.push_back(term(std::max<std::size_t>(1, (size - 1) / std::max<std::size_t>(n, 1))));
      return setLit(std::move(elems));
    }
    case 5: {
      std::size_t left = 1 + pick(size - 1);
      return join(term(left), term(size - left));
    }
    case 6: {
      std::size_t left = 1 + pick(size - 1);
      return letSym(Symbol(chance(0.5) ? "a" : "b"), term(left), term(size - left));
    }
    case 7: {
      std::size_t left = 1 + pick(size - 1);
      Expr scrut = chance(0.6) ? pair(value(left), value(1)) : term(left);
      std::string x = fresh(), y = fresh();
      scope_.push_back(x);
      scope_.push_back(y);
      Expr body = term(size - left);
      scope_.resize(scope_.size() - 2);
      return letPair(x, y, scrut, body);
    }
    default: {
      std::size_t left = 1 + pick(size - 1);
      Expr src = chance(0.6) ? setLit({value(1), value(left)}) : term(left);
      std::string x = fresh();
      scope_.push_back(x);
      Expr body = term(size - left);
      scope_.pop_back();
      return bigJoin(x, src, body);
    }
    }
  }

private:
  std::size_t pick(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

  std::string fresh() { return "v" + std::to_string(counter_++); }

  template <class F> Expr binder(std::size_t size, F make) {
    std::string x = fresh();
    scope_.push_back(x);
    Expr e = make(x, size > 1 ? size - 1 : 1);
    scope_.pop_back();
    return e;
  }

  Expr leaf() {
    if (!scope_.empty() && chance(0.45))
      return var(scope_[pick(scope_.size())]);
    switch (pick(10)) {
    case 0:
      return bot();
    case 1:
      return top();
    case 2:
    case 3:
      return botv();
    case 4:
    case 5:
    case 6:
      return symbol("a");
    default:
      return symbol("b");
    }
  }

  Expr value(std::size_t size) {
    if (size <= 1) {
      if (!scope_.empty() && chance(0.3))
        return var(scope_[pick(scope_.size())]);
      return chance(0.5) ? symbol("a") : (chance(0.5) ? symbol("b") : botv());
    }
    switch (pick(3)) {
    case 0:
      return binder(size, [&](const std::string &x, std::size_t s) { return lam(x, term(s)); });
    case 1: {
      std::size_t left = 1 + pick(size - 1);
      return pair(value(left), value(size - left));
    }
    default:
      return setLit({value(size - 1)});
    }
  }

  std::mt19937_64 &rng_;
  const RandomTermOptions &opts_;
  std::vector<std::string> scope_;
  std::size_t counter_ = 0;
};

} // namespace

Expr randomTerm(std::mt19937_64 &rng, const RandomTermOptions &opts) {
  TermGen gen(rng, opts);
  return gen.term(opts.size);
}

std::vector<CorpusProgram> loadCorpus(const std::string &dir) {
  std::vector<CorpusProgram> out;
  for (const auto &entry : std::filesystem::directory_iterator(dir))
    if (entry.path().extension() == ".lv")
      out.push_back({entry.path().stem().string(), compileFile(entry.path().string())});
  std::sort(out.begin(), out.end(),
            [](const CorpusProgram &a, const CorpusProgram &b) { return a.name < b.name; });
  return out;
}

std::size_t oracleBudget(std::size_t fuel) { return 5 * fuel + 5; }

} // namespace lambdav
