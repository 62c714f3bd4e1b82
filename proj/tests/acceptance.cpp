// One line per acceptance criterion; exits nonzero if any fails.

#include "fordc/cli.hpp"
#include "fordc/ford.hpp"
#include "fordc/kernel/canonical.hpp"
#include "fordc/merge.hpp"
#include "support.hpp"

#include <chrono>
#include <functional>
#include <iostream>

using namespace fordc;
using namespace fordc::kernel;

namespace {

// Returns an empty string on success, otherwise what went wrong.
using Check = std::function<std::string()>;

int failures = 0;

void criterion(int n, const std::string& name, const Check& check) {
  std::string problem;
  try {
    problem = check();
  } catch (const Error& e) {
    problem = e.code() + ": " + e.diagnostic().message;
  } catch (const std::exception& e) {
    problem = std::string("exception: ") + e.what();
  }
  std::cout << (problem.empty() ? "PASS" : "FAIL") << " " << n << " " << name;
  if (!problem.empty()) {
    std::cout << ": " << problem;
    ++failures;
  }
  std::cout << "\n";
}

Val closed(const Kernel& k, const std::string& head, std::vector<Val> args) {
  auto ev = k.evaluator();
  return ev.applyAll(ev.eval({}, mk::data(head)), args);
}

Val nat(int n) {
  Val v = vmk::ctor("Nat.zero", {}, {});
  for (int i = 0; i < n; ++i)
    v = vmk::ctor("Nat.suc", {}, {v});
  return v;
}

// Counts values on which `from (to v)` (or the reverse) is not `v`.
size_t roundTripFailures(const Kernel& k, const std::string& there, const std::string& back,
                         const std::vector<Val>& prefix, const std::vector<Val>& values) {
  size_t bad = 0;
  auto ev = k.evaluator();
  for (const auto& v : values) {
    auto args = prefix;
    args.push_back(v);
    Val mid = ev.applyAll(ev.eval({}, mk::fun(there)), args);
    args.back() = mid;
    Val r = ev.applyAll(ev.eval({}, mk::fun(back)), args);
    bad += !termEqual(ev.quote(0, r), ev.quote(0, v));
  }
  return bad;
}

struct Target {
  std::string file, data;
};

const std::vector<Target> kFordTargets = {
    {"so.fda", "So"}, {"vec.fda", "Vec"}, {"fin.fda", "Fin"}, {"helix.fda", "Helix"},
    {"mini-u.fda", "PreInt"}};

} // namespace

int main() {
  criterion(1, "positive corpus checks and the full corpus runs in under 10s", [] {
    for (const auto& name : support::positiveInputs())
      support::checked(name);
    std::ostringstream out, err;
    cli::Streams s{out, err, false};
    auto start = std::chrono::steady_clock::now();
    int code = cli::cmdCorpus({support::corpusPath("manifest.txt")}, s);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (code != 0)
      return "corpus run failed:\n" + out.str();
    if (secs >= 10)
      return "corpus run took " + std::to_string(secs) + "s";
    return std::string();
  });

  criterion(2, "Ford output matches the goldens and re-checks", [] {
    for (const auto& [file, data] : kFordTargets) {
      std::string golden = file.substr(0, file.size() - 4) + ".forded.golden.fda";
      auto r = ford::ford(support::load(file), {data, "F"});
      std::string text = syntax::printModule(r.module);
      if (text != support::slurp(support::corpusPath(golden)))
        return golden + " differs";
      checkModule(syntax::parse(text));
    }
    auto r = ford::ford(support::load("so.fda"), {"So", "F"});
    const auto* sof = r.module.findData("SoF");
    if (!sof || sof->ctors.size() != 1 || sof->ctors[0].args.size() != 1)
      return std::string("SoF should have one constructor with one argument");
    std::string arg = syntax::printExpr(sof->ctors[0].args[0].type);
    if (arg != "Id Bool true b")
      return "the SoF argument is " + arg;
    return std::string();
  });

  criterion(3, "every Forded family has only variable availability patterns", [] {
    for (const auto& [file, data] : kFordTargets) {
      auto r = ford::ford(support::load(file), {data, "F"});
      const auto* d = r.module.findData(data + "F");
      if (!d || !ford::indexFree(*d))
        return data + "F has a constrained row";
    }
    return std::string();
  });

  criterion(4, "to/from round trips on canonical values to depth 3", [] {
    size_t bad = 0, total = 0;
    {
      Kernel k = checkModule(ford::ford(support::load("so.fda"), {"So", "F"}).module);
      for (const char* b : {"Bool.true", "Bool.false"}) {
        Val bv = vmk::ctor(b, {}, {});
        auto vs = canonicalValues(k, closed(k, "So", {bv}), 3);
        auto fs = canonicalValues(k, closed(k, "SoF", {bv}), 3);
        bad += roundTripFailures(k, "toSoF", "fromSoF", {bv}, vs);
        bad += roundTripFailures(k, "fromSoF", "toSoF", {bv}, fs);
        total += vs.size() + fs.size();
      }
    }
    {
      Kernel k = checkModule(ford::ford(support::load("vec.fda"), {"Vec", "F"}).module);
      Val a = closed(k, "Nat", {});
      for (int n = 0; n <= 2; ++n) {
        auto vs = canonicalValues(k, closed(k, "Vec", {a, nat(n)}), 3);
        auto fs = canonicalValues(k, closed(k, "VecF", {a, nat(n)}), 3);
        bad += roundTripFailures(k, "toVecF", "fromVecF", {a, nat(n)}, vs);
        bad += roundTripFailures(k, "fromVecF", "toVecF", {a, nat(n)}, fs);
        total += vs.size() + fs.size();
      }
    }
    {
      Kernel k = checkModule(ford::ford(support::load("fin.fda"), {"Fin", "F"}).module);
      for (int n = 0; n <= 3; ++n) {
        auto vs = canonicalValues(k, closed(k, "Fin", {nat(n)}), 3);
        auto fs = canonicalValues(k, closed(k, "FinF", {nat(n)}), 3);
        bad += roundTripFailures(k, "toFinF", "fromFinF", {nat(n)}, vs);
        bad += roundTripFailures(k, "fromFinF", "toFinF", {nat(n)}, fs);
        total += vs.size() + fs.size();
      }
    }
    if (bad)
      return std::to_string(bad) + " of " + std::to_string(total) + " values failed";
    if (total < 20)
      return "only " + std::to_string(total) + " values generated";
    return std::string();
  });

  criterion(5, "merge goldens, re-checks and the indexed-member exit code", [] {
    auto r = merge::merge(support::load("d1d2.fda"), {{"D1", "D2"}});
    if (syntax::printModule(r.module) != support::slurp(support::corpusPath("d1d2.merged.golden.fda")))
      return std::string("d1d2 differs from its golden");
    auto src = support::load("d1d2.fda");
    size_t members = src.findData("D1")->ctors.size() + src.findData("D2")->ctors.size();
    if (r.module.findData("U")->ctors.size() != 2 || r.module.findData("T")->ctors.size() != members)
      return std::string("unexpected tag or constructor count");
    for (const char* file : {"bool.fda", "nat.fda"}) {
      std::string type = std::string(file) == "bool.fda" ? "Bool" : "Nat";
      auto m = merge::merge(support::load(file), {{type}});
      checkModule(syntax::parse(syntax::printModule(m.module)));
    }
    std::ostringstream out, err;
    cli::Streams s{out, err, false};
    cli::MergeArgs a;
    a.path = support::corpusPath("vec.fda");
    a.types = {"Vec"};
    int code = cli::cmdMerge(a, s);
    if (code != cli::exit_code::MergeBlock)
      return "merging Vec exited " + std::to_string(code);
    return std::string();
  });

  criterion(6, "stuck split before Fording, delayed rewriting after", [] {
    auto cases = cli::parseManifest("reject bad-split-so-stuck.fda E-UNIFY-STUCK\n"
                                    "accept split-sof-delayed.fda\n",
                                    FORDC_CORPUS_DIR);
    for (const auto& c : cases) {
      auto r = cli::runCase(c, kDefaultStepBudget);
      if (!r.passed)
        return c.text + ": " + r.detail;
    }
    return std::string();
  });

  criterion(7, "transport laws, normalization idempotence and print/parse round trip", [] {
    Kernel k = checkModule(syntax::parse(support::kLawsModule));
    auto instances = support::substInstances(20);
    if (instances.size() != 20)
      return std::string("expected 20 instances");
    for (const auto& i : instances) {
      std::string x = "(" + i.point + ")";
      std::string r = "(refl : Id " + i.carrier + " " + x + " " + x + ")";
      std::string s = "subst " + i.carrier + " (" + i.motive + ") " + x + " " + x;
      std::string trans = "(trans " + i.carrier + " " + x + " " + x + " " + x + " " + r + " " + r + ")";
      Context ctx;
      auto [once, ty] = k.infer(ctx, syntax::parseExpr(s + " " + r + " (" + i.value + ")"));
      TermPtr u = k.check(ctx, syntax::parseExpr(i.value), ty);
      if (!k.convertible(ctx, k.eval(ctx, once), k.eval(ctx, u)))
        return "subst along refl is not the identity at " + i.point;
      auto lhs = k.infer(ctx, syntax::parseExpr(s + " " + trans + " (" + i.value + ")")).first;
      auto rhs = k.infer(ctx, syntax::parseExpr(s + " " + r + " (" + s + " " + r + " (" + i.value + "))")).first;
      if (!k.convertible(ctx, k.eval(ctx, lhs), k.eval(ctx, rhs)))
        return "the composition law fails at " + i.point;
    }
    for (const auto& name : support::positiveInputs()) {
      Kernel m = support::checked(name);
      auto ev = m.evaluator();
      for (const auto& n : m.signature().order()) {
        const FunInfo* f = m.signature().fun(n);
        if (!f)
          continue;
        for (const auto& cl : f->clauses) {
          Env env;
          for (int l = 0; l < cl.vars; ++l)
            env.push_back(vmk::var(l));
          auto nf = ev.normalize(env, cl.vars, cl.rhs);
          if (!termEqual(ev.normalize(env, cl.vars, nf), nf))
            return "normalization is not idempotent in " + name + ", " + n;
        }
      }
    }
    for (const auto& name : support::parseableInputs()) {
      auto m = support::load(name);
      std::string printed = syntax::printModule(m);
      auto again = syntax::parse(printed);
      if (!syntax::alphaEquivalent(m, again) || syntax::printModule(again) != printed)
        return "round trip fails on " + name;
    }
    return std::string();
  });

  criterion(8, "integer module: succ/pred types and J on the loop stays neutral", [] {
    Kernel k = support::checked("int-merged-succ.fda");
    for (const char* fn : {"succ", "pred"}) {
      const FunInfo* f = k.signature().fun(fn);
      if (!f)
        return std::string("missing ") + fn;
      std::string ty = support::showClosed(k, f->type);
      if (ty != "T Int_tag -> T Int_tag")
        return std::string(fn) + " has type " + ty;
    }
    Context ctx;
    auto t = k.normalize(ctx, k.elaborateClosed("succ zero_T", "T Int_tag"));
    auto* j = as<Term::J>(t);
    if (!j || !termEqual(j->path, mk::axiom("U.path")))
      return "succ zero_T normalizes to " + support::showClosed(k, t);
    if (k.convertible(ctx, k.evalClosed(k.elaborateClosed("succ (pred zero_T)", "T Int_tag")),
                      k.evalClosed(k.elaborateClosed("zero_T", "T Int_tag"))))
      return std::string("succ (pred zero_T) computed to zero_T");
    return std::string();
  });

  return failures == 0 ? 0 : 1;
}
