#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fordc/kernel/canonical.hpp"
#include "fordc/kernel/show.hpp"
#include "fordc/merge.hpp"
#include "support.hpp"

#include <map>

using namespace fordc;
using namespace fordc::kernel;

namespace {

merge::Options block(std::vector<std::string> types, std::vector<std::string> paths = {}) {
  merge::Options o;
  o.types = std::move(types);
  for (const auto& p : paths)
    o.paths.push_back(merge::parsePathSpec(p));
  return o;
}

std::string mergeCode(const std::string& src, const merge::Options& opts) {
  try {
    merge::merge(syntax::parse(src), opts);
  } catch (const Error& e) {
    return e.code();
  }
  return "ok";
}

std::string mergeCode(const std::string& src, std::vector<std::string> types,
                      std::vector<std::string> paths = {}) {
  try {
    return mergeCode(src, block(std::move(types), std::move(paths)));
  } catch (const Error& e) {
    return e.code();
  }
}

TermPtr retag(const TermPtr& t, const std::map<std::string, std::string>& ctorMap) {
  auto* c = as<Term::Ctor>(t);
  if (!c)
    return t;
  std::vector<TermPtr> args;
  for (const auto& a : c->args)
    args.push_back(retag(a, ctorMap));
  return mk::ctor(ctorMap.at(c->name), {}, args);
}

} // namespace

TEST_CASE("two plain datatypes share one family") {
  auto r = merge::merge(support::load("d1d2.fda"), block({"D1", "D2"}));
  const auto* u = r.module.findData("U");
  const auto* t = r.module.findData("T");
  REQUIRE(u);
  REQUIRE(t);
  CHECK(u->ctors.size() == 2);
  CHECK(u->ctors[0].name == "D1_tag");
  CHECK(u->ctors[1].name == "D2_tag");
  REQUIRE(t->ctors.size() == 4);
  CHECK(t->indices.size() == 1);
  for (const auto& c : t->ctors) {
    CAPTURE(c.name);
    // Each constructor is available at exactly one tag.
    REQUIRE(c.availability.size() == 1);
    auto* tag = std::get_if<syntax::Pattern::Ctor>(&c.availability[0].node);
    REQUIRE(tag);
    CHECK(tag->args.empty());
  }
  CHECK(syntax::printPattern(t->ctors[2].availability[0]) == "D2_tag");
  CHECK(r.module.findFun("D1"));
  CHECK(r.module.findFun("D2"));
  CHECK(r.plan.tagOf.size() == 2);
  CHECK(r.plan.ctorMap.size() == 4);
  CHECK(r.plan.indexName == "u");

  auto j = r.plan.toJson();
  CHECK(j["enumName"] == "U");
  CHECK(j["familyName"] == "T");
  CHECK(j["block"].size() == 2);
  CHECK(syntax::printModule(r.module) ==
        support::slurp(support::corpusPath("d1d2.merged.golden.fda")));
}

TEST_CASE("singleton and recursive blocks re-check") {
  auto b = merge::merge(support::load("bool.fda"), block({"Bool"}));
  CHECK_NOTHROW(checkModule(b.module));
  CHECK(b.module.findData("U")->ctors.size() == 1);

  auto n = merge::merge(support::load("nat.fda"), block({"Nat"}));
  CHECK_NOTHROW(checkModule(n.module));
  const auto* t = n.module.findData("T");
  REQUIRE(t);
  CHECK(syntax::printExpr(t->ctors[1].args[0].type) == "T Nat_tag");
}

TEST_CASE("custom names") {
  merge::Options o = block({"Nat"});
  o.enumName = "Code";
  o.familyName = "El";
  auto r = merge::merge(support::load("nat.fda"), o);
  CHECK(r.module.findData("Code"));
  CHECK(r.module.findData("El"));
  CHECK_NOTHROW(checkModule(r.module));
}

TEST_CASE("without paths, mergeWithPaths is mergeBlock") {
  for (auto [file, types] : std::vector<std::pair<std::string, std::vector<std::string>>>{
           {"d1d2.fda", {"D1", "D2"}}, {"nat.fda", {"Nat"}}, {"bool.fda", {"Bool"}}}) {
    CAPTURE(file);
    auto m = support::load(file);
    auto [u1, t1, a1, p1] = merge::mergeBlock(m, block(types));
    auto [u2, t2, a2, p2] = merge::mergeWithPaths(m, block(types));
    CHECK(syntax::printDecl(u1) == syntax::printDecl(u2));
    CHECK(syntax::printDecl(t1) == syntax::printDecl(t2));
    REQUIRE(a1.size() == a2.size());
    for (size_t i = 0; i < a1.size(); ++i)
      CHECK(syntax::printDecl(a1[i]) == syntax::printDecl(a2[i]));
    CHECK(p1.toJson() == p2.toJson());
  }
}

TEST_CASE("every value of a member is a value of its tag") {
  auto m = support::load("d1d2.fda");
  Kernel before = checkModule(m);
  auto r = merge::merge(m, block({"D1", "D2"}));
  Kernel after = checkModule(r.module);
  std::map<std::string, std::string> ctorMap(r.plan.ctorMap.begin(), r.plan.ctorMap.end());

  for (const auto& [member, tag] : r.plan.tagOf) {
    CAPTURE(member);
    auto values = canonicalValues(before, before.evalClosed(mk::data(member)), 3);
    CHECK_FALSE(values.empty());
    Val tagged = after.evalClosed(mk::app(mk::data("T"), mk::ctor("U." + tag, {}, {})));
    auto ev = before.evaluator();
    for (const auto& v : values) {
      TermPtr moved = retag(ev.quote(0, v), ctorMap);
      Context ctx;
      CHECK_NOTHROW(after.check(ctx, readback(moved, {}, after.signature()), tagged));
    }
    CHECK(canonicalValues(after, tagged, 3).size() == values.size());
  }
}

TEST_CASE("a path on the enumeration transports along the family") {
  auto r = merge::merge(support::load("int-point.fda"), block({"Int"}, {"path:Int:Int"}));
  CHECK(syntax::printModule(r.module) ==
        support::slurp(support::corpusPath("int-point.merged.golden.fda")));
  REQUIRE(r.plan.paths.size() == 1);
  std::string src = syntax::printModule(r.module) + R"(
def succ (v : T Int_tag) : T Int_tag
  = subst U T Int_tag Int_tag path v

def pred (v : T Int_tag) : T Int_tag
  = subst U T Int_tag Int_tag (sym U Int_tag Int_tag path) v
)";
  Kernel k = checkModule(syntax::parse(src));
  Context ctx;
  auto t = k.normalize(ctx, k.elaborateClosed("succ zero_T", "Int"));
  REQUIRE(as<Term::J>(t));
  CHECK(termEqual(as<Term::J>(t)->path, mk::axiom("U.path")));
  auto a = k.evalClosed(k.elaborateClosed("succ (pred zero_T)", "Int"));
  auto b = k.evalClosed(k.elaborateClosed("zero_T", "Int"));
  CHECK_FALSE(k.convertible(ctx, a, b));
}

TEST_CASE("later declarations follow the renamed constructors") {
  auto r = merge::merge(support::load("nat.fda"), block({"Nat"}));
  std::string printed = syntax::printModule(r.module);
  CHECK(printed.find("suc_T") != std::string::npos);
  CHECK(printed.find("| zero,") == std::string::npos);
  CHECK(printed.find("| zero_T, n => n") != std::string::npos);
}

TEST_CASE("merge errors") {
  std::string nat = "data Nat | zero | suc (n : Nat)\n";
  CHECK(mergeCode(support::slurp(support::corpusPath("vec.fda")), {"Vec"}) == "E-MERGE-BLOCK");
  CHECK(mergeCode("data List (A : Type) | nil | cons (x : A) (xs : List A)", {"List"}) ==
        "E-MERGE-BLOCK");
  CHECK(mergeCode("data S | s | p : Id S s s", {"S"}) == "E-MERGE-BLOCK");
  CHECK(mergeCode("data A | a\ndata B : (x : A) | a => b", {"A", "B"}) == "E-MERGE-BLOCK");
  CHECK(mergeCode("data A | a\ndef f : A = a\ndata B | b (x : A)", {"A", "B"}) ==
        "E-MERGE-BLOCK");
  CHECK(mergeCode("data A | a\ndata C | c\ndata B | b", {"A", "B"}) == "ok");
  CHECK(mergeCode(nat, {"Missing"}) == "E-MERGE-BLOCK");
  CHECK(mergeCode(nat, std::vector<std::string>{}) == "E-MERGE-BLOCK");
  CHECK(mergeCode(nat, {"Nat", "Nat"}) == "E-MERGE-BLOCK");

  CHECK(mergeCode(nat + "data U | u", {"Nat"}) == "E-MERGE-NAME");
  CHECK(mergeCode(nat + "data Nat_tag | q", {"Nat"}) == "E-MERGE-NAME");
  CHECK(mergeCode("data A | x\ndata B | x", {"A"}) == "E-MERGE-NAME");
  CHECK(mergeCode("data A | x\ndata B | x", {"A", "B"}) == "E-MERGE-NAME");

  CHECK(mergeCode(nat, {"Nat"}, {"p:Nat:Int"}) == "E-MERGE-PATH");
  CHECK(mergeCode(nat, {"Nat"}, {"p:Nat"}) == "E-MERGE-PATH");
  CHECK(mergeCode(nat, {"Nat"}, {"p:Nat:Nat"}) == "ok");
  CHECK(mergeCode("data A | a\ndata B | b", {"A", "B"}, {"p:A:B"}) == "ok");
}
