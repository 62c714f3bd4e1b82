#include "fordc/ford.hpp"

#include "fordc/kernel/show.hpp"

#include <functional>

namespace fordc::ford {

using namespace syntax;
using kernel::CPattern;
using kernel::TermPtr;
using kernel::Term;

namespace {

[[noreturn]] void fail(const char* code, const std::string& msg) {
  throw TransformError(code, msg);
}

std::set<std::string> globalNames(const SourceModule& m) {
  std::set<std::string> out = preludeNames();
  for (const auto& d : m.decls) {
    out.insert(declName(d));
    if (auto* data = std::get_if<DataDecl>(&d))
      for (const auto& c : data->ctors)
        out.insert(c.name);
  }
  return out;
}

bool mentionsData(const TermPtr& t, const std::string& name) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term::Data>)
          return n.name == name;
        else if constexpr (std::is_same_v<T, Term::Pi>)
          return mentionsData(n.domain, name) || mentionsData(n.codomain, name);
        else if constexpr (std::is_same_v<T, Term::Lam>)
          return mentionsData(n.body, name);
        else if constexpr (std::is_same_v<T, Term::App>)
          return mentionsData(n.fn, name) || mentionsData(n.arg, name);
        else if constexpr (std::is_same_v<T, Term::Ctor>) {
          for (const auto& h : n.hidden)
            if (mentionsData(h, name))
              return true;
          for (const auto& a : n.args)
            if (mentionsData(a, name))
              return true;
          return false;
        } else if constexpr (std::is_same_v<T, Term::Id>)
          return mentionsData(n.carrier, name) || mentionsData(n.lhs, name) ||
                 mentionsData(n.rhs, name);
        else if constexpr (std::is_same_v<T, Term::J>)
          return mentionsData(n.motive, name) || mentionsData(n.base, name) ||
                 mentionsData(n.path, name);
        else
          return false;
      },
      t->node);
}

// Renames every occurrence of variable `from` in a surface expression. Binders
// that shadow it stop the renaming.
ExprPtr renameVar(const ExprPtr& e, const std::string& from, const std::string& to) {
  return std::visit(
      [&](const auto& n) -> ExprPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Var>)
          return n.name == from ? var(to) : e;
        else if constexpr (std::is_same_v<T, Expr::Pi>)
          return pi(n.name, renameVar(n.domain, from, to),
                    n.name == from ? n.codomain : renameVar(n.codomain, from, to));
        else if constexpr (std::is_same_v<T, Expr::Lam>)
          return n.name == from ? e : lam(n.name, renameVar(n.body, from, to));
        else if constexpr (std::is_same_v<T, Expr::App>)
          return app(renameVar(n.fn, from, to), renameVar(n.arg, from, to));
        else if constexpr (std::is_same_v<T, Expr::Id>)
          return idType(renameVar(n.carrier, from, to), renameVar(n.lhs, from, to),
                        renameVar(n.rhs, from, to));
        else if constexpr (std::is_same_v<T, Expr::J>)
          return jElim(renameVar(n.motive, from, to), renameVar(n.base, from, to),
                       renameVar(n.path, from, to));
        else if constexpr (std::is_same_v<T, Expr::Ann>)
          return ann(renameVar(n.term, from, to), renameVar(n.type, from, to));
        else
          return e;
      },
      e->node);
}

std::string shortName(const std::string& qualified) {
  auto dot = qualified.find('.');
  return dot == std::string::npos ? qualified : qualified.substr(dot + 1);
}

// Per constructor: how the availability variables (CtorInfo::hidden) are
// named in the Forded declaration, and the renamed availability row.
struct RowNaming {
  std::vector<std::string> hiddenNames;
  std::vector<bool> topLevel; // hidden entry bound by a top-level variable
  std::vector<std::string> rowVars;
  std::vector<bool> constrained;
  std::vector<Pattern> patterns;
  std::vector<std::string> hoisted;
};

RowNaming nameRow(const kernel::Signature& sig, const kernel::CtorInfo& ci,
                  const kernel::DataInfo& di, std::set<std::string>& taken) {
  RowNaming r;
  const size_t ni = di.indices.size();
  r.rowVars.resize(ni);
  r.constrained.resize(ni);
  std::vector<std::string> paramNames;
  for (const auto& p : di.params)
    paramNames.push_back(p.name);

  std::function<Pattern(const CPattern&, bool, size_t)> walk =
      [&](const CPattern& p, bool top, size_t pos) -> Pattern {
    if (auto* v = std::get_if<CPattern::Var>(&p.node)) {
      std::string base = v->name == "_" ? (top ? di.indices[pos].name : "x") : v->name;
      std::string name = freshName(base, taken);
      taken.insert(name);
      r.hiddenNames.push_back(name);
      r.topLevel.push_back(top);
      if (top)
        r.rowVars[pos] = name;
      else
        r.hoisted.push_back(name);
      return Pattern::variable(name);
    }
    if (auto* c = std::get_if<CPattern::Ctor>(&p.node)) {
      if (!sig.ctor(c->name)->hidden.empty())
        fail(codes::FordReadback,
             "availability pattern of '" + ci.shortName + "' matches on indexed constructor '" +
                 shortName(c->name) + "', whose own indices cannot be read back");
      std::vector<Pattern> args;
      for (const auto& a : c->args)
        args.push_back(walk(a, false, pos));
      return Pattern::ctor(sig.ctorSpelling(c->name), std::move(args));
    }
    if (std::holds_alternative<CPattern::Refl>(p.node))
      return Pattern::ctor(std::string(kReflName));
    const auto& in = std::get<CPattern::Inaccessible>(p.node);
    std::vector<std::string> names = paramNames;
    names.insert(names.end(), r.hiddenNames.begin(),
                 r.hiddenNames.begin() + (in.depth - static_cast<int>(paramNames.size())));
    return Pattern::inaccessible(kernel::readback(in.term, names, sig));
  };

  for (size_t i = 0; i < ni; ++i) {
    const CPattern& p = ci.availability[i];
    r.constrained[i] = !std::holds_alternative<CPattern::Var>(p.node);
    r.patterns.push_back(walk(p, true, i));
    if (r.constrained[i]) {
      r.rowVars[i] = freshName(di.indices[i].name, taken);
      taken.insert(r.rowVars[i]);
    }
  }
  if (r.hiddenNames.size() != ci.hidden.size())
    fail(codes::FordReadback, "cannot name the availability variables of '" + ci.shortName + "'");
  return r;
}

} // namespace

bool indexFree(const DataDecl& d) {
  for (const auto& c : d.ctors)
    for (const auto& p : c.availability)
      if (!p.isVar())
        return false;
  return true;
}

nlohmann::ordered_json Plan::toJson() const {
  nlohmann::ordered_json j;
  j["target"] = target;
  j["forded"] = forded;
  j["converters"] = {{"to", toName}, {"from", fromName}};
  auto ctorsJson = nlohmann::ordered_json::array();
  for (const auto& c : ctors) {
    nlohmann::ordered_json cj;
    cj["constructor"] = c.name;
    cj["forded"] = c.forded;
    cj["hoisted"] = c.hoisted;
    auto eqs = nlohmann::ordered_json::array();
    for (const auto& e : c.equations)
      eqs.push_back({{"index", e.index},
                     {"variable", e.variable},
                     {"pattern", e.pattern},
                     {"argument", e.argument}});
    cj["equations"] = eqs;
    ctorsJson.push_back(cj);
  }
  j["constructors"] = ctorsJson;
  return j;
}

std::pair<DataDecl, Plan> fordData(const SourceModule& m, const kernel::Kernel& k,
                                   const Options& opts) {
  const DataDecl* d = m.findData(opts.data);
  const kernel::Signature& sig = k.signature();
  if (!d)
    fail(codes::FordTarget, "no datatype named '" + opts.data + "'");
  if (d->indices.empty())
    fail(codes::FordNoIndex, "'" + d->name + "' has no indices; there is nothing to Ford");
  const kernel::DataInfo& di = *sig.data(d->name);

  std::set<std::string> globals = globalNames(m);
  Plan plan;
  plan.target = d->name;
  plan.forded = d->name + opts.suffix;
  plan.toName = "to" + plan.forded;
  plan.fromName = "from" + plan.forded;
  for (const auto& n : {plan.forded, plan.toName, plan.fromName})
    if (globals.count(n))
      fail(codes::FordTarget, "generated name '" + n + "' is already declared");
  globals.insert({plan.forded, plan.toName, plan.fromName});
  for (const auto& p : d->params)
    plan.params.push_back(p.name);
  for (const auto& i : d->indices)
    plan.indices.push_back(i.name);

  auto rename = [&](const ExprPtr& e) { return renameVar(e, d->name, plan.forded); };

  DataDecl out;
  out.name = plan.forded;
  out.params = d->params;
  out.indices = d->indices;
  for (const auto& cd : d->ctors) {
    if (cd.isPath) {
      out.ctors.push_back(cd);
      continue;
    }
    const kernel::CtorInfo& ci = *sig.ctor(d->name + "." + cd.name);
    std::set<std::string> taken = globals;
    taken.insert(plan.params.begin(), plan.params.end());
    RowNaming row = nameRow(sig, ci, di, taken);

    std::vector<std::string> scope = plan.params; // names by level for readback
    scope.insert(scope.end(), row.hiddenNames.begin(), row.hiddenNames.end());

    CtorDecl fc;
    fc.name = cd.name;
    for (const auto& v : row.rowVars)
      fc.availability.push_back(Pattern::variable(v));

    // Hoisted pattern variables, typed as the checker inferred them.
    for (size_t h = 0; h < ci.hidden.size(); ++h) {
      if (row.topLevel[h])
        continue;
      std::vector<std::string> names(scope.begin(), scope.begin() + plan.params.size() + h);
      fc.args.push_back({row.hiddenNames[h], kernel::readback(ci.hidden[h].type, names, sig)});
    }

    // One equality per constrained index.
    CtorPlan cp;
    cp.name = ci.name;
    cp.forded = plan.forded + "." + cd.name;
    cp.hoisted = row.hoisted;
    cp.rowVars = row.rowVars;
    cp.indexPatterns = row.patterns;
    size_t nconstrained = std::count(row.constrained.begin(), row.constrained.end(), true);
    std::vector<kernel::Val> env;
    for (int l = 0; l < static_cast<int>(scope.size()); ++l)
      env.push_back(kernel::vmk::var(l));
    auto patVals = k.availabilityValues(ci, env);
    auto ev = k.evaluator();
    for (size_t i = 0; i < row.rowVars.size(); ++i) {
      for (size_t j = 0; j < i; ++j) {
        int index = static_cast<int>(i - 1 - j);
        if (row.constrained[j] && kernel::mentionsIndex(di.indices[i].type, index))
          fail(codes::FordTarget, "index '" + d->indices[i].name + "' depends on index '" +
                                      d->indices[j].name + "', which '" + cd.name +
                                      "' constrains; Fording it would change its type");
      }
      if (!row.constrained[i])
        continue;
      std::vector<std::string> idxScope = plan.params;
      idxScope.insert(idxScope.end(), row.rowVars.begin(), row.rowVars.begin() + i);
      ExprPtr carrier = kernel::readback(di.indices[i].type, idxScope, sig);
      ExprPtr lhs =
          kernel::readback(ev.quote(static_cast<int>(scope.size()), patVals[i]), scope, sig);
      std::string eq = freshName(nconstrained == 1 ? "eq" : "eq_" + d->indices[i].name, taken);
      taken.insert(eq);
      fc.args.push_back({eq, idType(carrier, lhs, var(row.rowVars[i]))});
      cp.equations.push_back({i, row.rowVars[i], printExpr(lhs), eq});
    }

    // The original arguments, with recursive occurrences retargeted.
    std::vector<std::string> argScope = scope;
    for (size_t a = 0; a < ci.args.size(); ++a) {
      const TermPtr& t = ci.args[a].type;
      std::string name = freshName(ci.args[a].name == "_" ? "x" : ci.args[a].name, taken);
      taken.insert(name);
      auto [head, spine] = kernel::unspine(t);
      auto* dh = kernel::as<Term::Data>(head);
      if (dh && dh->name == d->name) {
        std::vector<ExprPtr> idx;
        for (size_t s = di.params.size(); s < spine.size(); ++s)
          idx.push_back(kernel::readback(spine[s], argScope, sig));
        cp.recursive.push_back(idx);
      } else {
        if (mentionsData(t, d->name))
          fail(codes::FordTarget, "argument '" + name + "' of '" + cd.name +
                                      "' uses '" + d->name +
                                      "' under a function type; converters cannot be generated");
        cp.recursive.push_back(std::nullopt);
      }
      fc.args.push_back({name, rename(kernel::readback(t, argScope, sig))});
      cp.args.push_back(name);
      argScope.push_back(name);
    }
    out.ctors.push_back(std::move(fc));
    plan.ctors.push_back(std::move(cp));
  }
  return {out, plan};
}

std::pair<FunDecl, FunDecl> genConverters(const Plan& plan, const DataDecl& original) {
  std::vector<ExprPtr> paramVars;
  for (const auto& p : plan.params)
    paramVars.push_back(var(p));

  auto header = [&](const std::string& name, const std::string& from, const std::string& to) {
    FunDecl f;
    f.name = name;
    f.params = original.params;
    f.params.insert(f.params.end(), original.indices.begin(), original.indices.end());
    std::set<std::string> taken(plan.params.begin(), plan.params.end());
    taken.insert(plan.indices.begin(), plan.indices.end());
    std::string v = freshName("v", taken);
    std::vector<ExprPtr> all = paramVars;
    for (const auto& i : plan.indices)
      all.push_back(var(i));
    f.params.push_back({v, apps(var(from), all)});
    f.result = apps(var(to), all);
    return f;
  };
  FunDecl to = header(plan.toName, plan.target, plan.forded);
  FunDecl from = header(plan.fromName, plan.forded, plan.target);

  auto paramPatterns = [&]() {
    std::vector<Pattern> ps;
    for (const auto& p : plan.params)
      ps.push_back(Pattern::variable(p));
    return ps;
  };
  auto recurse = [&](const std::string& fn, const CtorPlan& c, size_t a) -> ExprPtr {
    if (!c.recursive[a])
      return var(c.args[a]);
    std::vector<ExprPtr> args = paramVars;
    args.insert(args.end(), c.recursive[a]->begin(), c.recursive[a]->end());
    args.push_back(var(c.args[a]));
    return apps(var(fn), args);
  };

  for (const auto& c : plan.ctors) {
    std::string shortCtor = shortName(c.name);
    std::vector<Pattern> argPats;
    for (const auto& a : c.args)
      argPats.push_back(Pattern::variable(a));

    // to: match the original availability row, rebuild with refl proofs.
    Clause tc;
    tc.patterns = paramPatterns();
    tc.patterns.insert(tc.patterns.end(), c.indexPatterns.begin(), c.indexPatterns.end());
    tc.patterns.push_back(Pattern::ctor(shortCtor, argPats));
    std::vector<ExprPtr> targs;
    for (const auto& h : c.hoisted)
      targs.push_back(var(h));
    for (size_t i = 0; i < c.equations.size(); ++i)
      targs.push_back(refl());
    for (size_t a = 0; a < c.args.size(); ++a)
      targs.push_back(recurse(plan.toName, c, a));
    tc.rhs = apps(var(c.forded), targs);
    to.clauses.push_back(std::move(tc));

    // from: index variables, proofs matched against refl.
    Clause fc;
    fc.patterns = paramPatterns();
    for (const auto& v : c.rowVars)
      fc.patterns.push_back(Pattern::variable(v));
    std::vector<Pattern> fpats;
    for (const auto& h : c.hoisted)
      fpats.push_back(Pattern::variable(h));
    for (size_t i = 0; i < c.equations.size(); ++i)
      fpats.push_back(Pattern::ctor(std::string(kReflName)));
    fpats.insert(fpats.end(), argPats.begin(), argPats.end());
    fc.patterns.push_back(Pattern::ctor(c.forded, fpats));
    std::vector<ExprPtr> fargs;
    for (size_t a = 0; a < c.args.size(); ++a)
      fargs.push_back(recurse(plan.fromName, c, a));
    fc.rhs = apps(var(shortCtor), fargs);
    from.clauses.push_back(std::move(fc));
  }
  return {to, from};
}

Result ford(const SourceModule& m, const Options& opts, kernel::CheckOptions check) {
  kernel::Kernel k = kernel::checkModule(m, check);
  auto [data, plan] = fordData(m, k, opts);
  const DataDecl& original = *m.findData(opts.data);
  auto [to, from] = genConverters(plan, original);
  Result r;
  r.module = m;
  r.module.decls.push_back(data);
  r.module.decls.push_back(to);
  r.module.decls.push_back(from);
  r.plan = std::move(plan);
  // The output must stand on its own: check what a reader of the file sees.
  kernel::checkModule(parse(printModule(r.module)), check);
  return r;
}

} // namespace fordc::ford
