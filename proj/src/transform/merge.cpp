#include "fordc/merge.hpp"

#include <algorithm>
#include <map>

namespace fordc::merge {

using namespace syntax;

namespace {

[[noreturn]] void fail(const char* code, const std::string& msg) {
  throw TransformError(code, msg);
}

using Subst = std::map<std::string, ExprPtr>;

Subst without(const Subst& s, const std::string& name) {
  if (!s.count(name))
    return s;
  Subst out = s;
  out.erase(name);
  return out;
}

ExprPtr substitute(const ExprPtr& e, const Subst& s) {
  if (s.empty())
    return e;
  return std::visit(
      [&](const auto& n) -> ExprPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Var>) {
          auto it = s.find(n.name);
          return it == s.end() ? e : it->second;
        } else if constexpr (std::is_same_v<T, Expr::Pi>) {
          return pi(n.name, substitute(n.domain, s), substitute(n.codomain, without(s, n.name)));
        } else if constexpr (std::is_same_v<T, Expr::Lam>) {
          return lam(n.name, substitute(n.body, without(s, n.name)));
        } else if constexpr (std::is_same_v<T, Expr::App>) {
          return app(substitute(n.fn, s), substitute(n.arg, s));
        } else if constexpr (std::is_same_v<T, Expr::Id>) {
          return idType(substitute(n.carrier, s), substitute(n.lhs, s), substitute(n.rhs, s));
        } else if constexpr (std::is_same_v<T, Expr::J>) {
          return jElim(substitute(n.motive, s), substitute(n.base, s), substitute(n.path, s));
        } else if constexpr (std::is_same_v<T, Expr::Ann>) {
          return ann(substitute(n.term, s), substitute(n.type, s));
        } else {
          return e;
        }
      },
      e->node);
}

// Substitutes through a telescope, each binder shadowing for later entries.
Telescope substitute(const Telescope& t, Subst& s) {
  Telescope out;
  for (const auto& b : t) {
    out.push_back({b.name, substitute(b.type, s)});
    s = without(s, b.name);
  }
  return out;
}

Pattern renamePattern(const Pattern& p, const std::map<std::string, std::string>& ctors,
                      const Subst& s) {
  if (auto* c = std::get_if<Pattern::Ctor>(&p.node)) {
    auto it = ctors.find(c->name);
    std::vector<Pattern> args;
    for (const auto& a : c->args)
      args.push_back(renamePattern(a, ctors, s));
    return Pattern::ctor(it == ctors.end() ? c->name : it->second, std::move(args));
  }
  if (auto* in = std::get_if<Pattern::Inaccessible>(&p.node))
    return Pattern::inaccessible(substitute(in->term, s));
  return p;
}

Subst ctorSubst(const std::map<std::string, std::string>& ctors) {
  Subst s;
  for (const auto& [from, to] : ctors)
    s[from] = var(to);
  return s;
}

// Rewrites constructor references of merged members in a declaration that
// follows the merged block.
Declaration rewrite(const Declaration& d, const std::map<std::string, std::string>& ctors) {
  const Subst base = ctorSubst(ctors);
  if (auto* a = std::get_if<AxiomDecl>(&d)) {
    AxiomDecl out = *a;
    out.type = substitute(a->type, base);
    return out;
  }
  if (auto* data = std::get_if<DataDecl>(&d)) {
    DataDecl out = *data;
    Subst s = base;
    out.params = substitute(data->params, s);
    Subst afterParams = s;
    out.indices = substitute(data->indices, s);
    for (auto& c : out.ctors) {
      Subst cs = afterParams;
      std::vector<std::string> vars;
      for (auto& p : c.availability) {
        p = renamePattern(p, ctors, cs);
        patternVars(p, vars);
      }
      for (const auto& v : vars)
        cs = without(cs, v);
      c.args = substitute(c.args, cs);
      if (c.pathType)
        c.pathType = substitute(c.pathType, afterParams);
    }
    return out;
  }
  const auto& f = std::get<FunDecl>(d);
  FunDecl out = f;
  Subst s = base;
  out.params = substitute(f.params, s);
  out.result = substitute(f.result, s);
  if (f.body)
    out.body = substitute(*f.body, s);
  for (auto& cl : out.clauses) {
    Subst cs = base;
    std::vector<std::string> vars;
    for (auto& p : cl.patterns) {
      p = renamePattern(p, ctors, cs);
      patternVars(p, vars);
    }
    for (const auto& v : vars)
      cs = without(cs, v);
    cl.rhs = substitute(cl.rhs, cs);
  }
  return out;
}

// Free identifiers, over-approximated by ignoring binders; used only to decide
// whether a declaration may refer to a block member.
void mentions(const ExprPtr& e, std::set<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Var>) {
          out.insert(n.name);
        } else if constexpr (std::is_same_v<T, Expr::Pi>) {
          mentions(n.domain, out);
          mentions(n.codomain, out);
        } else if constexpr (std::is_same_v<T, Expr::Lam>) {
          mentions(n.body, out);
        } else if constexpr (std::is_same_v<T, Expr::App>) {
          mentions(n.fn, out);
          mentions(n.arg, out);
        } else if constexpr (std::is_same_v<T, Expr::Id>) {
          mentions(n.carrier, out);
          mentions(n.lhs, out);
          mentions(n.rhs, out);
        } else if constexpr (std::is_same_v<T, Expr::J>) {
          mentions(n.motive, out);
          mentions(n.base, out);
          mentions(n.path, out);
        } else if constexpr (std::is_same_v<T, Expr::Ann>) {
          mentions(n.term, out);
          mentions(n.type, out);
        }
      },
      e->node);
}

void mentions(const Pattern& p, std::set<std::string>& out) {
  if (auto* c = std::get_if<Pattern::Ctor>(&p.node)) {
    out.insert(c->name);
    for (const auto& a : c->args)
      mentions(a, out);
  } else if (auto* in = std::get_if<Pattern::Inaccessible>(&p.node)) {
    mentions(in->term, out);
  }
}

std::set<std::string> mentions(const Declaration& d) {
  std::set<std::string> out;
  auto tele = [&](const Telescope& t) {
    for (const auto& b : t)
      mentions(b.type, out);
  };
  if (auto* a = std::get_if<AxiomDecl>(&d)) {
    mentions(a->type, out);
  } else if (auto* data = std::get_if<DataDecl>(&d)) {
    tele(data->params);
    tele(data->indices);
    for (const auto& c : data->ctors) {
      for (const auto& p : c.availability)
        mentions(p, out);
      tele(c.args);
      if (c.pathType)
        mentions(c.pathType, out);
    }
  } else {
    const auto& f = std::get<FunDecl>(d);
    tele(f.params);
    mentions(f.result, out);
    if (f.body)
      mentions(*f.body, out);
    for (const auto& cl : f.clauses) {
      for (const auto& p : cl.patterns)
        mentions(p, out);
      mentions(cl.rhs, out);
    }
  }
  return out;
}

std::tuple<DataDecl, DataDecl, std::vector<FunDecl>, Plan>
build(const SourceModule& m, const Options& opts, bool withPaths) {
  if (opts.types.empty())
    fail(codes::MergeBlock, "the block is empty; list at least one datatype");
  std::vector<const DataDecl*> members;
  std::set<std::string> memberNames;
  for (const auto& name : opts.types) {
    const DataDecl* d = m.findData(name);
    if (!d)
      fail(codes::MergeBlock, "no datatype named '" + name + "'");
    if (!memberNames.insert(name).second)
      fail(codes::MergeBlock, "'" + name + "' is listed twice");
    members.push_back(d);
  }
  for (const DataDecl* d : members) {
    for (const auto& i : d->indices) {
      std::set<std::string> used;
      mentions(i.type, used);
      for (const auto& other : opts.types)
        if (used.count(other))
          fail(codes::MergeBlock, "'" + d->name + "' is indexed by block member '" + other +
                                      "'; inductive-inductive blocks are not supported");
    }
    if (!d->indices.empty())
      fail(codes::MergeBlock, "'" + d->name + "' is an indexed family; only plain datatypes merge");
    if (!d->params.empty())
      fail(codes::MergeBlock, "'" + d->name + "' has parameters; only plain datatypes merge");
    for (const auto& c : d->ctors)
      if (c.isPath)
        fail(codes::MergeBlock, "'" + d->name + "' has path constructor '" + c.name +
                                    "'; only point constructors merge");
  }

  // Names that survive the merge and so must not collide with generated ones.
  std::set<std::string> taken = preludeNames();
  std::set<std::string> otherCtors;
  for (const auto& d : m.decls) {
    if (memberNames.count(declName(d)))
      continue;
    taken.insert(declName(d));
    if (auto* data = std::get_if<DataDecl>(&d))
      for (const auto& c : data->ctors) {
        taken.insert(c.name);
        otherCtors.insert(c.name);
      }
  }
  auto claim = [&](const std::string& name) {
    if (taken.count(name) || memberNames.count(name))
      fail(codes::MergeName, "generated name '" + name + "' is already in use");
    taken.insert(name);
  };

  Plan plan;
  plan.enumName = opts.enumName;
  plan.familyName = opts.familyName;
  plan.block = opts.types;
  claim(plan.enumName);
  claim(plan.familyName);
  std::map<std::string, std::string> tagOf;
  for (const DataDecl* d : members) {
    std::string tag = d->name + "_tag";
    claim(tag);
    tagOf[d->name] = tag;
    plan.tagOf.emplace_back(d->name, tag);
  }

  std::map<std::string, std::string> ctorRefs; // spelling -> family spelling
  for (const DataDecl* d : members) {
    for (const auto& c : d->ctors) {
      if (otherCtors.count(c.name))
        fail(codes::MergeName, "constructor '" + c.name + "' of '" + d->name +
                                   "' shares its name with a constructor outside the block");
      std::string fc = c.name + "_T";
      claim(fc);
      ctorRefs[c.name] = fc;
      ctorRefs[d->name + "." + c.name] = plan.familyName + "." + fc;
      plan.ctorMap.emplace_back(d->name + "." + c.name, plan.familyName + "." + fc);
    }
  }

  DataDecl u;
  u.name = plan.enumName;
  for (const DataDecl* d : members)
    u.ctors.push_back({tagOf[d->name], {}, {}, false, nullptr, {}});
  if (withPaths) {
    for (const auto& p : opts.paths) {
      for (const auto& end : {p.lhs, p.rhs})
        if (!tagOf.count(end))
          fail(codes::MergePath, "path '" + p.name + "' joins '" + end +
                                     "', which is not a block member");
      claim(p.name);
      CtorDecl c;
      c.name = p.name;
      c.isPath = true;
      c.pathType = idType(var(plan.enumName), var(tagOf[p.lhs]), var(tagOf[p.rhs]));
      u.ctors.push_back(std::move(c));
      plan.paths.push_back(p);
    }
  }

  DataDecl t;
  t.name = plan.familyName;
  plan.indexName = freshName("u", taken);
  t.indices.push_back({plan.indexName, var(plan.enumName)});
  Subst inFamily = ctorSubst(ctorRefs);
  for (const DataDecl* d : members)
    inFamily[d->name] = app(var(plan.familyName), var(tagOf[d->name]));
  for (const DataDecl* d : members) {
    for (const auto& c : d->ctors) {
      CtorDecl fc;
      fc.name = ctorRefs[c.name];
      fc.availability.push_back(Pattern::ctor(tagOf[d->name]));
      Subst s = inFamily;
      fc.args = substitute(c.args, s);
      t.ctors.push_back(std::move(fc));
    }
  }

  std::vector<FunDecl> aliases;
  for (const DataDecl* d : members) {
    FunDecl f;
    f.name = d->name;
    f.result = universe(0);
    f.body = app(var(plan.familyName), var(tagOf[d->name]));
    aliases.push_back(std::move(f));
  }
  return {u, t, aliases, plan};
}

} // namespace

PathSpec parsePathSpec(std::string_view text) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    size_t colon = text.find(':', start);
    parts.emplace_back(text.substr(start, colon - start));
    if (colon == std::string_view::npos)
      break;
    start = colon + 1;
  }
  if (parts.size() != 3 || std::any_of(parts.begin(), parts.end(),
                                       [](const std::string& s) { return s.empty(); }))
    fail(codes::MergePath, "path must be written name:L:R, got '" + std::string(text) + "'");
  return {parts[0], parts[1], parts[2]};
}

nlohmann::ordered_json Plan::toJson() const {
  nlohmann::ordered_json j;
  j["enumName"] = enumName;
  j["familyName"] = familyName;
  j["block"] = block;
  nlohmann::ordered_json tags = nlohmann::ordered_json::object();
  for (const auto& [d, tag] : tagOf)
    tags[d] = tag;
  j["tagOf"] = tags;
  nlohmann::ordered_json ctors = nlohmann::ordered_json::object();
  for (const auto& [from, to] : ctorMap)
    ctors[from] = to;
  j["ctorMap"] = ctors;
  auto paths = nlohmann::ordered_json::array();
  for (const auto& p : this->paths)
    paths.push_back({{"name", p.name}, {"lhs", p.lhs}, {"rhs", p.rhs}});
  j["paths"] = paths;
  return j;
}

std::tuple<DataDecl, DataDecl, std::vector<FunDecl>, Plan> mergeBlock(const SourceModule& m,
                                                                      const Options& opts) {
  return build(m, opts, false);
}

std::tuple<DataDecl, DataDecl, std::vector<FunDecl>, Plan> mergeWithPaths(const SourceModule& m,
                                                                          const Options& opts) {
  return build(m, opts, true);
}

Result merge(const SourceModule& m, const Options& opts, kernel::CheckOptions check) {
  kernel::checkModule(m, check);
  auto [u, t, aliases, plan] = mergeWithPaths(m, opts);

  std::set<std::string> members(opts.types.begin(), opts.types.end());
  std::set<std::string> memberRefs = members;
  std::map<std::string, std::string> ctorRefs;
  for (const auto& [from, to] : plan.ctorMap) {
    auto dot = from.find('.');
    auto tdot = to.find('.');
    ctorRefs[from] = to;
    ctorRefs[from.substr(dot + 1)] = to.substr(tdot + 1);
    memberRefs.insert(from);
    memberRefs.insert(from.substr(dot + 1));
  }

  size_t first = m.decls.size(), last = 0;
  for (size_t i = 0; i < m.decls.size(); ++i) {
    if (members.count(declName(m.decls[i]))) {
      first = std::min(first, i);
      last = i;
    }
  }

  Result r;
  r.plan = plan;
  for (size_t i = 0; i < m.decls.size(); ++i) {
    const Declaration& d = m.decls[i];
    if (members.count(declName(d))) {
      if (i == last) {
        r.module.decls.push_back(u);
        r.module.decls.push_back(t);
        for (const auto& a : aliases)
          r.module.decls.push_back(a);
      }
      continue;
    }
    if (i < first) {
      r.module.decls.push_back(d);
    } else if (i < last) {
      for (const auto& name : mentions(d))
        if (memberRefs.count(name))
          fail(codes::MergeBlock, "'" + declName(d) + "' sits between block members and uses '" +
                                      name + "'; move it after the last member");
      r.module.decls.push_back(d);
    } else {
      r.module.decls.push_back(rewrite(d, ctorRefs));
    }
  }
  kernel::checkModule(parse(printModule(r.module)), check);
  return r;
}

} // namespace fordc::merge
