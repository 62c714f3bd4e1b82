#include "fordc/syntax.hpp"

namespace fordc::syntax {

namespace {

struct Binders {
  std::vector<std::string> left, right;

  void push(const std::string& l, const std::string& r) {
    left.push_back(l);
    right.push_back(r);
  }
  void pop(size_t n = 1) {
    left.resize(left.size() - n);
    right.resize(right.size() - n);
  }

  static long find(const std::vector<std::string>& names, const std::string& n) {
    for (long i = static_cast<long>(names.size()) - 1; i >= 0; --i)
      if (names[i] == n)
        return i;
    return -1;
  }

  bool sameVar(const std::string& l, const std::string& r) const {
    long i = find(left, l), j = find(right, r);
    if (i < 0 && j < 0)
      return l == r;
    return i == j;
  }
};

bool eq(const ExprPtr& a, const ExprPtr& b, Binders& env);

template <class T> const T* as(const ExprPtr& e) { return std::get_if<T>(&e->node); }

bool eq(const ExprPtr& a, const ExprPtr& b, Binders& env) {
  if (a->node.index() != b->node.index())
    return false;
  if (auto* x = as<Expr::Var>(a))
    return env.sameVar(x->name, as<Expr::Var>(b)->name);
  if (auto* x = as<Expr::Universe>(a))
    return x->level == as<Expr::Universe>(b)->level;
  if (as<Expr::Refl>(a))
    return true;
  if (auto* x = as<Expr::Pi>(a)) {
    auto* y = as<Expr::Pi>(b);
    if (!eq(x->domain, y->domain, env))
      return false;
    env.push(x->name, y->name);
    bool r = eq(x->codomain, y->codomain, env);
    env.pop();
    return r;
  }
  if (auto* x = as<Expr::Lam>(a)) {
    auto* y = as<Expr::Lam>(b);
    env.push(x->name, y->name);
    bool r = eq(x->body, y->body, env);
    env.pop();
    return r;
  }
  if (auto* x = as<Expr::App>(a)) {
    auto* y = as<Expr::App>(b);
    return eq(x->fn, y->fn, env) && eq(x->arg, y->arg, env);
  }
  if (auto* x = as<Expr::Id>(a)) {
    auto* y = as<Expr::Id>(b);
    return eq(x->carrier, y->carrier, env) && eq(x->lhs, y->lhs, env) && eq(x->rhs, y->rhs, env);
  }
  if (auto* x = as<Expr::J>(a)) {
    auto* y = as<Expr::J>(b);
    return eq(x->motive, y->motive, env) && eq(x->base, y->base, env) &&
           eq(x->path, y->path, env);
  }
  auto* x = as<Expr::Ann>(a);
  auto* y = as<Expr::Ann>(b);
  return eq(x->term, y->term, env) && eq(x->type, y->type, env);
}

// Compares patterns, pushing the variables they bind; returns the count pushed.
bool eqPattern(const Pattern& a, const Pattern& b, Binders& env, size_t& bound) {
  if (a.node.index() != b.node.index())
    return false;
  if (auto* x = std::get_if<Pattern::Var>(&a.node)) {
    env.push(x->name, std::get<Pattern::Var>(b.node).name);
    ++bound;
    return true;
  }
  if (auto* x = std::get_if<Pattern::Ctor>(&a.node)) {
    auto& y = std::get<Pattern::Ctor>(b.node);
    if (x->name != y.name || x->args.size() != y.args.size())
      return false;
    for (size_t i = 0; i < x->args.size(); ++i)
      if (!eqPattern(x->args[i], y.args[i], env, bound))
        return false;
    return true;
  }
  return eq(std::get<Pattern::Inaccessible>(a.node).term,
            std::get<Pattern::Inaccessible>(b.node).term, env);
}

bool eqRow(const std::vector<Pattern>& a, const std::vector<Pattern>& b, Binders& env,
           size_t& bound) {
  if (a.size() != b.size())
    return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!eqPattern(a[i], b[i], env, bound))
      return false;
  return true;
}

bool eqTelescope(const Telescope& a, const Telescope& b, Binders& env) {
  if (a.size() != b.size())
    return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!eq(a[i].type, b[i].type, env))
      return false;
    env.push(a[i].name, b[i].name);
  }
  return true;
}

bool eqDecl(const Declaration& a, const Declaration& b) {
  if (a.index() != b.index() || declName(a) != declName(b))
    return false;
  Binders env;
  if (auto* x = std::get_if<DataDecl>(&a)) {
    auto& y = std::get<DataDecl>(b);
    if (!eqTelescope(x->params, y.params, env) || !eqTelescope(x->indices, y.indices, env))
      return false;
    if (x->ctors.size() != y.ctors.size())
      return false;
    // Availability rows bind afresh, in the scope of the parameters only.
    size_t outer = x->params.size();
    env.pop(x->indices.size());
    for (size_t i = 0; i < x->ctors.size(); ++i) {
      const auto &c = x->ctors[i], &d = y.ctors[i];
      if (c.name != d.name || c.isPath != d.isPath)
        return false;
      size_t bound = 0;
      if (!eqRow(c.availability, d.availability, env, bound))
        return false;
      if (c.isPath) {
        if (!eq(c.pathType, d.pathType, env))
          return false;
      } else if (!eqTelescope(c.args, d.args, env)) {
        return false;
      }
      env.pop(env.left.size() - outer);
    }
    return true;
  }
  if (auto* x = std::get_if<FunDecl>(&a)) {
    auto& y = std::get<FunDecl>(b);
    if (x->partial != y.partial || !eqTelescope(x->params, y.params, env) ||
        !eq(x->result, y.result, env))
      return false;
    if (x->body.has_value() != y.body.has_value())
      return false;
    if (x->body)
      return eq(*x->body, *y.body, env);
    env.pop(x->params.size());
    if (x->clauses.size() != y.clauses.size())
      return false;
    for (size_t i = 0; i < x->clauses.size(); ++i) {
      size_t bound = 0;
      if (!eqRow(x->clauses[i].patterns, y.clauses[i].patterns, env, bound))
        return false;
      if (!eq(x->clauses[i].rhs, y.clauses[i].rhs, env))
        return false;
      env.pop(bound);
    }
    return true;
  }
  return eq(std::get<AxiomDecl>(a).type, std::get<AxiomDecl>(b).type, env);
}

} // namespace

bool alphaEquivalent(const ExprPtr& a, const ExprPtr& b) {
  Binders env;
  return eq(a, b, env);
}

bool alphaEquivalent(const SourceModule& a, const SourceModule& b) {
  if (a.decls.size() != b.decls.size())
    return false;
  for (size_t i = 0; i < a.decls.size(); ++i)
    if (!eqDecl(a.decls[i], b.decls[i]))
      return false;
  return true;
}

} // namespace fordc::syntax
