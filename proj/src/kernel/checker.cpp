#include "fordc/kernel/checker.hpp"

#include "fordc/kernel/show.hpp"

#include <algorithm>
#include <set>

namespace fordc::kernel {

using namespace fordc::syntax;
using Head = Value::Rigid::Head;

namespace {

const char* kPrelude = R"(
def idp (A : Type) (x : A) : Id A x x
  = refl

def subst (A : Type) (P : A -> Type) (x : A) (y : A) (p : Id A x y) (u : P x) : P y
  = J (\y0 q. P y0) u p

def sym (A : Type) (x : A) (y : A) (p : Id A x y) : Id A y x
  = J (\y0 q. Id A y0 x) refl p

def trans (A : Type) (x : A) (y : A) (z : A) (p : Id A x y) (q : Id A y z) : Id A x z
  = J (\z0 r. Id A x z0) p q
)";

Env concat(const std::vector<Val>& a, const std::vector<Val>& b) {
  Env out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

const Value::Rigid* asData(const Val& v) {
  auto* r = as<Value::Rigid>(v);
  return r && r->head == Head::Data ? r : nullptr;
}

bool isWildcard(const CPattern* p) {
  return std::holds_alternative<CPattern::Var>(p->node) ||
         std::holds_alternative<CPattern::Inaccessible>(p->node);
}

const CPattern& wildcard() {
  static const CPattern w{CPattern::Var{"_"}};
  return w;
}

} // namespace

Kernel::Kernel(CheckOptions opts) : opts_(opts) {
  auto prelude = parse(kPrelude);
  for (const auto& d : prelude.decls)
    checkFun(std::get<FunDecl>(d), true);
}

Kernel checkModule(const SourceModule& m, CheckOptions opts) {
  Kernel k(opts);
  k.checkModule(m);
  return k;
}

void Kernel::error(const char* code, const std::string& msg,
                   std::vector<std::string> evidence) const {
  TypeError e(code, decl_, msg, span_);
  e.diagnostic().evidence = std::move(evidence);
  throw e;
}

void Kernel::unifyError(const UnifyResult& r, const std::string& what) const {
  if (r.kind == UnifyResult::Kind::Stuck)
    error(codes::UnifyStuck, what + ": index unification is stuck", {r.evidence});
  error(codes::UnifyMismatch, what + ": indices cannot be unified", {r.evidence});
}

void Kernel::checkModule(const SourceModule& m) {
  scopeCheck(m);
  for (const auto& d : m.decls)
    checkDecl(d);
}

void Kernel::checkDecl(const Declaration& d) {
  decl_ = declName(d);
  span_ = declSpan(d);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, DataDecl>)
          checkData(x);
        else if constexpr (std::is_same_v<T, FunDecl>)
          checkFun(x, false);
        else
          checkAxiom(x);
      },
      d);
  decl_.clear();
  span_ = {};
}

// ---- evaluation helpers ------------------------------------------------

Val Kernel::eval(const Context& ctx, const TermPtr& t) const {
  auto ev = evaluator(&ctx);
  return ev.eval(ctx.env(), t);
}

Val Kernel::evalClosed(const TermPtr& t) const {
  auto ev = evaluator();
  return ev.eval({}, t);
}

TermPtr Kernel::normalize(const Context& ctx, const TermPtr& t) const {
  auto ev = evaluator(&ctx);
  return ev.normalize(ctx.env(), ctx.size(), t);
}

bool Kernel::convertible(const Context& ctx, const Val& a, const Val& b) const {
  auto ev = evaluator(&ctx);
  return termEqual(ev.quote(ctx.size(), a), ev.quote(ctx.size(), b));
}

std::string Kernel::show(const Context& ctx, const Val& v) const {
  auto ev = evaluator(&ctx);
  return showTerm(ev.quote(ctx.size(), v), ctx.names(), sig_);
}

std::string Kernel::show(const Context& ctx, const TermPtr& t) const {
  return showTerm(t, ctx.names(), sig_);
}

bool Kernel::subtype(const Context& ctx, const Val& inferred, const Val& expected) const {
  auto ev = evaluator(&ctx);
  Val a = ev.force(inferred), b = ev.force(expected);
  auto* ua = as<Value::Universe>(a);
  auto* ub = as<Value::Universe>(b);
  if (ua && ub)
    return ua->level <= ub->level;
  return convertible(ctx, a, b);
}

std::vector<Val> Kernel::availabilityValues(const CtorInfo& c, const Env& env) const {
  auto ev = evaluator();
  size_t cursor = sig_.data(c.data)->params.size();
  std::function<Val(const CPattern&)> value = [&](const CPattern& p) -> Val {
    return std::visit(
        [&](const auto& n) -> Val {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, CPattern::Var>) {
            return env[cursor++];
          } else if constexpr (std::is_same_v<T, CPattern::Ctor>) {
            const CtorInfo* sub = sig_.ctor(n.name);
            std::vector<Val> hidden, args;
            for (size_t i = 0; i < sub->hidden.size(); ++i)
              hidden.push_back(env[cursor++]);
            for (const auto& a : n.args)
              args.push_back(value(a));
            return vmk::ctor(n.name, std::move(hidden), std::move(args));
          } else if constexpr (std::is_same_v<T, CPattern::Refl>) {
            return vmk::refl();
          } else {
            Env prefix(env.begin(), env.begin() + n.depth);
            return ev.eval(prefix, n.term);
          }
        },
        p.node);
  };
  std::vector<Val> out;
  for (const auto& p : c.availability)
    out.push_back(value(p));
  return out;
}

// ---- expressions -------------------------------------------------------

std::pair<TermPtr, int> Kernel::requireType(Context& ctx, const ExprPtr& e) {
  auto [t, ty] = infer(ctx, e);
  auto ev = evaluator(&ctx);
  auto* u = as<Value::Universe>(ev.force(ty));
  if (!u)
    error(codes::Type, "expected a type, got '" + printExpr(e) + "' of type " + show(ctx, ty));
  return {t, u->level};
}

std::optional<std::string> Kernel::ctorHead(const Context& ctx, const ExprPtr& e) const {
  auto [head, args] = syntax::spine(e);
  auto* v = std::get_if<Expr::Var>(&head->node);
  if (!v || ctx.lookup(v->name) || sig_.ctorsNamed(v->name).empty())
    return std::nullopt;
  return v->name;
}

const CtorInfo& Kernel::resolveCtor(const std::string& name, const std::string& data) const {
  for (const CtorInfo* c : sig_.ctorsNamed(name))
    if (c->data == data)
      return *c;
  error(codes::Type, "constructor '" + name + "' does not construct '" + data + "'");
}

TermPtr Kernel::elabCtor(Context& ctx, const CtorInfo& c, const std::vector<ExprPtr>& args,
                         const std::vector<Val>& params, const std::vector<Val>& indices) {
  if (args.size() != c.args.size())
    error(codes::Arity, "constructor '" + c.name + "' expects " + std::to_string(c.args.size()) +
                            " arguments, got " + std::to_string(args.size()));
  const int base = ctx.size();
  auto ev = evaluator(&ctx);
  std::vector<Val> hiddenVars;
  for (const auto& h : c.hidden) {
    Val type = ev.eval(concat(params, hiddenVars), h.type);
    hiddenVars.push_back(ctx.push(h.name, type, true));
  }
  auto patVals = availabilityValues(c, concat(params, hiddenVars));
  Unifier u(ev, ctx, base, sig_);
  auto r = u.unifyAll(indices, patVals);
  if (!r.ok()) {
    ctx.truncate(base);
    unifyError(r, "constructor '" + sig_.ctorSpelling(c.name) + "' is not available here");
  }
  std::vector<Val> hiddenVals;
  std::vector<TermPtr> hiddenTerms;
  for (size_t i = 0; i < hiddenVars.size(); ++i) {
    TermPtr t = ev.quote(ctx.size(), hiddenVars[i]);
    for (int idx = 0; idx < ctx.size() - base; ++idx) {
      if (mentionsIndex(t, idx)) {
        ctx.truncate(base);
        error(codes::UnifyStuck, "cannot determine availability variable '" + c.hidden[i].name +
                                     "' of constructor '" + c.name + "'");
      }
    }
    hiddenVals.push_back(ev.eval(ctx.env(), t));
  }
  ctx.truncate(base);
  for (const auto& v : hiddenVals)
    hiddenTerms.push_back(ev.quote(base, v));

  Env env = concat(params, hiddenVals);
  std::vector<TermPtr> argTerms;
  for (size_t i = 0; i < args.size(); ++i) {
    Val type = ev.eval(env, c.args[i].type);
    TermPtr t = check(ctx, args[i], type);
    argTerms.push_back(t);
    env.push_back(eval(ctx, t));
  }
  return mk::ctor(c.name, std::move(hiddenTerms), std::move(argTerms));
}

TermPtr Kernel::checkCtorApp(Context& ctx, const std::string& name,
                             const std::vector<ExprPtr>& args, const Val& expected,
                             const ExprPtr& whole) {
  auto ev = evaluator(&ctx);
  Val exp = ev.force(expected);
  if (as<Value::Pi>(exp)) {
    size_t maxArity = 0;
    for (const CtorInfo* c : sig_.ctorsNamed(name))
      maxArity = std::max(maxArity, c->args.size());
    if (args.size() < maxArity) {
      // Partially applied constructor at a function type: eta-expand.
      std::string fresh = "$eta" + std::to_string(ctx.size());
      return check(ctx, lam(fresh, app(whole, var(fresh))), exp);
    }
  }
  auto* d = asData(exp);
  if (!d)
    error(codes::Type, "constructor '" + name + "' used at non-data type " + show(ctx, exp));
  const DataInfo* info = sig_.data(d->name);
  size_t np = info->params.size();
  if (d->spine.size() != np + info->indices.size())
    error(codes::Type, "constructor '" + name + "' used at partially applied type " +
                           show(ctx, exp));
  const CtorInfo& c = resolveCtor(name, d->name);
  std::vector<Val> params(d->spine.begin(), d->spine.begin() + np);
  std::vector<Val> indices(d->spine.begin() + np, d->spine.end());
  return elabCtor(ctx, c, args, params, indices);
}

std::pair<TermPtr, Val> Kernel::inferCtorApp(Context& ctx, const std::string& name,
                                             const std::vector<ExprPtr>& args) {
  auto cands = sig_.ctorsNamed(name);
  if (cands.size() > 1)
    error(codes::Ambiguous, "constructor '" + name +
                                "' is ambiguous here; qualify it or add a type annotation");
  const CtorInfo& c = *cands.front();
  const DataInfo* d = sig_.data(c.data);
  if (!d->params.empty() || !c.hidden.empty() || args.size() != c.args.size())
    error(codes::Infer, "cannot infer the type of constructor '" + name +
                            "' here; add a type annotation");
  auto indices = availabilityValues(c, {});
  Val type = vmk::rigid(Head::Data, d->name, indices);
  return {elabCtor(ctx, c, args, {}, indices), type};
}

std::pair<TermPtr, Val> Kernel::infer(Context& ctx, const ExprPtr& e) {
  if (auto name = ctorHead(ctx, e)) {
    auto [head, args] = syntax::spine(e);
    return inferCtorApp(ctx, *name, args);
  }
  return std::visit(
      [&](const auto& n) -> std::pair<TermPtr, Val> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Var>) {
          if (auto level = ctx.lookup(n.name))
            return {mk::var(ctx.size() - 1 - *level), ctx.at(*level).type};
          if (const FunInfo* f = sig_.fun(n.name))
            return {mk::fun(n.name), evalClosed(f->type)};
          if (const DataInfo* d = sig_.data(n.name))
            return {mk::data(n.name), evalClosed(d->type)};
          auto axioms = sig_.axiomsNamed(n.name);
          if (axioms.size() > 1)
            error(codes::Ambiguous, "'" + n.name + "' is ambiguous; qualify it");
          if (axioms.size() == 1)
            return {mk::axiom(axioms.front()->name), evalClosed(axioms.front()->type)};
          error(codes::Scope, "unknown identifier '" + n.name + "'");
        } else if constexpr (std::is_same_v<T, Expr::Universe>) {
          if (n.level >= 1)
            error(codes::Universe, "Type1 has no type");
          return {mk::universe(0), vmk::universe(1)};
        } else if constexpr (std::is_same_v<T, Expr::Pi>) {
          auto [dom, i] = requireType(ctx, n.domain);
          ctx.push(n.name, eval(ctx, dom));
          auto [cod, j] = requireType(ctx, n.codomain);
          ctx.truncate(ctx.size() - 1);
          return {mk::pi(n.name, dom, cod), vmk::universe(std::max(i, j))};
        } else if constexpr (std::is_same_v<T, Expr::App>) {
          auto [head, args] = syntax::spine(e);
          auto [t, ty] = infer(ctx, head);
          auto ev = evaluator(&ctx);
          for (const auto& a : args) {
            auto* p = as<Value::Pi>(ev.force(ty));
            if (!p)
              error(codes::Type, "'" + printExpr(head) + "' is applied to too many arguments",
                    {"type: " + show(ctx, ty)});
            TermPtr at = check(ctx, a, p->domain);
            t = mk::app(t, at);
            ty = ev.instantiate(p->codomain, eval(ctx, at));
          }
          return {t, ty};
        } else if constexpr (std::is_same_v<T, Expr::Id>) {
          auto [carrier, level] = requireType(ctx, n.carrier);
          Val cv = eval(ctx, carrier);
          TermPtr lhs = check(ctx, n.lhs, cv);
          TermPtr rhs = check(ctx, n.rhs, cv);
          return {mk::id(carrier, lhs, rhs), vmk::universe(level)};
        } else if constexpr (std::is_same_v<T, Expr::J>) {
          auto [path, pathTy] = infer(ctx, n.path);
          auto ev = evaluator(&ctx);
          auto* idTy = as<Value::Id>(ev.force(pathTy));
          if (!idTy)
            error(codes::Type, "J eliminates an identity proof, got one of type " +
                                   show(ctx, pathTy));
          int s = ctx.size();
          // (y : A) -> Id A x y -> Type1
          TermPtr motiveTy =
              mk::pi("y", ev.quote(s, idTy->carrier),
                     mk::pi("p",
                            mk::id(ev.quote(s + 1, idTy->carrier), ev.quote(s + 1, idTy->lhs),
                                   mk::var(0)),
                            mk::universe(1)));
          TermPtr motive = check(ctx, n.motive, eval(ctx, motiveTy));
          Val mv = eval(ctx, motive);
          TermPtr base = check(ctx, n.base, ev.apply(ev.apply(mv, idTy->lhs), vmk::refl()));
          Val result = ev.apply(ev.apply(mv, idTy->rhs), eval(ctx, path));
          return {mk::j(motive, base, path), result};
        } else if constexpr (std::is_same_v<T, Expr::Ann>) {
          auto [type, level] = requireType(ctx, n.type);
          Val tv = eval(ctx, type);
          return {check(ctx, n.term, tv), tv};
        } else if constexpr (std::is_same_v<T, Expr::Lam>) {
          error(codes::Infer, "cannot infer the type of a lambda; add a type annotation");
        } else {
          error(codes::Infer, "cannot infer the type of refl; add a type annotation");
        }
      },
      e->node);
}

TermPtr Kernel::check(Context& ctx, const ExprPtr& e, const Val& type) {
  auto ev = evaluator(&ctx);
  if (auto* l = std::get_if<Expr::Lam>(&e->node)) {
    auto* p = as<Value::Pi>(ev.force(type));
    if (!p)
      error(codes::Type, "lambda checked against non-function type " + show(ctx, type));
    Val x = ctx.push(l->name, p->domain);
    TermPtr body = check(ctx, l->body, ev.instantiate(p->codomain, x));
    ctx.truncate(ctx.size() - 1);
    return mk::lam(l->name, body);
  }
  if (std::holds_alternative<Expr::Refl>(e->node)) {
    auto* id = as<Value::Id>(ev.force(type));
    if (!id)
      error(codes::Type, "refl checked against non-identity type " + show(ctx, type));
    if (!convertible(ctx, id->lhs, id->rhs))
      error(codes::Type, "refl: endpoints are not definitionally equal",
            {"lhs: " + show(ctx, id->lhs), "rhs: " + show(ctx, id->rhs)});
    return mk::refl();
  }
  if (auto name = ctorHead(ctx, e)) {
    auto [head, args] = syntax::spine(e);
    return checkCtorApp(ctx, *name, args, type, e);
  }
  auto [t, inferred] = infer(ctx, e);
  if (!subtype(ctx, inferred, type))
    error(codes::Type, "type mismatch for '" + printExpr(e) + "'",
          {"expected: " + show(ctx, type), "actual:   " + show(ctx, inferred)});
  return t;
}

TermPtr Kernel::elaborateClosed(std::string_view expr, std::string_view type) {
  Context ctx;
  auto [ty, level] = requireType(ctx, parseExpr(type));
  return check(ctx, parseExpr(expr), eval(ctx, ty));
}

// ---- patterns ----------------------------------------------------------

Val Kernel::checkPattern(Context& ctx, const Pattern& p, const Val& type, int flexFrom,
                         CPattern& out) {
  auto ev = evaluator(&ctx);
  if (auto* v = std::get_if<Pattern::Var>(&p.node)) {
    out = CPattern{CPattern::Var{v->name}};
    return ctx.push(v->name, type);
  }
  if (auto* inacc = std::get_if<Pattern::Inaccessible>(&p.node)) {
    TermPtr t = check(ctx, inacc->term, type);
    out = CPattern{CPattern::Inaccessible{t, ctx.size()}};
    return eval(ctx, t);
  }
  const auto& c = std::get<Pattern::Ctor>(p.node);
  Val ty = ev.force(type);
  if (c.name == kReflName) {
    auto* id = as<Value::Id>(ty);
    if (!id)
      error(codes::Type, "pattern refl at non-identity type " + show(ctx, ty));
    if (!c.args.empty())
      error(codes::Arity, "refl takes no arguments");
    Unifier u(ev, ctx, flexFrom, sig_);
    auto r = u.unify(id->lhs, id->rhs);
    if (!r.ok())
      unifyError(r, "pattern refl");
    out = CPattern{CPattern::Refl{}};
    return vmk::refl();
  }
  auto* d = asData(ty);
  if (!d)
    error(codes::Type, "constructor pattern '" + c.name + "' at non-data type " + show(ctx, ty));
  const DataInfo* info = sig_.data(d->name);
  size_t np = info->params.size();
  const CtorInfo& ci = resolveCtor(c.name, d->name);
  if (c.args.size() != ci.args.size())
    error(codes::Arity, "constructor pattern '" + c.name + "' expects " +
                            std::to_string(ci.args.size()) + " arguments");
  std::vector<Val> params(d->spine.begin(), d->spine.begin() + np);
  std::vector<Val> indices(d->spine.begin() + np, d->spine.end());
  std::vector<Val> hiddenVars;
  for (const auto& h : ci.hidden)
    hiddenVars.push_back(ctx.push(h.name, ev.eval(concat(params, hiddenVars), h.type), true));
  auto patVals = availabilityValues(ci, concat(params, hiddenVars));
  Unifier u(ev, ctx, flexFrom, sig_);
  auto r = u.unifyAll(indices, patVals);
  if (!r.ok())
    unifyError(r, "pattern '" + printPattern(p) + "' at type " + show(ctx, ty));
  Env env = concat(params, hiddenVars);
  std::vector<Val> argVals;
  CPattern::Ctor cp{ci.name, {}};
  for (size_t i = 0; i < c.args.size(); ++i) {
    Val argTy = ev.eval(env, ci.args[i].type);
    CPattern sub;
    Val v = checkPattern(ctx, c.args[i], argTy, flexFrom, sub);
    cp.args.push_back(std::move(sub));
    argVals.push_back(v);
    env.push_back(v);
  }
  out = CPattern{std::move(cp)};
  return vmk::ctor(ci.name, std::move(hiddenVars), std::move(argVals));
}

UnifyResult Kernel::unifyIndices(Context& ctx, const std::vector<Val>& expected,
                                 const CtorInfo& c, const std::vector<Val>& params) {
  const int base = ctx.size();
  auto ev = evaluator(&ctx);
  std::vector<Val> hiddenVars;
  for (const auto& h : c.hidden)
    hiddenVars.push_back(ctx.push(h.name, ev.eval(concat(params, hiddenVars), h.type), true));
  auto patVals = availabilityValues(c, concat(params, hiddenVars));
  Unifier u(ev, ctx, base, sig_);
  auto r = u.unifyAll(expected, patVals);
  ctx.truncate(base);
  return r;
}

// ---- declarations ------------------------------------------------------

void Kernel::checkPositivity(const std::string& data, const TermPtr& t, const std::string& ctor) {
  std::function<bool(const TermPtr&)> mentions = [&](const TermPtr& u) -> bool {
    return std::visit(
        [&](const auto& n) -> bool {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Term::Data>)
            return n.name == data;
          else if constexpr (std::is_same_v<T, Term::Pi>)
            return mentions(n.domain) || mentions(n.codomain);
          else if constexpr (std::is_same_v<T, Term::Lam>)
            return mentions(n.body);
          else if constexpr (std::is_same_v<T, Term::App>)
            return mentions(n.fn) || mentions(n.arg);
          else if constexpr (std::is_same_v<T, Term::Ctor>) {
            for (const auto& a : n.hidden)
              if (mentions(a))
                return true;
            for (const auto& a : n.args)
              if (mentions(a))
                return true;
            return false;
          } else if constexpr (std::is_same_v<T, Term::Id>)
            return mentions(n.carrier) || mentions(n.lhs) || mentions(n.rhs);
          else if constexpr (std::is_same_v<T, Term::J>)
            return mentions(n.motive) || mentions(n.base) || mentions(n.path);
          else
            return false;
        },
        u->node);
  };
  TermPtr cur = t;
  while (auto* p = as<Term::Pi>(cur)) {
    if (mentions(p->domain))
      error(codes::Positivity, "'" + data + "' occurs in a non-positive position in constructor '" +
                                   ctor + "'");
    cur = p->codomain;
  }
}

void Kernel::checkData(const DataDecl& d) {
  Context ctx;
  DataInfo info;
  info.name = d.name;
  std::vector<TermPtr> binderTypes;
  for (const auto& b : d.params) {
    auto [t, level] = requireType(ctx, b.type);
    info.params.push_back({b.name, t});
    binderTypes.push_back(t);
    ctx.push(b.name, eval(ctx, t));
  }
  for (const auto& b : d.indices) {
    auto [t, level] = requireType(ctx, b.type);
    info.indices.push_back({b.name, t});
    binderTypes.push_back(t);
    ctx.push(b.name, eval(ctx, t));
  }
  TermPtr type = mk::universe(0);
  for (size_t i = binderTypes.size(); i-- > 0;) {
    const auto& name = i < d.params.size() ? d.params[i].name : d.indices[i - d.params.size()].name;
    type = mk::pi(name, binderTypes[i], type);
  }
  info.type = type;
  const int np = static_cast<int>(d.params.size());
  ctx.truncate(np);
  sig_.addData(std::move(info));
  const DataInfo& data = *sig_.data(d.name);

  for (const auto& c : d.ctors) {
    span_ = c.span.known() ? c.span : declSpan(Declaration{d});
    if (c.isPath) {
      if (!d.indices.empty())
        error(codes::PathCtor, "path constructor '" + c.name +
                                   "' on an indexed family is not supported");
      if (!c.availability.empty())
        error(codes::PathCtor, "path constructor '" + c.name + "' cannot have an availability row");
      auto [t, level] = requireType(ctx, c.pathType);
      auto ev = evaluator(&ctx);
      auto* id = as<Value::Id>(ev.force(eval(ctx, t)));
      bool ok = false;
      if (id) {
        Val carrier = ev.force(id->carrier);
        auto* r = asData(carrier);
        ok = (r && r->name == d.name) || as<Value::Universe>(carrier);
      }
      if (!ok)
        error(codes::PathCtor, "path constructor '" + c.name + "' must have type Id " + d.name +
                                   " _ _ (or an identity between types)");
      TermPtr axType = t;
      for (int i = np; i-- > 0;)
        axType = mk::pi(data.params[i].name, data.params[i].type, axType);
      sig_.addAxiom({d.name + "." + c.name, c.name, axType, d.name});
      continue;
    }
    if (c.availability.size() != d.indices.size())
      error(codes::Arity, "availability row of '" + c.name + "' has " +
                              std::to_string(c.availability.size()) + " patterns but '" + d.name +
                              "' has " + std::to_string(d.indices.size()) + " indices");
    CtorInfo ci;
    ci.name = d.name + "." + c.name;
    ci.shortName = c.name;
    ci.data = d.name;
    auto ev = evaluator(&ctx);
    std::vector<Val> patVals;
    for (size_t i = 0; i < c.availability.size(); ++i) {
      Env env = ctx.env();
      env.resize(np);
      env.insert(env.end(), patVals.begin(), patVals.end());
      Val idxTy = ev.eval(env, data.indices[i].type);
      CPattern cp;
      patVals.push_back(checkPattern(ctx, c.availability[i], idxTy, np, cp));
      ci.availability.push_back(std::move(cp));
    }
    for (int l = np; l < ctx.size(); ++l)
      ci.hidden.push_back({ctx.at(l).name, ev.quote(l, ctx.at(l).type)});
    for (const auto& b : c.args) {
      auto [t, level] = requireType(ctx, b.type);
      if (level > 0)
        error(codes::Universe, "argument '" + b.name + "' of constructor '" + c.name +
                                   "' is too large for a datatype in Type");
      checkPositivity(d.name, t, c.name);
      ci.args.push_back({b.name, t});
      ctx.push(b.name, eval(ctx, t));
    }
    // Argument types must not depend on solved availability variables being
    // unfolded later: re-quote them with definitions inlined.
    for (size_t i = 0; i < ci.args.size(); ++i) {
      int level = np + static_cast<int>(ci.hidden.size()) + static_cast<int>(i);
      ci.args[i].type = ev.quote(level, ctx.at(level).type);
    }
    ctx.truncate(np);
    sig_.addCtor(std::move(ci));
  }
}

void Kernel::checkAxiom(const AxiomDecl& a) {
  Context ctx;
  auto [t, level] = requireType(ctx, a.type);
  sig_.addAxiom({a.name, a.name, t, ""});
}

CClause Kernel::checkClause(const FunInfo& f, const Clause& cl) {
  if (static_cast<int>(cl.patterns.size()) != f.arity)
    error(codes::Arity, "clause has " + std::to_string(cl.patterns.size()) +
                            " patterns but '" + f.name + "' takes " + std::to_string(f.arity) +
                            " arguments");
  Context ctx;
  auto ev = evaluator(&ctx);
  Val ty = evalClosed(f.type);
  CClause out;
  for (const auto& p : cl.patterns) {
    auto* pi = as<Value::Pi>(ev.force(ty));
    CPattern cp;
    Val v = checkPattern(ctx, p, pi->domain, 0, cp);
    out.patterns.push_back(std::move(cp));
    ty = ev.instantiate(pi->codomain, v);
  }
  out.rhs = check(ctx, cl.rhs, ty);
  out.vars = ctx.size();
  return out;
}

void Kernel::checkFun(const FunDecl& f, bool builtin) {
  Context ctx;
  std::vector<TermPtr> types;
  for (const auto& b : f.params) {
    auto [t, level] = requireType(ctx, b.type);
    types.push_back(t);
    ctx.push(b.name, eval(ctx, t));
  }
  auto [result, level] = requireType(ctx, f.result);
  TermPtr type = result;
  for (size_t i = types.size(); i-- > 0;)
    type = mk::pi(f.params[i].name, types[i], type);

  FunInfo info;
  info.name = f.name;
  info.type = type;
  info.arity = static_cast<int>(f.params.size());
  info.partial = f.partial;
  info.builtin = builtin;
  const FunInfo& registered = sig_.addFun(info);

  std::vector<CClause> clauses;
  if (f.body) {
    CClause cl;
    for (const auto& b : f.params)
      cl.patterns.push_back(CPattern{CPattern::Var{b.name}});
    cl.rhs = check(ctx, *f.body, eval(ctx, result));
    cl.vars = info.arity;
    clauses.push_back(std::move(cl));
  } else {
    for (const auto& cl : f.clauses) {
      if (cl.span.known())
        span_ = cl.span;
      clauses.push_back(checkClause(registered, cl));
    }
    span_ = f.span;
    checkCoverage(registered, clauses);
  }
  if (!f.partial)
    checkTermination(registered, clauses);
  sig_.setClauses(f.name, std::move(clauses));
}

// ---- coverage ----------------------------------------------------------

void Kernel::checkCoverage(const FunInfo& f, const std::vector<CClause>& clauses) {
  Context ctx;
  auto ev = evaluator(&ctx);
  Val ty = evalClosed(f.type);
  std::vector<Column> cols;
  for (int i = 0; i < f.arity; ++i) {
    auto* pi = as<Value::Pi>(ev.force(ty));
    Val x = ctx.push("x" + std::to_string(i + 1), pi->domain);
    cols.push_back({x, pi->domain});
    ty = ev.instantiate(pi->codomain, x);
  }
  std::vector<Row> rows;
  for (const auto& cl : clauses) {
    Row r;
    for (const auto& p : cl.patterns)
      r.push_back(&p);
    rows.push_back(std::move(r));
  }
  if (auto missing = uncovered(ctx, cols, rows, f.arity))
    error(codes::Coverage, "missing case: " + *missing);
}

std::optional<std::string> Kernel::uncovered(Context ctx, std::vector<Column> cols,
                                             std::vector<Row> rows, int arity) {
  auto ev = evaluator(&ctx);
  if (cols.empty()) {
    if (!rows.empty())
      return std::nullopt;
    std::string w;
    for (int i = 0; i < arity; ++i) {
      if (i)
        w += ", ";
      w += show(ctx, vmk::var(i));
    }
    return w;
  }
  if (rows.empty()) {
    // Nothing left to match; the case is still absurd if some column has no
    // available constructor.
    for (const auto& c : cols)
      if (uninhabited(ctx, c))
        return std::nullopt;
  }
  Column col = cols.front();
  std::vector<Column> rest(cols.begin() + 1, cols.end());
  bool splits = std::any_of(rows.begin(), rows.end(),
                            [](const Row& r) { return !isWildcard(r.front()); });
  if (!splits) {
    for (auto& r : rows)
      r.erase(r.begin());
    return uncovered(std::move(ctx), std::move(rest), std::move(rows), arity);
  }

  auto flexLevel = [&](const Val& v) -> std::optional<int> {
    auto* r = as<Value::Rigid>(ev.force(v));
    if (r && r->head == Head::Var && r->spine.empty())
      return r->level;
    return std::nullopt;
  };

  Val type = ev.force(col.type);
  if (auto* id = as<Value::Id>(type)) {
    Context branch = ctx;
    auto bev = evaluator(&branch);
    if (!as<Value::Refl>(bev.force(col.value))) {
      Unifier u(bev, branch, 0, sig_);
      auto r = u.unify(id->lhs, id->rhs);
      if (r.kind == UnifyResult::Kind::Mismatch)
        return std::nullopt;
      if (auto l = flexLevel(col.value); l && !branch.at(*l).def)
        branch.define(*l, vmk::refl());
    }
    std::vector<Row> sub;
    for (const auto& r : rows)
      sub.push_back(Row(r.begin() + 1, r.end()));
    return uncovered(std::move(branch), std::move(rest), std::move(sub), arity);
  }

  auto* d = asData(type);
  if (!d)
    return std::nullopt;
  const DataInfo* info = sig_.data(d->name);
  size_t np = info->params.size();
  std::vector<Val> params(d->spine.begin(), d->spine.begin() + np);
  std::vector<Val> indices(d->spine.begin() + np, d->spine.end());
  auto* known = as<Value::Ctor>(ev.force(col.value));

  for (const auto& cname : info->ctors) {
    const CtorInfo& c = *sig_.ctor(cname);
    if (known && known->name != cname)
      continue;
    Context branch = ctx;
    auto bev = evaluator(&branch);
    std::vector<Column> argCols;
    if (known) {
      Env env = concat(params, known->hidden);
      for (size_t i = 0; i < c.args.size(); ++i) {
        argCols.push_back({known->args[i], bev.eval(env, c.args[i].type)});
        env.push_back(known->args[i]);
      }
    } else {
      std::vector<Val> hiddenVars, argVars;
      for (const auto& h : c.hidden)
        hiddenVars.push_back(
            branch.push(h.name, bev.eval(concat(params, hiddenVars), h.type), true));
      Env env = concat(params, hiddenVars);
      for (const auto& a : c.args) {
        Val t = bev.eval(env, a.type);
        Val x = branch.push(a.name, t);
        argCols.push_back({x, t});
        env.push_back(x);
        argVars.push_back(x);
      }
      Unifier u(bev, branch, 0, sig_);
      auto r = u.unifyAll(indices, availabilityValues(c, concat(params, hiddenVars)));
      if (r.kind == UnifyResult::Kind::Mismatch)
        continue;
      if (auto l = flexLevel(col.value); l && !branch.at(*l).def)
        branch.define(*l, vmk::ctor(cname, hiddenVars, argVars));
    }
    std::vector<Row> sub;
    for (const auto& r : rows) {
      const CPattern* head = r.front();
      Row nr;
      if (auto* cp = std::get_if<CPattern::Ctor>(&head->node)) {
        if (cp->name != cname)
          continue;
        for (const auto& a : cp->args)
          nr.push_back(&a);
      } else if (isWildcard(head)) {
        for (size_t i = 0; i < c.args.size(); ++i)
          nr.push_back(&wildcard());
      } else {
        continue;
      }
      nr.insert(nr.end(), r.begin() + 1, r.end());
      sub.push_back(std::move(nr));
    }
    auto cols2 = argCols;
    cols2.insert(cols2.end(), rest.begin(), rest.end());
    if (auto missing = uncovered(std::move(branch), std::move(cols2), std::move(sub), arity))
      return missing;
  }
  return std::nullopt;
}

bool Kernel::uninhabited(Context ctx, const Column& col) {
  auto ev = evaluator(&ctx);
  if (as<Value::Ctor>(ev.force(col.value)) || as<Value::Refl>(ev.force(col.value)))
    return false;
  Val type = ev.force(col.type);
  if (auto* id = as<Value::Id>(type)) {
    Unifier u(ev, ctx, 0, sig_);
    return u.unify(id->lhs, id->rhs).kind == UnifyResult::Kind::Mismatch;
  }
  auto* d = asData(type);
  if (!d)
    return false;
  const DataInfo* info = sig_.data(d->name);
  if (info->indices.empty() || !info->paths.empty())
    return info->ctors.empty() && info->paths.empty();
  size_t np = info->params.size();
  std::vector<Val> params(d->spine.begin(), d->spine.begin() + np);
  std::vector<Val> indices(d->spine.begin() + np, d->spine.end());
  for (const auto& cname : info->ctors) {
    Context branch = ctx;
    if (unifyIndices(branch, indices, *sig_.ctor(cname), params).kind !=
        UnifyResult::Kind::Mismatch)
      return false;
  }
  return true;
}

// ---- termination -------------------------------------------------------

void Kernel::checkTermination(const FunInfo& f, const std::vector<CClause>& clauses) {
  std::set<int> candidates;
  for (int i = 0; i < f.arity; ++i)
    candidates.insert(i);
  bool recursive = false;

  for (const auto& cl : clauses) {
    // Levels bound strictly inside a constructor pattern, per position.
    std::vector<std::set<int>> strict(f.arity);
    int level = 0;
    std::function<void(const CPattern&, bool, int)> walk = [&](const CPattern& p, bool nested,
                                                               int pos) {
      if (std::holds_alternative<CPattern::Var>(p.node)) {
        if (nested)
          strict[pos].insert(level);
        ++level;
      } else if (auto* c = std::get_if<CPattern::Ctor>(&p.node)) {
        for (size_t i = 0; i < sig_.ctor(c->name)->hidden.size(); ++i)
          strict[pos].insert(level++);
        for (const auto& a : c->args)
          walk(a, true, pos);
      }
    };
    for (int i = 0; i < f.arity; ++i)
      walk(cl.patterns[i], false, i);

    std::function<void(const TermPtr&, int)> visit = [&](const TermPtr& t, int depth) {
      auto [head, args] = unspine(t);
      if (auto* fn = as<Term::Fun>(head); fn && fn->name == f.name) {
        recursive = true;
        for (int i = 0; i < f.arity; ++i) {
          bool ok = false;
          if (i < static_cast<int>(args.size())) {
            if (auto* v = as<Term::Var>(args[i]); v && v->index >= depth) {
              int l = cl.vars - 1 - (v->index - depth);
              ok = strict[i].count(l) > 0;
            }
          }
          if (!ok)
            candidates.erase(i);
        }
      }
      for (const auto& a : args)
        visit(a, depth);
      std::visit(
          [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Term::Pi>) {
              visit(n.domain, depth);
              visit(n.codomain, depth + 1);
            } else if constexpr (std::is_same_v<T, Term::Lam>) {
              visit(n.body, depth + 1);
            } else if constexpr (std::is_same_v<T, Term::Ctor>) {
              for (const auto& h : n.hidden)
                visit(h, depth);
              for (const auto& a : n.args)
                visit(a, depth);
            } else if constexpr (std::is_same_v<T, Term::Id>) {
              visit(n.carrier, depth);
              visit(n.lhs, depth);
              visit(n.rhs, depth);
            } else if constexpr (std::is_same_v<T, Term::J>) {
              visit(n.motive, depth);
              visit(n.base, depth);
              visit(n.path, depth);
            }
          },
          head->node);
    };
    visit(cl.rhs, 0);
  }
  if (recursive && candidates.empty())
    error(codes::Termination, "cannot find an argument on which '" + f.name +
                                  "' decreases structurally; mark it 'partial' to skip this check");
}

} // namespace fordc::kernel
