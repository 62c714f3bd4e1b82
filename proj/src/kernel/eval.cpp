#include "fordc/kernel/eval.hpp"

#include "fordc/diagnostic.hpp"

#include <cassert>

namespace fordc::kernel {

using Head = Value::Rigid::Head;

void Evaluator::step() {
  if (++steps_ > budget_)
    throw StepBudgetExceeded(budget_);
}

namespace {
struct DepthGuard {
  int& depth;
  long budget;
  DepthGuard(int& d, long b) : depth(d), budget(b) {
    if (++depth > kMaxEvalDepth) {
      --depth;
      throw StepBudgetExceeded(budget);
    }
  }
  ~DepthGuard() { --depth; }
};
} // namespace

Val Evaluator::eval(const Env& env, const TermPtr& t) {
  DepthGuard guard(depth_, budget_);
  return std::visit(
      [&](const auto& n) -> Val {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term::Var>) {
          assert(n.index >= 0 && n.index < static_cast<int>(env.size()));
          return env[env.size() - 1 - n.index];
        } else if constexpr (std::is_same_v<T, Term::Universe>) {
          return vmk::universe(n.level);
        } else if constexpr (std::is_same_v<T, Term::Pi>) {
          return std::make_shared<const Value>(
              Value{Value::Pi{n.name, eval(env, n.domain), Closure{env, n.codomain}}});
        } else if constexpr (std::is_same_v<T, Term::Lam>) {
          return std::make_shared<const Value>(Value{Value::Lam{n.name, Closure{env, n.body}}});
        } else if constexpr (std::is_same_v<T, Term::App>) {
          return apply(eval(env, n.fn), eval(env, n.arg));
        } else if constexpr (std::is_same_v<T, Term::Data>) {
          return vmk::rigid(Head::Data, n.name);
        } else if constexpr (std::is_same_v<T, Term::Axiom>) {
          return vmk::rigid(Head::Axiom, n.name);
        } else if constexpr (std::is_same_v<T, Term::Fun>) {
          const FunInfo* f = sig_.fun(n.name);
          if (f && f->arity == 0 && !f->clauses.empty())
            return callFun(*f, {});
          return vmk::rigid(Head::Fun, n.name);
        } else if constexpr (std::is_same_v<T, Term::Ctor>) {
          std::vector<Val> hidden, args;
          for (const auto& h : n.hidden)
            hidden.push_back(eval(env, h));
          for (const auto& a : n.args)
            args.push_back(eval(env, a));
          return vmk::ctor(n.name, std::move(hidden), std::move(args));
        } else if constexpr (std::is_same_v<T, Term::Id>) {
          return vmk::id(eval(env, n.carrier), eval(env, n.lhs), eval(env, n.rhs));
        } else if constexpr (std::is_same_v<T, Term::Refl>) {
          return vmk::refl();
        } else {
          return reduceJ(eval(env, n.motive), eval(env, n.base), eval(env, n.path), {});
        }
      },
      t->node);
}

Val Evaluator::reduceJ(const Val& motive, const Val& base, const Val& path,
                       std::vector<Val> spine) {
  Val p = force(path);
  if (as<Value::Refl>(p)) {
    step();
    return applyAll(base, spine);
  }
  return std::make_shared<const Value>(Value{Value::StuckJ{motive, base, p, std::move(spine)}});
}

Val Evaluator::instantiate(const Closure& c, const Val& arg) {
  Env env = c.env;
  env.push_back(arg);
  return eval(env, c.body);
}

Val Evaluator::apply(const Val& f, const Val& arg) {
  if (auto* lam = as<Value::Lam>(f)) {
    step();
    return instantiate(lam->body, arg);
  }
  if (auto* r = as<Value::Rigid>(f)) {
    auto spine = r->spine;
    spine.push_back(arg);
    if (r->head == Head::Fun) {
      const FunInfo* fn = sig_.fun(r->name);
      if (fn && static_cast<int>(spine.size()) == fn->arity)
        return callFun(*fn, std::move(spine));
    }
    auto copy = *r;
    copy.spine = std::move(spine);
    return std::make_shared<const Value>(Value{std::move(copy)});
  }
  if (auto* j = as<Value::StuckJ>(f)) {
    auto copy = *j;
    copy.spine.push_back(arg);
    return std::make_shared<const Value>(Value{std::move(copy)});
  }
  throw TypeError(codes::Type, "", "internal: application of a non-function value");
}

Val Evaluator::applyAll(Val f, const std::vector<Val>& args) {
  for (const auto& a : args)
    f = apply(f, a);
  return f;
}

Evaluator::Match Evaluator::match(const CPattern& p, const Val& v, Env& env) {
  return std::visit(
      [&](const auto& n) -> Match {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, CPattern::Var>) {
          env.push_back(v);
          return Match::Yes;
        } else if constexpr (std::is_same_v<T, CPattern::Ctor>) {
          Val fv = force(v);
          auto* c = as<Value::Ctor>(fv);
          if (!c)
            return Match::Stuck;
          if (c->name != n.name)
            return Match::No;
          for (const auto& h : c->hidden)
            env.push_back(h);
          Match result = Match::Yes;
          for (size_t i = 0; i < n.args.size(); ++i) {
            Match m = match(n.args[i], c->args[i], env);
            if (m == Match::No)
              return Match::No;
            if (m == Match::Stuck)
              result = Match::Stuck;
          }
          return result;
        } else if constexpr (std::is_same_v<T, CPattern::Refl>) {
          return as<Value::Refl>(force(v)) ? Match::Yes : Match::Stuck;
        } else {
          return Match::Yes;
        }
      },
      p.node);
}

Val Evaluator::callFun(const FunInfo& f, std::vector<Val> spine) {
  auto stuck = [&] { return vmk::rigid(Head::Fun, f.name, spine); };
  if (static_cast<int>(spine.size()) < f.arity)
    return stuck();
  for (const auto& clause : f.clauses) {
    Env env;
    Match result = Match::Yes;
    for (int i = 0; i < f.arity; ++i) {
      Match m = match(clause.patterns[i], spine[i], env);
      if (m == Match::No) {
        result = Match::No;
        break;
      }
      if (m == Match::Stuck)
        result = Match::Stuck;
    }
    if (result == Match::No)
      continue;
    if (result == Match::Stuck)
      return stuck();
    step();
    Val out = eval(env, clause.rhs);
    for (size_t i = f.arity; i < spine.size(); ++i)
      out = apply(out, spine[i]);
    return out;
  }
  return stuck();
}

Val Evaluator::force(const Val& v) {
  if (!ctx_ || !ctx_->hasDefs())
    return v;
  if (auto* r = as<Value::Rigid>(v)) {
    if (r->head == Head::Var) {
      if (r->level < ctx_->size())
        if (const auto& def = ctx_->at(r->level).def)
          return force(applyAll(*def, r->spine));
      return v;
    }
    if (r->head == Head::Fun) {
      const FunInfo* f = sig_.fun(r->name);
      if (f && static_cast<int>(r->spine.size()) >= f->arity && !f->clauses.empty()) {
        Val out = callFun(*f, r->spine);
        auto* again = as<Value::Rigid>(out);
        if (again && again->head == Head::Fun && again->name == r->name)
          return out;
        return force(out);
      }
    }
    return v;
  }
  if (auto* j = as<Value::StuckJ>(v)) {
    Val p = force(j->path);
    if (as<Value::Refl>(p)) {
      step();
      return force(applyAll(j->base, j->spine));
    }
  }
  return v;
}

std::vector<TermPtr> Evaluator::quoteAll(int level, const std::vector<Val>& vs) {
  std::vector<TermPtr> out;
  out.reserve(vs.size());
  for (const auto& v : vs)
    out.push_back(quote(level, v));
  return out;
}

TermPtr Evaluator::quote(int level, const Val& value) {
  DepthGuard guard(depth_, budget_);
  Val v = force(value);
  return std::visit(
      [&](const auto& n) -> TermPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Value::Universe>) {
          return mk::universe(n.level);
        } else if constexpr (std::is_same_v<T, Value::Pi>) {
          return mk::pi(n.name, quote(level, n.domain),
                        quote(level + 1, instantiate(n.codomain, vmk::var(level))));
        } else if constexpr (std::is_same_v<T, Value::Lam>) {
          return mk::lam(n.name, quote(level + 1, instantiate(n.body, vmk::var(level))));
        } else if constexpr (std::is_same_v<T, Value::Rigid>) {
          TermPtr head;
          switch (n.head) {
          case Head::Var:
            assert(n.level < level);
            head = mk::var(level - 1 - n.level);
            break;
          case Head::Data: head = mk::data(n.name); break;
          case Head::Fun: head = mk::fun(n.name); break;
          case Head::Axiom: head = mk::axiom(n.name); break;
          }
          return mk::apps(head, quoteAll(level, n.spine));
        } else if constexpr (std::is_same_v<T, Value::Ctor>) {
          return mk::ctor(n.name, quoteAll(level, n.hidden), quoteAll(level, n.args));
        } else if constexpr (std::is_same_v<T, Value::Id>) {
          return mk::id(quote(level, n.carrier), quote(level, n.lhs), quote(level, n.rhs));
        } else if constexpr (std::is_same_v<T, Value::Refl>) {
          return mk::refl();
        } else {
          return mk::apps(mk::j(quote(level, n.motive), quote(level, n.base), quote(level, n.path)),
                          quoteAll(level, n.spine));
        }
      },
      v->node);
}

} // namespace fordc::kernel
