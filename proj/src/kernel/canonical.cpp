#include "fordc/kernel/canonical.hpp"

#include "fordc/kernel/show.hpp"

namespace fordc::kernel {

namespace {

struct Generator {
  const Kernel& k;
  size_t limit;

  bool closed(Evaluator& ev, const Context& ctx, const Val& v, TermPtr& out) {
    out = ev.quote(ctx.size(), v);
    for (int i = 0; i < ctx.size(); ++i)
      if (mentionsIndex(out, i))
        return false;
    return true;
  }

  // Values for the remaining arguments of a constructor, given the ones so far.
  void args(const CtorInfo& c, const Env& env, size_t next, int depth, std::vector<Val>& acc,
            const std::vector<Val>& hidden, std::vector<Val>& out) {
    if (out.size() >= limit)
      return;
    if (next == c.args.size()) {
      out.push_back(vmk::ctor(c.name, hidden, acc));
      return;
    }
    auto ev = k.evaluator();
    Val type = ev.eval(env, c.args[next].type);
    for (const auto& v : values(type, depth)) {
      Env env2 = env;
      env2.push_back(v);
      acc.push_back(v);
      args(c, env2, next + 1, depth, acc, hidden, out);
      acc.pop_back();
    }
  }

  std::vector<Val> values(const Val& type, int depth) {
    std::vector<Val> out;
    Context ctx;
    auto ev = k.evaluator(&ctx);
    Val t = ev.force(type);
    if (auto* id = as<Value::Id>(t)) {
      if (k.convertible(ctx, id->lhs, id->rhs))
        out.push_back(vmk::refl());
      return out;
    }
    auto* d = as<Value::Rigid>(t);
    if (!d || d->head != Value::Rigid::Head::Data || depth <= 0)
      return out;
    const DataInfo* info = k.signature().data(d->name);
    size_t np = info->params.size();
    std::vector<Val> params(d->spine.begin(), d->spine.begin() + np);
    std::vector<Val> indices(d->spine.begin() + np, d->spine.end());
    for (const auto& cname : info->ctors) {
      const CtorInfo& c = *k.signature().ctor(cname);
      std::vector<Val> hiddenVars;
      Env env = params;
      for (const auto& h : c.hidden) {
        hiddenVars.push_back(ctx.push(h.name, ev.eval(env, h.type), true));
        env.push_back(hiddenVars.back());
      }
      Unifier u(ev, ctx, 0, k.signature());
      auto r = u.unifyAll(indices, k.availabilityValues(c, env));
      std::vector<Val> hidden;
      bool ok = r.ok();
      for (size_t i = 0; ok && i < hiddenVars.size(); ++i) {
        TermPtr term;
        ok = closed(ev, ctx, hiddenVars[i], term);
        if (ok)
          hidden.push_back(k.evalClosed(term));
      }
      ctx.truncate(0);
      if (!ok)
        continue;
      std::vector<Val> acc;
      Env argEnv = params;
      argEnv.insert(argEnv.end(), hidden.begin(), hidden.end());
      args(c, argEnv, 0, depth - 1, acc, hidden, out);
    }
    return out;
  }
};

} // namespace

std::vector<Val> canonicalValues(const Kernel& k, const Val& type, int depth, size_t limit) {
  Generator g{k, limit};
  return g.values(type, depth);
}

} // namespace fordc::kernel
