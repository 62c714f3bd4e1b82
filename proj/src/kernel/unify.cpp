#include "fordc/kernel/unify.hpp"

#include "fordc/kernel/show.hpp"

namespace fordc::kernel {

using Head = Value::Rigid::Head;

namespace {
bool neutral(const Val& v) {
  if (auto* r = as<Value::Rigid>(v))
    return r->head != Head::Data;
  return as<Value::StuckJ>(v) != nullptr;
}
} // namespace

std::string Unifier::show(const Val& v) {
  return showTerm(ev_.quote(ctx_.size(), v), ctx_.names(), sig_);
}

std::optional<int> Unifier::flex(const Val& v) const {
  auto* r = as<Value::Rigid>(v);
  if (!r || r->head != Head::Var || !r->spine.empty())
    return std::nullopt;
  if (r->level < flexFrom_ || ctx_.at(r->level).def)
    return std::nullopt;
  return r->level;
}

bool Unifier::fail(UnifyResult::Kind kind, const Val& l, const Val& r) {
  result_.kind = kind;
  result_.left = l;
  result_.right = r;
  if (kind == UnifyResult::Kind::Stuck)
    result_.evidence = "stuck on " + show(l);
  else
    result_.evidence = show(l) + " vs " + show(r);
  return false;
}

bool Unifier::solve(int level, const Val& v) {
  TermPtr t = ev_.quote(ctx_.size(), v);
  if (mentionsIndex(t, ctx_.size() - 1 - level))
    return fail(UnifyResult::Kind::Stuck, v, vmk::var(level));
  ctx_.define(level, v);
  result_.solutions.emplace_back(level, v);
  return true;
}

bool Unifier::go(const Val& x, const Val& y) {
  Val a = ev_.force(x), b = ev_.force(y);
  auto fa = flex(a), fb = flex(b);
  if (fa && fb) {
    if (*fa == *fb)
      return true;
    return *fa > *fb ? solve(*fa, b) : solve(*fb, a);
  }
  if (fa)
    return solve(*fa, b);
  if (fb)
    return solve(*fb, a);

  auto* ca = as<Value::Ctor>(a);
  auto* cb = as<Value::Ctor>(b);
  if (ca && cb) {
    if (ca->name != cb->name)
      return fail(UnifyResult::Kind::Mismatch, a, b);
    for (size_t i = 0; i < ca->hidden.size() && i < cb->hidden.size(); ++i)
      if (!go(ca->hidden[i], cb->hidden[i]))
        return false;
    for (size_t i = 0; i < ca->args.size(); ++i)
      if (!go(ca->args[i], cb->args[i]))
        return false;
    return true;
  }
  if (as<Value::Refl>(a) && as<Value::Refl>(b))
    return true;
  auto* ra = as<Value::Rigid>(a);
  auto* rb = as<Value::Rigid>(b);
  if (ra && rb && ra->head == Head::Data && rb->head == Head::Data) {
    if (ra->name != rb->name || ra->spine.size() != rb->spine.size())
      return fail(UnifyResult::Kind::Mismatch, a, b);
    for (size_t i = 0; i < ra->spine.size(); ++i)
      if (!go(ra->spine[i], rb->spine[i]))
        return false;
    return true;
  }
  auto* ia = as<Value::Id>(a);
  auto* ib = as<Value::Id>(b);
  if (ia && ib)
    return go(ia->carrier, ib->carrier) && go(ia->lhs, ib->lhs) && go(ia->rhs, ib->rhs);

  if (termEqual(ev_.quote(ctx_.size(), a), ev_.quote(ctx_.size(), b)))
    return true;
  if (neutral(a))
    return fail(UnifyResult::Kind::Stuck, a, b);
  if (neutral(b))
    return fail(UnifyResult::Kind::Stuck, b, a);
  return fail(UnifyResult::Kind::Mismatch, a, b);
}

UnifyResult Unifier::unify(const Val& a, const Val& b) {
  result_ = {};
  go(a, b);
  return result_;
}

UnifyResult Unifier::unifyAll(const std::vector<Val>& as, const std::vector<Val>& bs) {
  result_ = {};
  for (size_t i = 0; i < as.size() && i < bs.size(); ++i)
    if (!go(as[i], bs[i]))
      break;
  return result_;
}

} // namespace fordc::kernel
