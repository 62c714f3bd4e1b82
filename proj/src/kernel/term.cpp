#include "fordc/kernel/term.hpp"

namespace fordc::kernel {

namespace {
template <class T> TermPtr make(T n) { return std::make_shared<const Term>(Term{std::move(n)}); }
template <class T> Val makeVal(T n) { return std::make_shared<const Value>(Value{std::move(n)}); }
} // namespace

namespace mk {
TermPtr var(int index) { return make(Term::Var{index}); }
TermPtr universe(int level) { return make(Term::Universe{level}); }
TermPtr pi(std::string name, TermPtr dom, TermPtr cod) {
  return make(Term::Pi{std::move(name), std::move(dom), std::move(cod)});
}
TermPtr lam(std::string name, TermPtr body) { return make(Term::Lam{std::move(name), std::move(body)}); }
TermPtr app(TermPtr fn, TermPtr arg) { return make(Term::App{std::move(fn), std::move(arg)}); }
TermPtr apps(TermPtr fn, const std::vector<TermPtr>& args) {
  for (const auto& a : args)
    fn = app(std::move(fn), a);
  return fn;
}
TermPtr data(std::string name) { return make(Term::Data{std::move(name)}); }
TermPtr fun(std::string name) { return make(Term::Fun{std::move(name)}); }
TermPtr axiom(std::string name) { return make(Term::Axiom{std::move(name)}); }
TermPtr ctor(std::string name, std::vector<TermPtr> hidden, std::vector<TermPtr> args) {
  return make(Term::Ctor{std::move(name), std::move(hidden), std::move(args)});
}
TermPtr id(TermPtr carrier, TermPtr lhs, TermPtr rhs) {
  return make(Term::Id{std::move(carrier), std::move(lhs), std::move(rhs)});
}
TermPtr refl() { return make(Term::Refl{}); }
TermPtr j(TermPtr motive, TermPtr base, TermPtr path) {
  return make(Term::J{std::move(motive), std::move(base), std::move(path)});
}
} // namespace mk

namespace vmk {
Val universe(int level) { return makeVal(Value::Universe{level}); }
Val var(int level) {
  return makeVal(Value::Rigid{Value::Rigid::Head::Var, level, {}, {}});
}
Val rigid(Value::Rigid::Head head, std::string name, std::vector<Val> spine) {
  return makeVal(Value::Rigid{head, -1, std::move(name), std::move(spine)});
}
Val ctor(std::string name, std::vector<Val> hidden, std::vector<Val> args) {
  return makeVal(Value::Ctor{std::move(name), std::move(hidden), std::move(args)});
}
Val id(Val carrier, Val lhs, Val rhs) {
  return makeVal(Value::Id{std::move(carrier), std::move(lhs), std::move(rhs)});
}
Val refl() {
  static const Val r = makeVal(Value::Refl{});
  return r;
}
} // namespace vmk

static bool listEqual(const std::vector<TermPtr>& a, const std::vector<TermPtr>& b) {
  if (a.size() != b.size())
    return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!termEqual(a[i], b[i]))
      return false;
  return true;
}

bool termEqual(const TermPtr& a, const TermPtr& b) { return a == b || *a == *b; }

bool operator==(const Term& a, const Term& b) {
  if (a.node.index() != b.node.index())
    return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Term::Var>)
          return x.index == y.index;
        else if constexpr (std::is_same_v<T, Term::Universe>)
          return x.level == y.level;
        else if constexpr (std::is_same_v<T, Term::Pi>)
          return termEqual(x.domain, y.domain) && termEqual(x.codomain, y.codomain);
        else if constexpr (std::is_same_v<T, Term::Lam>)
          return termEqual(x.body, y.body);
        else if constexpr (std::is_same_v<T, Term::App>)
          return termEqual(x.fn, y.fn) && termEqual(x.arg, y.arg);
        else if constexpr (std::is_same_v<T, Term::Data> || std::is_same_v<T, Term::Fun> ||
                           std::is_same_v<T, Term::Axiom>)
          return x.name == y.name;
        else if constexpr (std::is_same_v<T, Term::Ctor>)
          return x.name == y.name && listEqual(x.hidden, y.hidden) && listEqual(x.args, y.args);
        else if constexpr (std::is_same_v<T, Term::Id>)
          return termEqual(x.carrier, y.carrier) && termEqual(x.lhs, y.lhs) &&
                 termEqual(x.rhs, y.rhs);
        else if constexpr (std::is_same_v<T, Term::Refl>)
          return true;
        else
          return termEqual(x.motive, y.motive) && termEqual(x.base, y.base) &&
                 termEqual(x.path, y.path);
      },
      a.node);
}

std::pair<TermPtr, std::vector<TermPtr>> unspine(const TermPtr& t) {
  std::vector<TermPtr> args;
  TermPtr head = t;
  while (auto* a = as<Term::App>(head)) {
    args.push_back(a->arg);
    head = a->fn;
  }
  return {head, {args.rbegin(), args.rend()}};
}

} // namespace fordc::kernel
