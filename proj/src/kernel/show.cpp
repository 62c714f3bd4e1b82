#include "fordc/kernel/show.hpp"

#include <set>

namespace fordc::kernel {

bool mentionsIndex(const TermPtr& t, int index) {
  return std::visit(
      [&](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Term::Var>) {
          return n.index == index;
        } else if constexpr (std::is_same_v<T, Term::Pi>) {
          return mentionsIndex(n.domain, index) || mentionsIndex(n.codomain, index + 1);
        } else if constexpr (std::is_same_v<T, Term::Lam>) {
          return mentionsIndex(n.body, index + 1);
        } else if constexpr (std::is_same_v<T, Term::App>) {
          return mentionsIndex(n.fn, index) || mentionsIndex(n.arg, index);
        } else if constexpr (std::is_same_v<T, Term::Ctor>) {
          for (const auto& h : n.hidden)
            if (mentionsIndex(h, index))
              return true;
          for (const auto& a : n.args)
            if (mentionsIndex(a, index))
              return true;
          return false;
        } else if constexpr (std::is_same_v<T, Term::Id>) {
          return mentionsIndex(n.carrier, index) || mentionsIndex(n.lhs, index) ||
                 mentionsIndex(n.rhs, index);
        } else if constexpr (std::is_same_v<T, Term::J>) {
          return mentionsIndex(n.motive, index) || mentionsIndex(n.base, index) ||
                 mentionsIndex(n.path, index);
        } else {
          return false;
        }
      },
      t->node);
}

namespace {

struct Readback {
  const Signature& sig;
  bool showHidden;
  std::vector<std::string> names;

  std::string bind(const std::string& hint) {
    std::set<std::string> taken(names.begin(), names.end());
    std::string base = hint.empty() || hint == "_" ? "x" : hint;
    if (base.rfind("$", 0) == 0)
      base = "x";
    auto name = syntax::freshName(base, taken);
    names.push_back(name);
    return name;
  }

  syntax::ExprPtr go(const TermPtr& t) {
    using namespace syntax;
    return std::visit(
        [&](const auto& n) -> ExprPtr {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Term::Var>) {
            int level = static_cast<int>(names.size()) - 1 - n.index;
            if (level < 0)
              return var("#" + std::to_string(n.index));
            return var(names[level]);
          } else if constexpr (std::is_same_v<T, Term::Universe>) {
            return universe(n.level);
          } else if constexpr (std::is_same_v<T, Term::Pi>) {
            auto dom = go(n.domain);
            if (!mentionsIndex(n.codomain, 0)) {
              names.push_back("_");
              auto cod = go(n.codomain);
              names.pop_back();
              return arrow(dom, cod);
            }
            auto name = bind(n.name);
            auto cod = go(n.codomain);
            names.pop_back();
            return pi(name, dom, cod);
          } else if constexpr (std::is_same_v<T, Term::Lam>) {
            auto name = bind(n.name);
            auto body = go(n.body);
            names.pop_back();
            return lam(name, body);
          } else if constexpr (std::is_same_v<T, Term::App>) {
            return app(go(n.fn), go(n.arg));
          } else if constexpr (std::is_same_v<T, Term::Data> || std::is_same_v<T, Term::Fun>) {
            return var(n.name);
          } else if constexpr (std::is_same_v<T, Term::Axiom>) {
            auto* a = sig.axiom(n.name);
            if (a && sig.axiomsNamed(a->shortName).size() == 1)
              return var(a->shortName);
            return var(n.name);
          } else if constexpr (std::is_same_v<T, Term::Ctor>) {
            std::vector<ExprPtr> args;
            if (showHidden)
              for (const auto& h : n.hidden)
                args.push_back(var("{" + printExpr(go(h)) + "}"));
            for (const auto& a : n.args)
              args.push_back(go(a));
            return apps(var(sig.ctorSpelling(n.name)), args);
          } else if constexpr (std::is_same_v<T, Term::Id>) {
            return idType(go(n.carrier), go(n.lhs), go(n.rhs));
          } else if constexpr (std::is_same_v<T, Term::Refl>) {
            return refl();
          } else {
            return jElim(go(n.motive), go(n.base), go(n.path));
          }
        },
        t->node);
  }
};

} // namespace

syntax::ExprPtr readback(const TermPtr& t, std::vector<std::string> names, const Signature& sig,
                         bool showHidden) {
  Readback r{sig, showHidden, std::move(names)};
  return r.go(t);
}

std::string showTerm(const TermPtr& t, const std::vector<std::string>& names,
                     const Signature& sig) {
  return syntax::printExpr(readback(t, names, sig, true));
}

} // namespace fordc::kernel
