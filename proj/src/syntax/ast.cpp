#include "fordc/syntax.hpp"

namespace fordc::syntax {

namespace {
template <class T> ExprPtr make(T node) {
  return std::make_shared<const Expr>(Expr{std::move(node)});
}
} // namespace

ExprPtr var(std::string name) { return make(Expr::Var{std::move(name)}); }
ExprPtr universe(int level) { return make(Expr::Universe{level}); }
ExprPtr pi(std::string name, ExprPtr dom, ExprPtr cod) {
  return make(Expr::Pi{std::move(name), std::move(dom), std::move(cod)});
}
ExprPtr arrow(ExprPtr dom, ExprPtr cod) { return pi("_", std::move(dom), std::move(cod)); }
ExprPtr lam(std::string name, ExprPtr body) {
  return make(Expr::Lam{std::move(name), std::move(body)});
}
ExprPtr app(ExprPtr fn, ExprPtr arg) { return make(Expr::App{std::move(fn), std::move(arg)}); }
ExprPtr apps(ExprPtr fn, const std::vector<ExprPtr>& args) {
  for (const auto& a : args)
    fn = app(std::move(fn), a);
  return fn;
}
ExprPtr idType(ExprPtr carrier, ExprPtr lhs, ExprPtr rhs) {
  return make(Expr::Id{std::move(carrier), std::move(lhs), std::move(rhs)});
}
ExprPtr refl() { return make(Expr::Refl{}); }
ExprPtr jElim(ExprPtr motive, ExprPtr base, ExprPtr path) {
  return make(Expr::J{std::move(motive), std::move(base), std::move(path)});
}
ExprPtr ann(ExprPtr term, ExprPtr type) { return make(Expr::Ann{std::move(term), std::move(type)}); }

std::pair<ExprPtr, std::vector<ExprPtr>> spine(const ExprPtr& e) {
  std::vector<ExprPtr> args;
  ExprPtr head = e;
  while (auto* a = std::get_if<Expr::App>(&head->node)) {
    args.push_back(a->arg);
    head = a->fn;
  }
  return {head, {args.rbegin(), args.rend()}};
}

ExprPtr patternToExpr(const Pattern& p) {
  return std::visit(
      [](const auto& n) -> ExprPtr {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Pattern::Var>) {
          return var(n.name);
        } else if constexpr (std::is_same_v<T, Pattern::Ctor>) {
          if (n.name == kReflName)
            return refl();
          std::vector<ExprPtr> args;
          for (const auto& a : n.args)
            args.push_back(patternToExpr(a));
          return apps(var(n.name), args);
        } else {
          return n.term;
        }
      },
      p.node);
}

void patternVars(const Pattern& p, std::vector<std::string>& out) {
  if (auto* v = std::get_if<Pattern::Var>(&p.node)) {
    out.push_back(v->name);
  } else if (auto* c = std::get_if<Pattern::Ctor>(&p.node)) {
    for (const auto& a : c->args)
      patternVars(a, out);
  }
}

const std::string& declName(const Declaration& d) {
  return std::visit([](const auto& x) -> const std::string& { return x.name; }, d);
}

Span declSpan(const Declaration& d) {
  return std::visit([](const auto& x) { return x.span; }, d);
}

const DataDecl* SourceModule::findData(std::string_view name) const {
  for (const auto& d : decls)
    if (auto* data = std::get_if<DataDecl>(&d); data && data->name == name)
      return data;
  return nullptr;
}

const FunDecl* SourceModule::findFun(std::string_view name) const {
  for (const auto& d : decls)
    if (auto* f = std::get_if<FunDecl>(&d); f && f->name == name)
      return f;
  return nullptr;
}

std::string freshName(const std::string& base, const std::set<std::string>& taken) {
  if (!taken.count(base))
    return base;
  for (int i = 1;; ++i) {
    auto candidate = base + std::to_string(i);
    if (!taken.count(candidate))
      return candidate;
  }
}

const std::set<std::string>& preludeNames() {
  static const std::set<std::string> names{"idp", "subst", "sym", "trans"};
  return names;
}

} // namespace fordc::syntax
