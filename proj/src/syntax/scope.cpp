#include "fordc/syntax.hpp"

namespace fordc::syntax {

namespace {

class ScopePass {
public:
  void run(const SourceModule& m) {
    for (const auto& d : m.decls) {
      span_ = declSpan(d);
      decl_ = declName(d);
      std::visit([&](const auto& x) { visit(x); }, d);
    }
  }

private:
  std::set<std::string> globals_ = preludeNames();
  std::set<std::string> ctors_;
  std::vector<std::string> locals_;
  Span span_;
  std::string decl_;

  [[noreturn]] void fail(const char* code, const std::string& msg) const {
    throw ScopeError(makeDiagnostic(code, "in '" + decl_ + "': " + msg, span_));
  }

  void declare(const std::string& name) {
    if (globals_.count(name) || ctors_.count(name))
      fail(codes::Duplicate, "'" + name + "' is already declared");
    globals_.insert(name);
  }

  bool bound(const std::string& name) const {
    for (auto it = locals_.rbegin(); it != locals_.rend(); ++it)
      if (*it == name)
        return true;
    return globals_.count(name) || ctors_.count(name);
  }

  void expr(const ExprPtr& e) {
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Expr::Var>) {
            if (!bound(n.name))
              fail(codes::Scope, "unknown identifier '" + n.name + "'");
          } else if constexpr (std::is_same_v<T, Expr::Pi>) {
            expr(n.domain);
            locals_.push_back(n.name);
            expr(n.codomain);
            locals_.pop_back();
          } else if constexpr (std::is_same_v<T, Expr::Lam>) {
            locals_.push_back(n.name);
            expr(n.body);
            locals_.pop_back();
          } else if constexpr (std::is_same_v<T, Expr::App>) {
            expr(n.fn);
            expr(n.arg);
          } else if constexpr (std::is_same_v<T, Expr::Id>) {
            expr(n.carrier);
            expr(n.lhs);
            expr(n.rhs);
          } else if constexpr (std::is_same_v<T, Expr::J>) {
            expr(n.motive);
            expr(n.base);
            expr(n.path);
          } else if constexpr (std::is_same_v<T, Expr::Ann>) {
            expr(n.term);
            expr(n.type);
          }
        },
        e->node);
  }

  void telescope(const Telescope& t) {
    for (const auto& b : t) {
      expr(b.type);
      locals_.push_back(b.name);
    }
  }

  void pattern(const Pattern& p, std::set<std::string>& seen) {
    if (auto* v = std::get_if<Pattern::Var>(&p.node)) {
      if (v->name != "_" && !seen.insert(v->name).second)
        fail(codes::NonLinear, "variable '" + v->name + "' is bound twice in one pattern row");
      locals_.push_back(v->name);
    } else if (auto* c = std::get_if<Pattern::Ctor>(&p.node)) {
      if (c->name != kReflName && !ctors_.count(c->name))
        fail(codes::Scope, "unknown constructor '" + c->name + "'");
      for (const auto& a : c->args)
        pattern(a, seen);
    } else {
      expr(std::get<Pattern::Inaccessible>(p.node).term);
    }
  }

  void row(const std::vector<Pattern>& ps) {
    std::set<std::string> seen;
    for (const auto& p : ps)
      pattern(p, seen);
  }

  void visit(const DataDecl& d) {
    declare(d.name);
    std::set<std::string> names;
    for (const auto& b : d.params)
      names.insert(b.name);
    for (const auto& b : d.indices)
      if (b.name != "_" && names.count(b.name))
        fail(codes::Duplicate, "index '" + b.name + "' shadows a parameter");
    telescope(d.params);
    telescope(d.indices);
    locals_.resize(d.params.size());
    std::set<std::string> own;
    for (const auto& c : d.ctors) {
      if (!own.insert(c.name).second)
        fail(codes::Duplicate, "constructor '" + c.name + "' is declared twice");
      if (globals_.count(c.name))
        fail(codes::Duplicate, "constructor '" + c.name + "' clashes with a declaration");
      row(c.availability);
      if (c.isPath)
        expr(c.pathType);
      else
        telescope(c.args);
      locals_.resize(d.params.size());
      ctors_.insert(c.name);
      ctors_.insert(d.name + "." + c.name);
    }
    locals_.clear();
  }

  void visit(const FunDecl& f) {
    telescope(f.params);
    expr(f.result);
    declare(f.name);
    if (f.body) {
      expr(*f.body);
    } else {
      locals_.clear();
      for (const auto& cl : f.clauses) {
        row(cl.patterns);
        expr(cl.rhs);
        locals_.clear();
      }
    }
    locals_.clear();
  }

  void visit(const AxiomDecl& a) {
    expr(a.type);
    declare(a.name);
  }
};

} // namespace

void scopeCheck(const SourceModule& m) { ScopePass{}.run(m); }

} // namespace fordc::syntax
