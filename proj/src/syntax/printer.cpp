#include "fordc/syntax.hpp"

namespace fordc::syntax {

namespace {

enum Prec { Top = 0, AppLevel = 1, Atom = 2 };

void print(std::string& out, const ExprPtr& e, Prec prec);

void paren(std::string& out, bool wrap, auto&& body) {
  if (wrap)
    out += '(';
  body();
  if (wrap)
    out += ')';
}

void print(std::string& out, const ExprPtr& e, Prec prec) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Expr::Var>) {
          out += n.name;
        } else if constexpr (std::is_same_v<T, Expr::Universe>) {
          out += n.level == 0 ? "Type" : "Type1";
        } else if constexpr (std::is_same_v<T, Expr::Refl>) {
          out += "refl";
        } else if constexpr (std::is_same_v<T, Expr::Ann>) {
          out += '(';
          print(out, n.term, Top);
          out += " : ";
          print(out, n.type, Top);
          out += ')';
        } else if constexpr (std::is_same_v<T, Expr::Lam>) {
          paren(out, prec > Top, [&] {
            out += '\\';
            out += n.name;
            const Expr* body = n.body.get();
            ExprPtr bodyPtr = n.body;
            while (auto* inner = std::get_if<Expr::Lam>(&body->node)) {
              out += ' ';
              out += inner->name;
              bodyPtr = inner->body;
              body = bodyPtr.get();
            }
            out += ". ";
            print(out, bodyPtr, Top);
          });
        } else if constexpr (std::is_same_v<T, Expr::Pi>) {
          paren(out, prec > Top, [&] {
            if (n.name == "_") {
              // `(x : T) -> B` would read back as a dependent Pi.
              bool annotated = std::holds_alternative<Expr::Ann>(n.domain->node);
              paren(out, annotated, [&] { print(out, n.domain, AppLevel); });
            } else {
              out += '(' + n.name + " : ";
              print(out, n.domain, Top);
              out += ')';
            }
            out += " -> ";
            print(out, n.codomain, Top);
          });
        } else if constexpr (std::is_same_v<T, Expr::App>) {
          paren(out, prec > AppLevel, [&] {
            print(out, n.fn, AppLevel);
            out += ' ';
            print(out, n.arg, Atom);
          });
        } else if constexpr (std::is_same_v<T, Expr::Id>) {
          paren(out, prec > AppLevel, [&] {
            out += "Id ";
            print(out, n.carrier, Atom);
            out += ' ';
            print(out, n.lhs, Atom);
            out += ' ';
            print(out, n.rhs, Atom);
          });
        } else if constexpr (std::is_same_v<T, Expr::J>) {
          paren(out, prec > AppLevel, [&] {
            out += "J ";
            print(out, n.motive, Atom);
            out += ' ';
            print(out, n.base, Atom);
            out += ' ';
            print(out, n.path, Atom);
          });
        }
      },
      e->node);
}

void printPat(std::string& out, const Pattern& p, bool nested) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Pattern::Var>) {
          out += n.name;
        } else if constexpr (std::is_same_v<T, Pattern::Ctor>) {
          paren(out, nested && !n.args.empty(), [&] {
            out += n.name;
            for (const auto& a : n.args) {
              out += ' ';
              printPat(out, a, true);
            }
          });
        } else {
          out += ".(";
          print(out, n.term, Top);
          out += ')';
        }
      },
      p.node);
}

void printRow(std::string& out, const std::vector<Pattern>& row) {
  for (size_t i = 0; i < row.size(); ++i) {
    if (i)
      out += ", ";
    printPat(out, row[i], false);
  }
}

void printTelescope(std::string& out, const Telescope& t) {
  for (const auto& b : t) {
    out += " (" + b.name + " : ";
    print(out, b.type, Top);
    out += ')';
  }
}

} // namespace

std::string printExpr(const ExprPtr& e) {
  std::string out;
  print(out, e, Top);
  return out;
}

std::string printPattern(const Pattern& p) {
  std::string out;
  printPat(out, p, false);
  return out;
}

std::string printDecl(const Declaration& decl) {
  std::string out;
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, DataDecl>) {
          out += "data " + d.name;
          printTelescope(out, d.params);
          if (!d.indices.empty()) {
            out += " :";
            printTelescope(out, d.indices);
          }
          out += '\n';
          for (const auto& c : d.ctors) {
            out += "  | ";
            if (!c.availability.empty()) {
              printRow(out, c.availability);
              out += " => ";
            }
            out += c.name;
            if (c.isPath) {
              out += " : ";
              print(out, c.pathType, Top);
            } else {
              printTelescope(out, c.args);
            }
            out += '\n';
          }
        } else if constexpr (std::is_same_v<T, FunDecl>) {
          if (d.partial)
            out += "partial ";
          out += "def " + d.name;
          printTelescope(out, d.params);
          out += " : ";
          print(out, d.result, Top);
          out += '\n';
          if (d.body) {
            out += "  = ";
            print(out, *d.body, Top);
            out += '\n';
          } else {
            for (const auto& cl : d.clauses) {
              out += "  | ";
              printRow(out, cl.patterns);
              out += " => ";
              print(out, cl.rhs, Top);
              out += '\n';
            }
          }
        } else {
          out += "axiom " + d.name + " : ";
          print(out, d.type, Top);
          out += '\n';
        }
      },
      decl);
  return out;
}

std::string printModule(const SourceModule& m) {
  std::string out;
  for (size_t i = 0; i < m.decls.size(); ++i) {
    if (i)
      out += '\n';
    out += printDecl(m.decls[i]);
  }
  return out;
}

} // namespace fordc::syntax
