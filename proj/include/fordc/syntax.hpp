#pragma once

// Surface syntax of the .fda declaration language.
//
//   data Vec (A : Type) : (n : Nat)
//     | zero => nil
//     | suc m => cons (x : A) (xs : Vec A m)
//
//   def subst (A : Type) (P : A -> Type) (x : A) (y : A) (p : Id A x y) (u : P x) : P y
//     = J (\y0 q. P y0) u p
//
// Parameters sit before the colon of a data header and are never matched on;
// indices sit after it and may be constrained by availability rows.

#include "fordc/diagnostic.hpp"

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fordc::syntax {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  struct Var {
    std::string name;
  };
  struct Universe {
    int level;
  };
  struct Pi {
    std::string name; // "_" for a non-dependent arrow
    ExprPtr domain, codomain;
  };
  struct Lam {
    std::string name;
    ExprPtr body;
  };
  struct App {
    ExprPtr fn, arg;
  };
  struct Id {
    ExprPtr carrier, lhs, rhs;
  };
  struct Refl {};
  struct J {
    ExprPtr motive, base, path;
  };
  struct Ann {
    ExprPtr term, type;
  };

  std::variant<Var, Universe, Pi, Lam, App, Id, Refl, J, Ann> node;
};

ExprPtr var(std::string name);
ExprPtr universe(int level);
ExprPtr pi(std::string name, ExprPtr dom, ExprPtr cod);
ExprPtr arrow(ExprPtr dom, ExprPtr cod);
ExprPtr lam(std::string name, ExprPtr body);
ExprPtr app(ExprPtr fn, ExprPtr arg);
ExprPtr apps(ExprPtr fn, const std::vector<ExprPtr>& args);
ExprPtr idType(ExprPtr carrier, ExprPtr lhs, ExprPtr rhs);
ExprPtr refl();
ExprPtr jElim(ExprPtr motive, ExprPtr base, ExprPtr path);
ExprPtr ann(ExprPtr term, ExprPtr type);

/// Splits `f a b c` into `f` and `[a, b, c]`.
std::pair<ExprPtr, std::vector<ExprPtr>> spine(const ExprPtr& e);

/// The reserved constructor name of the identity type, usable in patterns.
inline constexpr std::string_view kReflName = "refl";

struct Pattern {
  struct Var {
    std::string name;
  };
  struct Ctor {
    std::string name;
    std::vector<Pattern> args;
  };
  struct Inaccessible {
    ExprPtr term;
  };

  std::variant<Var, Ctor, Inaccessible> node;

  static Pattern variable(std::string name) { return {Var{std::move(name)}}; }
  static Pattern ctor(std::string name, std::vector<Pattern> args = {}) {
    return {Ctor{std::move(name), std::move(args)}};
  }
  static Pattern inaccessible(ExprPtr t) { return {Inaccessible{std::move(t)}}; }

  bool isVar() const { return std::holds_alternative<Var>(node); }
};

/// Reads a pattern back as a term over its own variables.
ExprPtr patternToExpr(const Pattern& p);

/// Variables bound by a pattern, left to right.
void patternVars(const Pattern& p, std::vector<std::string>& out);

struct Binder {
  std::string name;
  ExprPtr type;
};
using Telescope = std::vector<Binder>;

struct CtorDecl {
  std::string name;
  std::vector<Pattern> availability; // one per index of the parent
  Telescope args;
  bool isPath = false;
  ExprPtr pathType; // set iff isPath: an `Id` type
  Span span;
};

struct DataDecl {
  std::string name;
  Telescope params;
  Telescope indices;
  std::vector<CtorDecl> ctors;
  Span span;
};

struct Clause {
  std::vector<Pattern> patterns;
  ExprPtr rhs;
  Span span;
};

struct FunDecl {
  std::string name;
  Telescope params;
  ExprPtr result;
  std::optional<ExprPtr> body; // `= e` form
  std::vector<Clause> clauses; // `| p, q => e` form
  bool partial = false;        // skips the termination check
  Span span;
};

struct AxiomDecl {
  std::string name;
  ExprPtr type;
  Span span;
};

using Declaration = std::variant<DataDecl, FunDecl, AxiomDecl>;

const std::string& declName(const Declaration& d);
Span declSpan(const Declaration& d);

struct SourceModule {
  std::vector<Declaration> decls;

  const DataDecl* findData(std::string_view name) const;
  const FunDecl* findFun(std::string_view name) const;
};

/// Parses a whole module. Throws ParseError.
SourceModule parse(std::string_view source);

/// Parses a single expression.
ExprPtr parseExpr(std::string_view source);

/// Canonical, deterministic rendering. Two-space indentation, one blank line
/// between declarations, trailing newline, empty module -> empty text.
std::string printModule(const SourceModule& m);
std::string printDecl(const Declaration& d);
std::string printExpr(const ExprPtr& e);
std::string printPattern(const Pattern& p);

bool alphaEquivalent(const ExprPtr& a, const ExprPtr& b);
bool alphaEquivalent(const SourceModule& a, const SourceModule& b);

/// Names every module can refer to without declaring them (kernel prelude).
const std::set<std::string>& preludeNames();

/// Scope pass: unique declaration names, every identifier bound earlier or
/// locally, linear pattern rows, disjoint parameter/index names.
/// Throws ScopeError on the first violation.
void scopeCheck(const SourceModule& m);

/// Returns `base` if it is not in `taken`, otherwise the first of
/// base1, base2, ... that is not.
std::string freshName(const std::string& base, const std::set<std::string>& taken);

} // namespace fordc::syntax
