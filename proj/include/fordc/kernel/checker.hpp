#pragma once

#include "fordc/kernel/eval.hpp"
#include "fordc/kernel/unify.hpp"
#include "fordc/syntax.hpp"

#include <map>

namespace fordc::kernel {

struct CheckOptions {
  long stepBudget = kDefaultStepBudget;
};

/// Bidirectional type checker. Owns the global signature, which starts with
/// the prelude (`idp`, `subst`, `sym`, `trans`, all defined through J) and
/// grows one declaration at a time.
class Kernel {
public:
  explicit Kernel(CheckOptions opts = {});

  /// Scope pass, then every declaration in order. Throws ScopeError,
  /// TypeError or StepBudgetExceeded.
  void checkModule(const syntax::SourceModule& m);
  void checkDecl(const syntax::Declaration& d);

  const Signature& signature() const { return sig_; }
  long stepBudget() const { return opts_.stepBudget; }

  TermPtr check(Context& ctx, const syntax::ExprPtr& e, const Val& type);
  std::pair<TermPtr, Val> infer(Context& ctx, const syntax::ExprPtr& e);

  Evaluator evaluator(const Context* ctx = nullptr) const {
    return Evaluator(sig_, opts_.stepBudget, ctx);
  }
  Val eval(const Context& ctx, const TermPtr& t) const;
  Val evalClosed(const TermPtr& t) const;
  TermPtr normalize(const Context& ctx, const TermPtr& t) const;
  bool convertible(const Context& ctx, const Val& a, const Val& b) const;
  std::string show(const Context& ctx, const Val& v) const;
  std::string show(const Context& ctx, const TermPtr& t) const;

  /// Unifies `expected` index values with the availability row of `ctor`
  /// instantiated at `params`. Availability variables are the only flexible
  /// ones; the context is left unchanged.
  UnifyResult unifyIndices(Context& ctx, const std::vector<Val>& expected, const CtorInfo& ctor,
                           const std::vector<Val>& params);

  /// Values of an availability row, reading variables from `env`
  /// (parameters followed by bound variables).
  std::vector<Val> availabilityValues(const CtorInfo& ctor, const Env& env) const;

  /// Elaborates a closed expression against a closed type (both source text).
  TermPtr elaborateClosed(std::string_view expr, std::string_view type);

private:
  struct Column {
    Val value;
    Val type;
  };
  using Row = std::vector<const CPattern*>;

  Signature sig_;
  CheckOptions opts_;
  std::string decl_;
  Span span_;

  [[noreturn]] void error(const char* code, const std::string& msg,
                          std::vector<std::string> evidence = {}) const;
  [[noreturn]] void unifyError(const UnifyResult& r, const std::string& what) const;

  void checkData(const syntax::DataDecl& d);
  void checkFun(const syntax::FunDecl& f, bool builtin);
  void checkAxiom(const syntax::AxiomDecl& a);

  std::pair<TermPtr, int> requireType(Context& ctx, const syntax::ExprPtr& e);
  bool subtype(const Context& ctx, const Val& inferred, const Val& expected) const;

  std::optional<std::string> ctorHead(const Context& ctx, const syntax::ExprPtr& e) const;
  const CtorInfo& resolveCtor(const std::string& name, const std::string& data) const;
  TermPtr checkCtorApp(Context& ctx, const std::string& name,
                       const std::vector<syntax::ExprPtr>& args, const Val& expected,
                       const syntax::ExprPtr& whole);
  std::pair<TermPtr, Val> inferCtorApp(Context& ctx, const std::string& name,
                                       const std::vector<syntax::ExprPtr>& args);
  TermPtr elabCtor(Context& ctx, const CtorInfo& c, const std::vector<syntax::ExprPtr>& args,
                   const std::vector<Val>& params, const std::vector<Val>& indices);

  Val checkPattern(Context& ctx, const syntax::Pattern& p, const Val& type, int flexFrom,
                   CPattern& out);
  CClause checkClause(const FunInfo& f, const syntax::Clause& cl);

  void checkCoverage(const FunInfo& f, const std::vector<CClause>& clauses);
  std::optional<std::string> uncovered(Context ctx, std::vector<Column> cols,
                                       std::vector<Row> rows, int arity);
  bool uninhabited(Context ctx, const Column& col);
  void checkTermination(const FunInfo& f, const std::vector<CClause>& clauses);
  void checkPositivity(const std::string& data, const TermPtr& argType, const std::string& ctor);
};

/// Checks a module from scratch; the returned kernel holds the elaborated
/// signature.
Kernel checkModule(const syntax::SourceModule& m, CheckOptions opts = {});

} // namespace fordc::kernel
