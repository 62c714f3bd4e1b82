#pragma once

#include "fordc/kernel/term.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fordc::kernel {

/// Elaborated pattern. Binding order: a Var binds one variable; a Ctor binds
/// the callee's availability variables first, then whatever its argument
/// patterns bind; Refl and Inaccessible bind nothing.
struct CPattern {
  struct Var {
    std::string name;
  };
  struct Ctor {
    std::string name; // qualified
    std::vector<CPattern> args;
  };
  struct Refl {};
  struct Inaccessible {
    TermPtr term;
    int depth; // number of variables in scope when `term` was elaborated
  };

  std::variant<Var, Ctor, Refl, Inaccessible> node;
};

struct CtorInfo {
  std::string name; // qualified `Data.ctor`
  std::string shortName;
  std::string data;
  CoreTelescope hidden;               // over params + earlier hidden
  std::vector<CPattern> availability; // one per index, over params + hidden
  CoreTelescope args;                 // over params + hidden + earlier args
};

struct DataInfo {
  std::string name;
  CoreTelescope params;
  CoreTelescope indices;
  std::vector<std::string> ctors; // qualified, declaration order
  std::vector<std::string> paths; // qualified path-constructor axioms
  TermPtr type;
};

struct CClause {
  std::vector<CPattern> patterns;
  int vars = 0; // variables bound by the row
  TermPtr rhs;
};

struct FunInfo {
  std::string name;
  TermPtr type;
  int arity = 0;
  std::vector<CClause> clauses;
  bool partial = false;
  bool builtin = false;
};

struct AxiomInfo {
  std::string name; // qualified for path constructors
  std::string shortName;
  TermPtr type;
  std::string pathOf; // owning datatype for path constructors
};

/// Global signature. Built in declaration order; read-only afterwards.
class Signature {
public:
  const DataInfo* data(std::string_view name) const;
  const CtorInfo* ctor(std::string_view qualified) const;
  const FunInfo* fun(std::string_view name) const;
  const AxiomInfo* axiom(std::string_view qualified) const;

  /// Constructors whose short or qualified name is `name`.
  std::vector<const CtorInfo*> ctorsNamed(std::string_view name) const;
  std::vector<const AxiomInfo*> axiomsNamed(std::string_view name) const;

  /// Spelling of a constructor that resolves back to it without type
  /// information: the short name when unique, otherwise the qualified one.
  std::string ctorSpelling(const std::string& qualified) const;

  bool hasGlobal(std::string_view name) const;

  DataInfo& addData(DataInfo d);
  void addCtor(CtorInfo c);
  FunInfo& addFun(FunInfo f);
  void addAxiom(AxiomInfo a);
  void setClauses(const std::string& fun, std::vector<CClause> clauses);

  /// User declarations in order (prelude excluded).
  const std::vector<std::string>& order() const { return order_; }

private:
  std::map<std::string, DataInfo, std::less<>> data_;
  std::map<std::string, CtorInfo, std::less<>> ctors_;
  std::multimap<std::string, std::string, std::less<>> ctorShort_;
  std::map<std::string, FunInfo, std::less<>> funs_;
  std::map<std::string, AxiomInfo, std::less<>> axioms_;
  std::multimap<std::string, std::string, std::less<>> axiomShort_;
  std::vector<std::string> order_;
};

struct Local {
  std::string name;
  Val type;
  std::optional<Val> def; // set by unification while checking patterns
  bool hidden = false;    // availability variables cannot be named in source
};

/// Typing context: locals addressed by de Bruijn level.
class Context {
public:
  int size() const { return static_cast<int>(locals_.size()); }
  Val push(std::string name, Val type, bool hidden = false);
  void truncate(int n);
  const Local& at(int level) const { return locals_[level]; }
  void define(int level, Val v);
  bool hasDefs() const { return defs_ > 0; }

  std::optional<int> lookup(std::string_view name) const;
  Env env() const;
  std::vector<std::string> names() const;

private:
  std::vector<Local> locals_;
  int defs_ = 0;
};

} // namespace fordc::kernel
