#pragma once
// Fording: replaces the availability rows of an indexed family by explicit
// equality arguments, so every constructor is available at every index.
//
//   data Vec (A : Type) : (n : Nat)        data VecF (A : Type) : (n : Nat)
//     | zero => nil                 ==>      | n => nil (eq : Id Nat zero n)
//     | suc m => cons (x : A) ...            | n => cons (m : Nat) (eq : Id Nat (suc m) n) (x : A) ...

#include "fordc/kernel/checker.hpp"
#include "fordc/syntax.hpp"

#include <json.hpp>

namespace fordc::ford {

struct Options {
  std::string data;
  std::string suffix = "F";
};

struct Equation {
  size_t index;         // position in the index telescope
  std::string variable; // fresh index variable of the Forded row
  std::string pattern;  // the former availability pattern, as a term
  std::string argument; // name of the equality argument
};

struct CtorPlan {
  std::string name;   // original, qualified
  std::string forded; // qualified constructor of the Forded family
  std::vector<std::string> hoisted;
  std::vector<Equation> equations;

  // Used by the converter generator.
  std::vector<std::string> rowVars;
  std::vector<syntax::Pattern> indexPatterns; // availability row, renamed
  std::vector<std::string> args;
  // Per original argument: the index expressions when it is a recursive
  // occurrence `D ps is`, otherwise empty.
  std::vector<std::optional<std::vector<syntax::ExprPtr>>> recursive;
};

struct Plan {
  std::string target;
  std::string forded;
  std::string toName;
  std::string fromName;
  std::vector<std::string> params;
  std::vector<std::string> indices;
  std::vector<CtorPlan> ctors;

  nlohmann::ordered_json toJson() const;
};

/// Builds the Forded declaration. `k` must have checked the module that
/// declares `d`. Throws TransformError.
std::pair<syntax::DataDecl, Plan> fordData(const syntax::SourceModule& m, const kernel::Kernel& k,
                                           const Options& opts);

/// `to<F>` maps each original constructor to its Forded twin with refl
/// proofs; `from<F>` matches the proofs against refl.
std::pair<syntax::FunDecl, syntax::FunDecl> genConverters(const Plan& plan,
                                                          const syntax::DataDecl& original);

struct Result {
  syntax::SourceModule module; // input declarations, Forded family, converters
  Plan plan;
};

/// fordData and genConverters, then re-checks the extended module.
Result ford(const syntax::SourceModule& m, const Options& opts,
            kernel::CheckOptions check = {});

/// True when every availability pattern of every constructor is a variable.
bool indexFree(const syntax::DataDecl& d);

} // namespace fordc::ford
