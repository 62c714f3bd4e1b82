#pragma once
// Mini-universe merge: a block of plain datatypes becomes one family indexed
// by an enumeration with a tag per member.
//
//   data Nat | zero | suc (n : Nat)   ==>   data U | Nat_tag
//                                           data T : (u : U)
//                                             | Nat_tag => zero_T
//                                             | Nat_tag => suc_T (n : T Nat_tag)
//                                           def Nat : Type = T Nat_tag

#include "fordc/kernel/checker.hpp"
#include "fordc/syntax.hpp"

#include <json.hpp>

namespace fordc::merge {

struct PathSpec {
  std::string name;
  std::string lhs; // block member names; the path joins their tags
  std::string rhs;
};

/// Parses `name:L:R`. Throws TransformError (E-MERGE-PATH) when malformed.
PathSpec parsePathSpec(std::string_view text);

struct Options {
  std::vector<std::string> types;
  std::string enumName = "U";
  std::string familyName = "T";
  std::vector<PathSpec> paths;
};

struct Plan {
  std::string enumName;
  std::string familyName;
  std::string indexName;
  std::vector<std::string> block;
  std::vector<std::pair<std::string, std::string>> tagOf;   // member -> tag
  std::vector<std::pair<std::string, std::string>> ctorMap; // D.c -> T.c_T
  std::vector<PathSpec> paths;

  nlohmann::ordered_json toJson() const;
};

struct Result {
  syntax::SourceModule module;
  Plan plan;
};

/// Enumeration, family and aliases for the block, with no path constructors
/// on the enumeration. `m` must already check.
std::tuple<syntax::DataDecl, syntax::DataDecl, std::vector<syntax::FunDecl>, Plan>
mergeBlock(const syntax::SourceModule& m, const Options& opts);

/// mergeBlock, plus `opts.paths` as path constructors of the enumeration.
std::tuple<syntax::DataDecl, syntax::DataDecl, std::vector<syntax::FunDecl>, Plan>
mergeWithPaths(const syntax::SourceModule& m, const Options& opts);

/// Checks `m`, merges the block in place of its last member, rewrites
/// constructor references in later declarations and re-checks the result.
Result merge(const syntax::SourceModule& m, const Options& opts,
             kernel::CheckOptions check = {});

} // namespace fordc::merge
