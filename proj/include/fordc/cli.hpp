#pragma once

#include "fordc/diagnostic.hpp"
#include "fordc/kernel/eval.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fordc::cli {

namespace exit_code {
inline constexpr int Ok = 0;
inline constexpr int Type = 1; // scope, type, budget and other transform errors
inline constexpr int Parse = 2; // .fda or manifest syntax
inline constexpr int Io = 3;
inline constexpr int FordNoIndex = 4;
inline constexpr int MergeBlock = 5;
inline constexpr int Usage = 64;
} // namespace exit_code

int exitCodeFor(const Error& e);

struct Streams {
  std::ostream& out;
  std::ostream& err;
  bool json = false; // diagnostics as JSON lines
};

void report(Streams& s, Diagnostic d);

std::string readFile(const std::string& path);
/// Writes through a temporary file in the same directory and renames it over
/// `path`, so readers never see a partial file.
void writeFileAtomic(const std::string& path, const std::string& contents);

struct CheckArgs {
  std::vector<std::string> paths;
  long stepBudget = kernel::kDefaultStepBudget;
};
int cmdCheck(const CheckArgs& a, Streams& s);

struct FordArgs {
  std::string path;
  std::string data;
  std::string suffix = "F";
  std::optional<std::string> out;
  long stepBudget = kernel::kDefaultStepBudget;
};
int cmdFord(const FordArgs& a, Streams& s);

struct MergeArgs {
  std::string path;
  std::vector<std::string> types;
  std::vector<std::string> paths; // name:L:R
  std::string enumName = "U";
  std::string familyName = "T";
  std::optional<std::string> out;
  long stepBudget = kernel::kDefaultStepBudget;
};
int cmdMerge(const MergeArgs& a, Streams& s);

// ---- corpus ------------------------------------------------------------

struct CorpusCase {
  enum class Kind { Accept, Reject, Parse, Golden, Ford, FordReject, Merge, MergeReject };
  Kind kind;
  int line = 0;
  std::string input;  // resolved against the manifest directory
  std::string golden; // Golden, Ford, Merge
  std::string code;   // Reject, FordReject, MergeReject
  std::vector<std::string> args; // transformation flags
  std::string text;   // the manifest line, for the report
};

/// Parses a manifest. Throws ParseError (E-MANIFEST) on malformed lines.
std::vector<CorpusCase> parseManifest(std::string_view text, const std::string& dir);

struct CaseResult {
  bool passed = false;
  std::string detail;
};

CaseResult runCase(const CorpusCase& c, long stepBudget);

struct CorpusArgs {
  std::string manifest;
  long stepBudget = kernel::kDefaultStepBudget;
  unsigned jobs = 0; // 0: hardware concurrency
};
int cmdCorpus(const CorpusArgs& a, Streams& s);

/// Entry point of the `fordc` executable.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

} // namespace fordc::cli
