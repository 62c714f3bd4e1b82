#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fordc {

struct Span {
  int line = 0;
  int column = 0;
  int endLine = 0;
  int endColumn = 0;

  bool known() const { return line > 0; }
};

enum class Severity { Error, Warning, Info };

const char* severityName(Severity s);

/// Stable diagnostic codes. The registry lives in README.md; never renumber.
namespace codes {
inline constexpr const char* Parse = "E-PARSE";
inline constexpr const char* Io = "E-IO";
inline constexpr const char* Scope = "E-SCOPE";
inline constexpr const char* Ambiguous = "E-AMBIGUOUS";
inline constexpr const char* Duplicate = "E-DUP";
inline constexpr const char* NonLinear = "E-NONLINEAR";
inline constexpr const char* Type = "E-TYPE";
inline constexpr const char* Infer = "E-INFER";
inline constexpr const char* Universe = "E-UNIVERSE";
inline constexpr const char* Arity = "E-ARITY";
inline constexpr const char* UnifyStuck = "E-UNIFY-STUCK";
inline constexpr const char* UnifyMismatch = "E-UNIFY-MISMATCH";
inline constexpr const char* Coverage = "E-COVERAGE";
inline constexpr const char* Termination = "E-TERMINATION";
inline constexpr const char* Positivity = "E-POSITIVITY";
inline constexpr const char* PathCtor = "E-PATH-CTOR";
inline constexpr const char* StepBudget = "E-STEP-BUDGET";
inline constexpr const char* FordNoIndex = "E-FORD-NOINDEX";
inline constexpr const char* FordReadback = "E-FORD-READBACK";
inline constexpr const char* FordTarget = "E-FORD-TARGET";
inline constexpr const char* MergeBlock = "E-MERGE-BLOCK";
inline constexpr const char* MergePath = "E-MERGE-PATH";
inline constexpr const char* MergeName = "E-MERGE-NAME";
inline constexpr const char* Manifest = "E-MANIFEST";
} // namespace codes

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string file;
  Span span;
  std::string message;
  // Normalized-term diff or unification evidence, one line per entry.
  std::vector<std::string> evidence;

  std::string toText() const;
  std::string toJson() const;
};

/// Base for every error the toolchain reports to users.
class Error : public std::runtime_error {
public:
  explicit Error(Diagnostic d)
      : std::runtime_error(d.message), diag_(std::move(d)) {}

  const Diagnostic& diagnostic() const { return diag_; }
  Diagnostic& diagnostic() { return diag_; }
  const std::string& code() const { return diag_.code; }

private:
  Diagnostic diag_;
};

class ParseError : public Error {
public:
  ParseError(Span at, std::vector<std::string> expected, std::string found);

  const std::vector<std::string>& expected() const { return expected_; }

private:
  std::vector<std::string> expected_;
};

class ScopeError : public Error {
  using Error::Error;
};

class TypeError : public Error {
public:
  TypeError(std::string code, std::string decl, std::string message, Span span = {});

  const std::string& declaration() const { return decl_; }

private:
  std::string decl_;
};

class StepBudgetExceeded : public Error {
public:
  explicit StepBudgetExceeded(long budget);
};

class TransformError : public Error {
public:
  TransformError(std::string code, std::string message);
};

Diagnostic makeDiagnostic(std::string code, std::string message, Span span = {});

} // namespace fordc
