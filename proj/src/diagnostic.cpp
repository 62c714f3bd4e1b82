#include "fordc/diagnostic.hpp"

#include <json.hpp>

namespace fordc {

const char* severityName(Severity s) {
  switch (s) {
  case Severity::Error: return "error";
  case Severity::Warning: return "warning";
  case Severity::Info: return "info";
  }
  return "error";
}

std::string Diagnostic::toText() const {
  std::string out;
  if (!file.empty())
    out += file + ":";
  if (span.known())
    out += std::to_string(span.line) + ":" + std::to_string(span.column) + ":";
  if (!out.empty())
    out += " ";
  out += severityName(severity);
  out += "[" + code + "]: " + message;
  for (const auto& e : evidence)
    out += "\n  " + e;
  return out;
}

std::string Diagnostic::toJson() const {
  nlohmann::ordered_json j;
  j["severity"] = severityName(severity);
  j["code"] = code;
  j["file"] = file;
  j["span"] = {{"line", span.line},
               {"column", span.column},
               {"endLine", span.endLine ? span.endLine : span.line},
               {"endColumn", span.endColumn ? span.endColumn : span.column}};
  j["message"] = message;
  j["evidence"] = evidence;
  return j.dump();
}

Diagnostic makeDiagnostic(std::string code, std::string message, Span span) {
  Diagnostic d;
  d.code = std::move(code);
  d.message = std::move(message);
  d.span = span;
  return d;
}

static std::string expectedList(const std::vector<std::string>& expected) {
  std::string s;
  for (size_t i = 0; i < expected.size(); ++i) {
    if (i)
      s += i + 1 == expected.size() ? " or " : ", ";
    s += expected[i];
  }
  return s;
}

ParseError::ParseError(Span at, std::vector<std::string> expected, std::string found)
    : Error(makeDiagnostic(codes::Parse,
                           "expected " + expectedList(expected) + ", found " + found, at)),
      expected_(std::move(expected)) {}

TypeError::TypeError(std::string code, std::string decl, std::string message, Span span)
    : Error(makeDiagnostic(std::move(code),
                           decl.empty() ? message : "in '" + decl + "': " + message, span)),
      decl_(std::move(decl)) {}

StepBudgetExceeded::StepBudgetExceeded(long budget)
    : Error(makeDiagnostic(codes::StepBudget,
                           "normalization exceeded the step budget of " +
                               std::to_string(budget) + " reductions")) {}

TransformError::TransformError(std::string code, std::string message)
    : Error(makeDiagnostic(std::move(code), std::move(message))) {}

} // namespace fordc
