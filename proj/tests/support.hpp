#pragma once

#include "fordc/kernel/checker.hpp"
#include "fordc/syntax.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace support {

inline std::string corpusPath(const std::string& name) {
  return std::string(FORDC_CORPUS_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline fordc::syntax::SourceModule load(const std::string& name) {
  return fordc::syntax::parse(slurp(corpusPath(name)));
}

inline fordc::kernel::Kernel checked(const std::string& name) {
  return fordc::kernel::checkModule(load(name));
}

/// Every .fda input in the corpus, goldens excluded.
inline std::vector<std::string> corpusInputs() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(FORDC_CORPUS_DIR)) {
    auto name = e.path().filename().string();
    if (e.path().extension() == ".fda" && name.find(".golden.") == std::string::npos)
      out.push_back(name);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Inputs that parse (everything but the deliberate syntax error).
inline std::vector<std::string> parseableInputs() {
  std::vector<std::string> out;
  for (const auto& n : corpusInputs())
    if (n != "bad-parse.fda")
      out.push_back(n);
  return out;
}

/// Inputs that are expected to type-check.
inline std::vector<std::string> positiveInputs() {
  std::vector<std::string> out;
  for (const auto& n : corpusInputs())
    if (n.rfind("bad-", 0) != 0 && n != "code-encode.fda" && n != "pushout.fda")
      out.push_back(n);
  return out;
}

inline fordc::kernel::TermPtr normalizeClosed(fordc::kernel::Kernel& k, const std::string& expr,
                                              const std::string& type) {
  fordc::kernel::Context ctx;
  return k.normalize(ctx, k.elaborateClosed(expr, type));
}

inline std::string showClosed(const fordc::kernel::Kernel& k, const fordc::kernel::TermPtr& t) {
  fordc::kernel::Context ctx;
  return k.show(ctx, t);
}

} // namespace support

namespace support {

inline const char* kLawsModule = R"(
data Bool
  | true
  | false

data Nat
  | zero
  | suc (n : Nat)
)";

struct SubstInstance {
  std::string carrier, motive, point, value;
};

/// Instances of the transport laws over Bool and Nat: each point of the
/// carrier against a handful of motives, with a canonical element of the
/// motive at that point.
inline std::vector<SubstInstance> substInstances(size_t count = 20) {
  struct Carrier {
    std::string name;
    std::vector<std::string> points;
  };
  std::vector<Carrier> carriers = {
      {"Nat", {"zero", "suc zero", "suc (suc zero)", "suc (suc (suc zero))"}},
      {"Bool", {"true", "false"}},
  };
  std::vector<SubstInstance> out;
  for (const auto& c : carriers) {
    for (const auto& x : c.points) {
      out.push_back({c.name, "\\y. " + c.name, x, x});
      out.push_back({c.name, "\\y. Bool", x, "false"});
      out.push_back({c.name, "\\y. Nat", x, "suc zero"});
      out.push_back({c.name, "\\y. Id " + c.name + " y y", x, "refl"});
    }
  }
  out.resize(std::min(count, out.size()));
  return out;
}

} // namespace support
