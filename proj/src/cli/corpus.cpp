#include "fordc/cli.hpp"

#include "fordc/ford.hpp"
#include "fordc/merge.hpp"

#include <atomic>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <thread>

namespace fordc::cli {

namespace fs = std::filesystem;
using Kind = CorpusCase::Kind;

namespace {

struct KindInfo {
  const char* name;
  Kind kind;
  bool golden; // second operand is a golden file
  bool code;   // second operand is a diagnostic code
  bool ford;
  bool merge;
};

constexpr KindInfo kKinds[] = {
    {"accept", Kind::Accept, false, false, false, false},
    {"reject", Kind::Reject, false, true, false, false},
    {"parse", Kind::Parse, false, false, false, false},
    {"golden", Kind::Golden, true, false, false, false},
    {"ford", Kind::Ford, true, false, true, false},
    {"ford-reject", Kind::FordReject, false, true, true, false},
    {"merge", Kind::Merge, true, false, false, true},
    {"merge-reject", Kind::MergeReject, false, true, false, true},
};

const KindInfo& info(Kind k) {
  for (const auto& i : kKinds)
    if (i.kind == k)
      return i;
  return kKinds[0];
}

[[noreturn]] void bad(int line, const std::string& msg) {
  throw Error(makeDiagnostic(codes::Manifest, msg, Span{line, 1, line, 1}));
}

ford::Options fordOptions(const std::vector<std::string>& args) {
  ford::Options o;
  for (size_t i = 0; i + 1 < args.size(); i += 2) {
    if (args[i] == "--data")
      o.data = args[i + 1];
    else if (args[i] == "--suffix")
      o.suffix = args[i + 1];
  }
  return o;
}

merge::Options mergeOptions(const std::vector<std::string>& args) {
  merge::Options o;
  for (size_t i = 0; i + 1 < args.size(); i += 2) {
    const std::string& v = args[i + 1];
    if (args[i] == "--types") {
      std::stringstream ss(v);
      std::string t;
      while (std::getline(ss, t, ','))
        if (!t.empty())
          o.types.push_back(t);
    } else if (args[i] == "--path") {
      o.paths.push_back(merge::parsePathSpec(v));
    } else if (args[i] == "--enum") {
      o.enumName = v;
    } else if (args[i] == "--family") {
      o.familyName = v;
    }
  }
  return o;
}

std::string firstLine(const std::string& s) {
  return s.substr(0, s.find('\n'));
}

} // namespace

std::vector<CorpusCase> parseManifest(std::string_view text, const std::string& dir) {
  std::vector<CorpusCase> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto hash = raw.find('#');
    if (hash != std::string::npos)
      raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;)
      tok.push_back(t);
    if (tok.empty())
      continue;

    const KindInfo* k = nullptr;
    for (const auto& i : kKinds)
      if (tok[0] == i.name)
        k = &i;
    if (!k)
      bad(line, "unknown case kind '" + tok[0] + "'");
    size_t operands = 1 + (k->golden || k->code ? 1 : 0);
    if (tok.size() < 1 + operands)
      bad(line, "'" + tok[0] + "' needs " + std::to_string(operands) + " operand(s)");

    CorpusCase c;
    c.kind = k->kind;
    c.line = line;
    c.input = (fs::path(dir) / tok[1]).string();
    if (k->golden)
      c.golden = (fs::path(dir) / tok[2]).string();
    if (k->code)
      c.code = tok[2];
    c.args.assign(tok.begin() + 1 + operands, tok.end());
    if (!k->ford && !k->merge && !c.args.empty())
      bad(line, "'" + tok[0] + "' takes no flags");
    for (size_t i = 0; i < c.args.size(); i += 2) {
      const std::string& f = c.args[i];
      bool known = k->ford ? (f == "--data" || f == "--suffix")
                           : (f == "--types" || f == "--path" || f == "--enum" ||
                              f == "--family");
      if (!known)
        bad(line, "unknown flag '" + f + "' for '" + tok[0] + "'");
      if (i + 1 >= c.args.size())
        bad(line, "flag '" + f + "' needs a value");
    }
    if (k->ford && fordOptions(c.args).data.empty())
      bad(line, "'" + tok[0] + "' needs --data");
    if (k->merge && std::find(c.args.begin(), c.args.end(), "--types") == c.args.end())
      bad(line, "'" + tok[0] + "' needs --types");
    std::ostringstream joined;
    for (size_t i = 0; i < tok.size(); ++i)
      joined << (i ? " " : "") << tok[i];
    c.text = joined.str();
    out.push_back(std::move(c));
  }
  return out;
}

CaseResult runCase(const CorpusCase& c, long budget) {
  const KindInfo& k = info(c.kind);
  auto produce = [&]() -> std::string {
    auto m = syntax::parse(readFile(c.input));
    switch (c.kind) {
    case Kind::Parse:
      return {};
    case Kind::Golden:
      return syntax::printModule(m);
    case Kind::Ford:
    case Kind::FordReject:
      return syntax::printModule(ford::ford(m, fordOptions(c.args), {budget}).module);
    case Kind::Merge:
    case Kind::MergeReject:
      return syntax::printModule(merge::merge(m, mergeOptions(c.args), {budget}).module);
    default:
      kernel::checkModule(m, {budget});
      return {};
    }
  };

  try {
    std::string produced = produce();
    if (k.code)
      return {false, "expected " + c.code + ", but the input was accepted"};
    if (k.golden) {
      std::string expected;
      try {
        expected = readFile(c.golden);
      } catch (const Error&) {
        return {false, "missing golden file " + c.golden};
      }
      if (produced != expected) {
        // Report the first differing line.
        std::istringstream a(produced), b(expected);
        std::string la, lb;
        for (int n = 1;; ++n) {
          bool ha = static_cast<bool>(std::getline(a, la));
          bool hb = static_cast<bool>(std::getline(b, lb));
          if (!ha && !hb)
            return {false, "output differs from golden (trailing bytes)"};
          if (!ha || !hb || la != lb)
            return {false, "output differs from golden at line " + std::to_string(n) +
                               ": got '" + (ha ? la : "<eof>") + "', expected '" +
                               (hb ? lb : "<eof>") + "'"};
        }
      }
    }
    return {true, {}};
  } catch (const Error& e) {
    if (k.code && e.code() == c.code)
      return {true, {}};
    Diagnostic d = e.diagnostic();
    return {false, (k.code ? "expected " + c.code + ", got " : std::string()) + d.code + ": " +
                       firstLine(d.message)};
  } catch (const std::exception& e) {
    return {false, std::string("internal error: ") + e.what()};
  }
}

int cmdCorpus(const CorpusArgs& a, Streams& s) {
  std::vector<CorpusCase> cases;
  try {
    std::string dir = fs::path(a.manifest).parent_path().string();
    cases = parseManifest(readFile(a.manifest), dir);
  } catch (const Error& e) {
    Diagnostic d = e.diagnostic();
    d.file = a.manifest;
    report(s, d);
    return exitCodeFor(e);
  }

  std::vector<CaseResult> results(cases.size());
  unsigned jobs = a.jobs ? a.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, std::max<size_t>(cases.size(), 1));
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j)
    pool.emplace_back([&] {
      for (size_t i; (i = next++) < cases.size();)
        results[i] = runCase(cases[i], a.stepBudget);
    });
  for (auto& t : pool)
    t.join();

  size_t passed = 0;
  for (size_t i = 0; i < cases.size(); ++i) {
    s.out << (results[i].passed ? "PASS  " : "FAIL  ") << cases[i].text << "\n";
    if (!results[i].passed)
      s.out << "      " << results[i].detail << "\n";
    passed += results[i].passed;
  }
  s.out << cases.size() << " cases, " << passed << " passed, " << cases.size() - passed
        << " failed\n";
  return passed == cases.size() ? exit_code::Ok : exit_code::Type;
}

} // namespace fordc::cli
