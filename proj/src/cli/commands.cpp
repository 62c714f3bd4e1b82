#include "fordc/cli.hpp"

#include "fordc/ford.hpp"
#include "fordc/merge.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

namespace fordc::cli {

namespace fs = std::filesystem;

int exitCodeFor(const Error& e) {
  const std::string& c = e.code();
  if (c == codes::Parse || c == codes::Manifest)
    return exit_code::Parse;
  if (c == codes::Io)
    return exit_code::Io;
  if (c == codes::FordNoIndex)
    return exit_code::FordNoIndex;
  if (c == codes::MergeBlock)
    return exit_code::MergeBlock;
  return exit_code::Type;
}

void report(Streams& s, Diagnostic d) {
  s.err << (s.json ? d.toJson() : d.toText()) << "\n";
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(makeDiagnostic(codes::Io, "cannot read '" + path + "'"));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeFileAtomic(const std::string& path, const std::string& contents) {
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << contents;
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw Error(makeDiagnostic(codes::Io, "cannot write '" + path + "'"));
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(makeDiagnostic(codes::Io, "cannot write '" + path + "'"));
  }
}

namespace {

int fail(Streams& s, const Error& e, const std::string& file) {
  Diagnostic d = e.diagnostic();
  if (d.file.empty())
    d.file = file;
  report(s, d);
  return exitCodeFor(e);
}

} // namespace

int cmdCheck(const CheckArgs& a, Streams& s) {
  int status = exit_code::Ok;
  for (const auto& path : a.paths) {
    try {
      auto m = syntax::parse(readFile(path));
      kernel::checkModule(m, {a.stepBudget});
    } catch (const Error& e) {
      int code = fail(s, e, path);
      if (status == exit_code::Ok)
        status = code;
    }
  }
  return status;
}

int cmdFord(const FordArgs& a, Streams& s) {
  try {
    auto m = syntax::parse(readFile(a.path));
    auto r = ford::ford(m, {a.data, a.suffix}, {a.stepBudget});
    std::string text = syntax::printModule(r.module);
    std::string plan = r.plan.toJson().dump(2) + "\n";
    if (a.out) {
      writeFileAtomic(*a.out, text);
      s.out << plan;
    } else {
      s.out << text;
      s.err << plan;
    }
    return exit_code::Ok;
  } catch (const Error& e) {
    return fail(s, e, a.path);
  }
}

int cmdMerge(const MergeArgs& a, Streams& s) {
  try {
    merge::Options opts;
    opts.types = a.types;
    opts.enumName = a.enumName;
    opts.familyName = a.familyName;
    for (const auto& p : a.paths)
      opts.paths.push_back(merge::parsePathSpec(p));
    auto m = syntax::parse(readFile(a.path));
    auto r = merge::merge(m, opts, {a.stepBudget});
    std::string text = syntax::printModule(r.module);
    std::string plan = r.plan.toJson().dump(2) + "\n";
    if (a.out) {
      writeFileAtomic(*a.out, text);
      s.out << plan;
    } else {
      s.out << text;
      s.err << plan;
    }
    return exit_code::Ok;
  } catch (const Error& e) {
    return fail(s, e, a.path);
  }
}

} // namespace fordc::cli
