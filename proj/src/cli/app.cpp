#include "fordc/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace fordc::cli {

namespace {

std::vector<std::string> splitCommas(const std::vector<std::string>& items) {
  std::vector<std::string> out;
  for (const auto& item : items) {
    size_t start = 0;
    while (start <= item.size()) {
      size_t comma = item.find(',', start);
      std::string part = item.substr(start, comma - start);
      if (!part.empty())
        out.push_back(part);
      if (comma == std::string::npos)
        break;
      start = comma + 1;
    }
  }
  return out;
}

} // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Type-checks .fda modules and applies the Ford and merge transformations."};
  app.name("fordc");
  app.require_subcommand(1);
  app.fallthrough();

  bool json = false;
  std::optional<long> budgetFlag;
  app.add_flag("--json", json, "Report diagnostics as JSON lines");
  app.add_option("--step-budget", budgetFlag,
                 "Reduction steps allowed per normalization (default 100000; "
                 "FORDC_STEP_BUDGET also sets it)")
      ->check(CLI::PositiveNumber);

  CheckArgs check;
  auto* checkCmd = app.add_subcommand("check", "Type-check modules");
  checkCmd->add_option("paths", check.paths, "Modules to check")->required();

  FordArgs fordArgs;
  auto* fordCmd = app.add_subcommand("ford", "Ford an indexed family");
  fordCmd->add_option("input", fordArgs.path, "Input module")->required();
  fordCmd->add_option("--data", fordArgs.data, "Family to Ford")->required();
  fordCmd->add_option("--suffix", fordArgs.suffix, "Suffix of the Forded family")
      ->capture_default_str();
  fordCmd->add_option("--out", fordArgs.out, "Write the module here instead of stdout");

  MergeArgs mergeArgs;
  std::vector<std::string> types;
  auto* mergeCmd = app.add_subcommand("merge", "Merge datatypes into one enumeration-indexed family");
  mergeCmd->add_option("input", mergeArgs.path, "Input module")->required();
  mergeCmd->add_option("--types", types, "Block members, comma separated")->required();
  mergeCmd->add_option("--path", mergeArgs.paths, "Path constructor name:L:R on the enumeration");
  mergeCmd->add_option("--enum", mergeArgs.enumName, "Name of the enumeration")
      ->capture_default_str();
  mergeCmd->add_option("--family", mergeArgs.familyName, "Name of the family")
      ->capture_default_str();
  mergeCmd->add_option("--out", mergeArgs.out, "Write the module here instead of stdout");

  CorpusArgs corpus;
  auto* corpusCmd = app.add_subcommand("corpus", "Run a corpus manifest");
  corpusCmd->add_option("manifest", corpus.manifest, "Manifest file")->required();
  corpusCmd->add_option("--jobs", corpus.jobs, "Parallel cases (default: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::Ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::Ok;
  } catch (const CLI::ParseError& e) {
    err << "fordc: " << e.what() << "\n";
    return exit_code::Usage;
  }

  long budget = kernel::kDefaultStepBudget;
  if (const char* env = std::getenv("FORDC_STEP_BUDGET"); env && *env) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v <= 0) {
      err << "fordc: FORDC_STEP_BUDGET must be a positive integer, got '" << env << "'\n";
      return exit_code::Usage;
    }
    budget = v;
  }
  if (budgetFlag)
    budget = *budgetFlag;

  Streams s{out, err, json};
  if (*checkCmd) {
    check.stepBudget = budget;
    return cmdCheck(check, s);
  }
  if (*fordCmd) {
    fordArgs.stepBudget = budget;
    return cmdFord(fordArgs, s);
  }
  if (*mergeCmd) {
    mergeArgs.types = splitCommas(types);
    mergeArgs.stepBudget = budget;
    return cmdMerge(mergeArgs, s);
  }
  corpus.stepBudget = budget;
  return cmdCorpus(corpus, s);
}

} // namespace fordc::cli
