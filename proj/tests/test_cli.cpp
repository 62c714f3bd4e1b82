#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fordc/cli.hpp"
#include "support.hpp"

#include <json.hpp>

#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <regex>

namespace fs = std::filesystem;
using namespace fordc;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "fordc");
  std::vector<char*> argv;
  for (auto& a : args)
    argv.push_back(a.data());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string in(const std::string& name) { return support::corpusPath(name); }

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("fordc-test-" + std::to_string(std::rand()) + std::to_string(::time(nullptr)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& contents) const {
    auto p = path / name;
    std::ofstream(p, std::ios::binary) << contents;
    return p.string();
  }
};

const char* kPlusFour = R"(data Nat
  | zero
  | suc (n : Nat)

def plus (m : Nat) (n : Nat) : Nat
  | zero, n => n
  | suc m, n => suc (plus m n)

def four : Id Nat (plus (suc (suc zero)) (suc (suc zero))) (suc (suc (suc (suc zero))))
  = refl
)";

} // namespace

TEST_CASE("exit codes") {
  CHECK(invoke({"check", in("nat.fda")}).code == 0);
  CHECK(invoke({"check", in("bad-type.fda")}).code == 1);
  CHECK(invoke({"check", in("bad-scope.fda")}).code == 1);
  CHECK(invoke({"check", in("bad-parse.fda")}).code == 2);
  CHECK(invoke({"check", in("does-not-exist.fda")}).code == 3);
  CHECK(invoke({"ford", in("bool.fda"), "--data", "Bool"}).code == 4);
  CHECK(invoke({"ford", in("so.fda"), "--data", "Nope"}).code == 1);
  CHECK(invoke({"merge", in("vec.fda"), "--types", "Vec"}).code == 5);
  CHECK(invoke({"merge", in("nat.fda"), "--types", "Nat", "--path", "p:Nat"}).code == 1);
  CHECK(invoke({}).code == 64);
  CHECK(invoke({"frobnicate"}).code == 64);
  CHECK(invoke({"ford", in("so.fda")}).code == 64);
  CHECK(invoke({"--step-budget", "0", "check", in("nat.fda")}).code == 64);
  CHECK(invoke({"--help"}).code == 0);

  // The first failing module decides the exit code; every module is reported.
  auto r = invoke({"check", in("bad-parse.fda"), in("bad-type.fda"), in("nat.fda")});
  CHECK(r.code == 2);
  CHECK(r.err.find("E-PARSE") != std::string::npos);
  CHECK(r.err.find("E-TYPE") != std::string::npos);
}

TEST_CASE("JSON diagnostics carry the same code and span as text") {
  for (const auto& name : support::corpusInputs()) {
    if (name.rfind("bad-", 0) != 0)
      continue;
    CAPTURE(name);
    auto text = invoke({"check", in(name)});
    auto json = invoke({"--json", "check", in(name)});
    CHECK(text.code == json.code);
    CHECK(text.code != 0);

    std::smatch m;
    std::string first = text.err.substr(0, text.err.find('\n'));
    REQUIRE(std::regex_search(first, m, std::regex(R"(:(\d+):(\d+): error\[([A-Z-]+)\])")));
    auto j = nlohmann::json::parse(json.err.substr(0, json.err.find('\n')));
    CHECK(j["code"] == m[3].str());
    CHECK(j["span"]["line"] == std::stoi(m[1].str()));
    CHECK(j["span"]["column"] == std::stoi(m[2].str()));
    CHECK(j["severity"] == "error");
    CHECK(j["file"] == in(name));
  }
}

TEST_CASE("evidence is printed under the diagnostic") {
  auto r = invoke({"check", in("bad-split-so-stuck.fda")});
  CHECK(r.code == 1);
  CHECK(r.err.find("error[E-UNIFY-STUCK]") != std::string::npos);
  CHECK(r.err.find("\n  stuck on isEmpty A x") != std::string::npos);
}

TEST_CASE("transform output matches the goldens") {
  auto f = invoke({"ford", in("vec.fda"), "--data", "Vec"});
  REQUIRE(f.code == 0);
  CHECK(f.out == support::slurp(in("vec.forded.golden.fda")));
  auto plan = nlohmann::json::parse(f.err);
  CHECK(plan["forded"] == "VecF");

  auto m = invoke({"merge", in("d1d2.fda"), "--types", "D1,D2"});
  REQUIRE(m.code == 0);
  CHECK(m.out == support::slurp(in("d1d2.merged.golden.fda")));
  CHECK(nlohmann::json::parse(m.err)["tagOf"].size() == 2);

  auto split = invoke({"merge", in("d1d2.fda"), "--types", "D1", "--types", "D2"});
  CHECK(split.out == m.out);

  auto p = invoke({"merge", in("int-point.fda"), "--types", "Int", "--path", "path:Int:Int"});
  REQUIRE(p.code == 0);
  CHECK(p.out == support::slurp(in("int-point.merged.golden.fda")));
}

TEST_CASE("--out writes atomically") {
  TempDir t;
  auto target = (t.path / "out.fda").string();
  auto r = invoke({"ford", in("so.fda"), "--data", "So", "--out", target});
  REQUIRE(r.code == 0);
  CHECK(support::slurp(target) == support::slurp(in("so.forded.golden.fda")));
  CHECK(nlohmann::json::parse(r.out)["forded"] == "SoF");

  // A failing run leaves an existing file alone and no temporaries behind.
  auto bad = invoke({"ford", in("bool.fda"), "--data", "Bool", "--out", target});
  CHECK(bad.code == 4);
  CHECK(support::slurp(target) == support::slurp(in("so.forded.golden.fda")));
  size_t files = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(t.path))
    ++files;
  CHECK(files == 1);

  auto fresh = (t.path / "fresh.fda").string();
  CHECK(invoke({"merge", in("vec.fda"), "--types", "Vec", "--out", fresh}).code == 5);
  CHECK_FALSE(fs::exists(fresh));

  auto nowhere = (t.path / "missing" / "out.fda").string();
  CHECK(invoke({"ford", in("so.fda"), "--data", "So", "--out", nowhere}).code == 3);

  auto merged = (t.path / "merged.fda").string();
  CHECK(invoke({"merge", in("nat.fda"), "--types", "Nat", "--out", merged}).code == 0);
  CHECK(support::slurp(merged) == support::slurp(in("nat.merged.golden.fda")));
}

TEST_CASE("corpus runner") {
  SUBCASE("the shipped manifest passes") {
    auto r = invoke({"corpus", in("manifest.txt")});
    CHECK(r.code == 0);
    std::smatch m;
    REQUIRE(std::regex_search(r.out, m, std::regex(R"((\d+) cases, (\d+) passed, 0 failed\n$)")));
    CHECK(m[1].str() == m[2].str());
    CHECK(std::stoi(m[1].str()) >= 40);
  }
  SUBCASE("reports are identical whatever the parallelism") {
    auto one = invoke({"corpus", in("manifest.txt"), "--jobs", "1"});
    auto many = invoke({"corpus", in("manifest.txt"), "--jobs", "8"});
    CHECK(one.out == many.out);
  }
  SUBCASE("a corrupted golden fails with the first differing line") {
    TempDir t;
    fs::copy_file(in("so.fda"), t.path / "so.fda");
    t.file("so.golden.fda", support::slurp(in("so.golden.fda")) + "-- extra\n");
    t.file("so.forded.golden.fda", "data Wrong\n");
    auto manifest = t.file("m.txt", "golden so.fda so.golden.fda\n"
                                    "ford so.fda so.forded.golden.fda --data So\n"
                                    "accept so.fda  # still fine\n"
                                    "reject so.fda E-TYPE\n");
    auto r = invoke({"corpus", manifest});
    CHECK(r.code == 1);
    CHECK(r.out.find("FAIL  golden so.fda so.golden.fda") != std::string::npos);
    CHECK(r.out.find("got '<eof>', expected '-- extra'") != std::string::npos);
    CHECK(r.out.find("at line 1: got 'data Bool', expected 'data Wrong'") != std::string::npos);
    CHECK(r.out.find("PASS  accept so.fda") != std::string::npos);
    CHECK(r.out.find("expected E-TYPE, but the input was accepted") != std::string::npos);
    CHECK(r.out.find("4 cases, 1 passed, 3 failed\n") != std::string::npos);
  }
  SUBCASE("an empty manifest is a trivial pass") {
    TempDir t;
    auto r = invoke({"corpus", t.file("m.txt", "# nothing yet\n\n")});
    CHECK(r.code == 0);
    CHECK(r.out == "0 cases, 0 passed, 0 failed\n");
  }
  SUBCASE("manifest errors") {
    TempDir t;
    auto r = invoke({"corpus", t.file("m.txt", "accept a.fda\nexplode b.fda\n")});
    CHECK(r.code == 2);
    CHECK(r.err.find(":2:") != std::string::npos);
    CHECK(r.err.find("E-MANIFEST") != std::string::npos);
    CHECK(invoke({"corpus", t.file("n.txt", "ford so.fda g.fda\n")}).code == 2);
    CHECK(invoke({"corpus", t.file("o.txt", "accept so.fda --data So\n")}).code == 2);
    CHECK(invoke({"corpus", (t.path / "none.txt").string()}).code == 3);
  }
}

TEST_CASE("step budget from the environment and the flag") {
  TempDir t;
  auto file = t.file("four.fda", kPlusFour);
  CHECK(invoke({"check", file}).code == 0);
  CHECK(invoke({"--step-budget", "2", "check", file}).code == 1);
  CHECK(invoke({"check", "--step-budget", "2", file}).err.find("E-STEP-BUDGET") !=
        std::string::npos);

  ::setenv("FORDC_STEP_BUDGET", "2", 1);
  CHECK(invoke({"check", file}).code == 1);
  CHECK(invoke({"--step-budget", "100000", "check", file}).code == 0);
  ::setenv("FORDC_STEP_BUDGET", "lots", 1);
  CHECK(invoke({"check", file}).code == 64);
  ::unsetenv("FORDC_STEP_BUDGET");
  CHECK(invoke({"check", file}).code == 0);
}

TEST_CASE("output is deterministic") {
  for (int i = 0; i < 3; ++i) {
    CHECK(invoke({"ford", in("fin.fda"), "--data", "Fin"}).out ==
          support::slurp(in("fin.forded.golden.fda")));
    CHECK(invoke({"merge", in("nat.fda"), "--types", "Nat"}).out ==
          support::slurp(in("nat.merged.golden.fda")));
  }
}
