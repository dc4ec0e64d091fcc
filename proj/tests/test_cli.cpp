#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "eqlines/cli.hpp"

namespace fs = std::filesystem;
using eqlines::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("eqlines_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("table3 golden output") {
  const Result r = invoke({"table3"});
  CHECK(r.code == eqlines::cli::kExitOk);
  CHECK(r.out ==
        "  a    D3        D4\n"
        "  3    11     14.42\n"
        "  5    59     64.56\n"
        "  7   131    144.52\n"
        "  9   227    250.41\n"
        " 11   347    380.96\n");
  CHECK(contains(r.err, "[table3]"));
}

TEST_CASE("output is byte-stable across runs") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"table3"}, {"--machine", "certificate", "5", "64"}, {"classes", "5"}}) {
    CHECK(invoke(args).out == invoke(args).out);
  }
}

TEST_CASE("machine mode prints key = value lines") {
  const Result r = invoke({"--machine", "table3"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    CHECK(contains(line, " = "));
    ++count;
  }
  CHECK(count == 20);
  CHECK(contains(r.out, "D4[5] = 64.56\n"));
}

TEST_CASE("bound and certificate") {
  const Result b = invoke({"bound", "3", "--precision", "4"});
  CHECK(b.code == 0);
  CHECK(contains(b.out, "D4 = 14.4229\n"));
  CHECK(contains(b.out, "floor_D4 = 14\n"));
  CHECK(contains(b.out, "bound = 28\n"));

  const Result ok = invoke({"certificate", "5", "64"});
  CHECK(ok.code == eqlines::cli::kExitOk);
  CHECK(contains(ok.out, "Certified: N ≤ 276"));
  const Result no = invoke({"certificate", "5", "65"});
  CHECK(no.code == eqlines::cli::kExitVerificationFailed);
  CHECK(contains(no.out, "Not certified"));
  const Result m = invoke({"--machine", "certificate", "5", "64"});
  CHECK(contains(m.out, "certified = true\n"));
  CHECK_FALSE(contains(m.out, "Certified:"));
}

TEST_CASE("classes") {
  const Result r = invoke({"classes", "6"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("16 classes\n", 0) == 0);
  CHECK(contains(invoke({"classes", "1"}).out, "(empty)"));
}

TEST_CASE("usage errors exit with 2") {
  using eqlines::cli::kExitUsage;
  CHECK(invoke({}).code == kExitUsage);
  CHECK(invoke({"bogus"}).code == kExitUsage);
  CHECK(invoke({"bound"}).code == kExitUsage);
  CHECK(invoke({"bound", "4"}).code == kExitUsage);
  CHECK(invoke({"bound", "x"}).code == kExitUsage);
  CHECK(invoke({"certificate", "5", "3"}).code == kExitUsage);
  CHECK(invoke({"classes", "8"}).code == kExitUsage);
  CHECK(invoke({"classes", "0"}).code == kExitUsage);
  CHECK(invoke({"--precision", "99", "table3"}).code == kExitUsage);
  CHECK(invoke({"check", "missing.txt"}).code == kExitUsage);
  CHECK(invoke({"check", "/nonexistent/file", "--alpha", "1/3"}).code == kExitUsage);
  CHECK(invoke({"check", "/nonexistent/file", "--alpha", "two"}).code == kExitUsage);
  CHECK(invoke({"--help"}).code == eqlines::cli::kExitOk);
}

TEST_CASE("gen28 then check and srg") {
  const fs::path path = scratch("gen28.txt");
  const Result g = invoke({"gen28", "--out", path.string()});
  REQUIRE(g.code == 0);
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "28 7 1/3");
  CHECK(invoke({"gen28"}).out.rfind("28 7 1/3\n", 0) == 0);

  const Result c = invoke({"check", path.string(), "--alpha", "1/3", "--max-k", "3"});
  CHECK(c.code == 0);
  CHECK(contains(c.out, "m2.k0.rank = 1\n"));
  CHECK(contains(c.out, "all_constraints_hold = true\n"));
  CHECK(contains(c.out, "degeneration_rules = true\n"));

  const Result s = invoke({"srg", path.string(), "--alpha", "1/3"});
  CHECK(s.code == 0);
  CHECK(contains(s.out, "parameters = SRG(27, 16, 10, 8)\n"));
  CHECK(contains(s.out, "verified = true\n"));

  const Result bad = invoke({"check", path.string(), "--alpha", "1/5"});
  CHECK(bad.code == eqlines::cli::kExitVerificationFailed);

  fs::remove_all(path.parent_path());
}

TEST_CASE("non-PSD input prints a witness and exits 1") {
  const fs::path path = scratch("bad.txt");
  {
    std::ofstream out(path);
    out << "3 3 2/3\n1 -2/3 -2/3\n-2/3 1 -2/3\n-2/3 -2/3 1\n";
  }
  const Result r = invoke({"check", path.string(), "--alpha", "2/3"});
  CHECK(r.code == eqlines::cli::kExitVerificationFailed);
  CHECK(contains(r.err + r.out, "witness"));
  fs::remove_all(path.parent_path());
}

TEST_CASE("installed binary exit codes") {
  const char* bin = std::getenv("EQLINES_BIN");
  if (bin == nullptr) {
    MESSAGE("EQLINES_BIN not set; skipping");
    return;
  }
  auto status = [&](const std::string& args) {
    const int raw = std::system((std::string(bin) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status("table3") == 0);
  CHECK(status("certificate 5 64") == 0);
  CHECK(status("certificate 5 65") == 1);
  CHECK(status("bound 4") == 2);
  CHECK(status("") == 2);
  CHECK(status("--help") == 0);
}
