#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "hypcert/cli.hpp"
#include "hypcert/corpus.hpp"
#include "hypcert/minimize.hpp"

namespace fs = std::filesystem;
using namespace hypcert;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("hypcert-cli-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

const std::string kMain(kMainStatement);
const std::string kRatio(kRatioExpression);

}  // namespace

TEST_CASE("verify exit codes") {
  const fs::path cert = scratch() / "t3.cert";
  CHECK(run({"verify", kMain, "--var", "u=0.3:3", "--out", cert.string()}).code == 0);
  CHECK(fs::exists(cert));
  CHECK(run({"verify", "u < u", "--var", "u=0:1", "--leaf-budget", "1000"}).code == 2);
  const Run dom = run({"verify", "ln(u) < u", "--var", "u=-1:1"});
  CHECK(dom.code == 1);
  CHECK(dom.err.find("ln") != std::string::npos);
  CHECK(run({"verify", "u <", "--var", "u=0:1"}).code == 1);
  CHECK(run({"verify", "u < 2", "--var", "u=2:1"}).code == 1);
  CHECK(run({"verify", "u < 2"}).code == 1);
  CHECK(run({"verify", "u < 2", "--var", "u=0:1", "--max-depth", "0"}).code == 1);
  CHECK(run({"verify", "x*y < 2", "--var", "x=0:1", "--var", "y=0:1"}).code == 0);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"verify", "u < 2", "--var", "u=0:1", "--bogus"}).code == 1);
  const Run help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("verify") != std::string::npos);
}

TEST_CASE("validate exit codes") {
  const fs::path cert = scratch() / "v.cert";
  REQUIRE(run({"verify", kMain, "--var", "u=0.3:3", "--out", cert.string()}).code == 0);
  CHECK(run({"validate", cert.string()}).code == 0);

  std::string text = slurp(cert);
  const auto pos = text.find("leaves: ");
  const auto first = text.find('\n', pos) + 1;
  const auto second = text.find('\n', first) + 1;
  text.erase(first, second - first);
  const fs::path bad = scratch() / "bad.cert";
  spit(bad, text);
  CHECK(run({"validate", bad.string()}).code == 2);

  spit(bad, "hello\n");
  CHECK(run({"validate", bad.string()}).code == 2);
  CHECK(run({"validate", (scratch() / "missing.cert").string()}).code == 1);
}

TEST_CASE("corpus command") {
  const fs::path dir = scratch() / "corpus";
  const Run l1s = run({"corpus", "L1S"});
  CHECK(l1s.code == 0);
  CHECK(l1s.out.find("L1S") != std::string::npos);
  CHECK(run({"corpus", "no-such-id"}).code == 1);

  const Run full = run({"corpus", "T3-full", "--out", dir.string()});
  CHECK(full.code == 0);
  const fs::path cert = dir / "T3-full.cert";
  REQUIRE(fs::exists(cert));
  const CompositeResult r = parse_composite(slurp(cert));
  CHECK(r.tails.size() + r.parts.size() == 3);
  CHECK(run({"validate", cert.string()}).code == 0);
}

TEST_CASE("infimum command") {
  const fs::path out = scratch() / "inf.cert";
  const Run r = run({"infimum", kRatio, "--var", "u=0.15:3", "--target-width", "1e-4", "--out",
                     out.string()});
  CHECK(r.code == 0);
  const MinimizationResult m = parse_minimization(slurp(out));
  CHECK(Scalar::from_decimal("0.972", 64, Round::Up) < m.lower_bound());
  CHECK(run({"validate", out.string()}).code == 0);
  CHECK(run({"infimum", kRatio, "--var", "u=0.15:3", "--target-width", "1e-12", "--leaf-budget",
             "5"}).code == 2);
  CHECK(run({"infimum", "ln(u)", "--var", "u=-1:1"}).code == 1);
  CHECK(run({"infimum", "x*y", "--var", "x=0:1", "--var", "y=0:1"}).code == 1);
}

TEST_CASE("scan command") {
  const fs::path out = scratch() / "scan.csv";
  CHECK(run({"scan", kRatio, "--var", "u=0:6", "--points", "601", "--out", out.string()}).code == 0);
  std::istringstream in(slurp(out));
  std::string header, row0;
  std::getline(in, header);
  std::getline(in, row0);
  CHECK(header == "u,lo,hi");
  CHECK(row0 == "0,1.0000000000000000000e+00,1.0000000000000000000e+00");
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 600);
  const Run stdout_scan = run({"scan", "u^2", "--var", "u=0:1", "--points", "3"});
  CHECK(stdout_scan.code == 0);
  CHECK(stdout_scan.out.find("0.5,") != std::string::npos);
  CHECK(run({"scan", "u", "--var", "u=0:1", "--points", "1"}).code == 1);
}

TEST_CASE("outputs are byte-identical across runs and thread counts") {
  const fs::path a = scratch() / "a.cert";
  const fs::path b = scratch() / "b.cert";
  const fs::path c = scratch() / "c.cert";
  const std::string stmt = "tanh(x)*tanh(y) < tanh(x*tanh(y))";
  run({"verify", stmt, "--var", "x=0.5:2", "--var", "y=0.5:2", "--out", a.string()});
  run({"verify", stmt, "--var", "x=0.5:2", "--var", "y=0.5:2", "--out", b.string()});
  run({"verify", stmt, "--var", "x=0.5:2", "--var", "y=0.5:2", "--threads", "3", "--out", c.string()});
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) == slurp(c));

  const Run p1 = run({"corpus", "CH", "--seed", "7"});
  const Run p2 = run({"corpus", "CH", "--seed", "7", "--threads", "4"});
  CHECK(p1.code == 0);
  CHECK(p1.out == p2.out);
}
