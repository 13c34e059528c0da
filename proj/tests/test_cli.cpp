#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "maf_cli.hpp"

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"maf"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code =
      maf::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string tmp_file(const std::string& name) {
  return std::string("cli_test_") + name;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  f << content;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  std::stringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("solve on identical trees") {
  write_file(tmp_file("a1.nwk"), "((a,b),c);\n");
  write_file(tmp_file("a2.nwk"), "((a,b),c);\n");
  auto res = run_cli({"solve", "--algo", "redblue", "--in1",
                      tmp_file("a1.nwk"), "--in2", tmp_file("a2.nwk")});
  CHECK(res.code == 0);
  CHECK(res.out == "value=0 dual=0 cuts=0\n");
}

TEST_CASE("solve on the three-leaf disagreement, both algorithms") {
  write_file(tmp_file("b1.nwk"), "((a,b),c);\n");
  write_file(tmp_file("b2.nwk"), "((a,c),b);\n");
  for (const char* algo : {"redblue", "three"}) {
    auto res = run_cli({"solve", "--algo", algo, "--in1", tmp_file("b1.nwk"),
                        "--in2", tmp_file("b2.nwk")});
    CHECK(res.code == 0);
    CHECK(res.out == "value=2 dual=1 cuts=2\n");
  }
}

TEST_CASE("malformed input exits with code two and names the file") {
  write_file(tmp_file("bad.nwk"), "((a,b),c;\n");
  write_file(tmp_file("ok.nwk"), "((a,b),c);\n");
  auto res = run_cli({"solve", "--algo", "redblue", "--in1",
                      tmp_file("bad.nwk"), "--in2", tmp_file("ok.nwk")});
  CHECK(res.code == 2);
  CHECK(res.err.find(tmp_file("bad.nwk")) != std::string::npos);
}

TEST_CASE("unknown arguments exit with code two") {
  auto res = run_cli({"solve", "--bogus"});
  CHECK(res.code == 2);
}

TEST_CASE("exact subcommand") {
  write_file(tmp_file("c1.nwk"), "((a,b),c);\n");
  write_file(tmp_file("c2.nwk"), "((a,c),b);\n");
  auto res = run_cli(
      {"exact", "--in1", tmp_file("c1.nwk"), "--in2", tmp_file("c2.nwk")});
  CHECK(res.code == 0);
  CHECK(res.out == "value=1 blocks=a,b|c\n");
}

TEST_CASE("gen writes a loadable pair and solve consumes it") {
  auto gen = run_cli({"gen", "--n", "12", "--spr", "3", "--seed", "5",
                      "--out1", tmp_file("g1.nwk"), "--out2",
                      tmp_file("g2.nwk")});
  CHECK(gen.code == 0);
  auto res = run_cli({"solve", "--algo", "redblue", "--in1",
                      tmp_file("g1.nwk"), "--in2", tmp_file("g2.nwk")});
  CHECK(res.code == 0);
  CHECK(res.out.find("value=") == 0);
}

TEST_CASE("certificates round trip through verify") {
  write_file(tmp_file("d1.nwk"), "(((r1,r2),(b1,b2)),((x1,x2),w));\n");
  write_file(tmp_file("d2.nwk"), "((((b1,r1),(x2,(x1,b2))),r2),w);\n");
  auto solve = run_cli({"solve", "--algo", "redblue", "--in1",
                        tmp_file("d1.nwk"), "--in2", tmp_file("d2.nwk"),
                        "--cert", tmp_file("d.json")});
  CHECK(solve.code == 0);
  auto verify = run_cli({"verify", "--in1", tmp_file("d1.nwk"), "--in2",
                         tmp_file("d2.nwk"), "--cert", tmp_file("d.json")});
  CHECK(verify.code == 0);
  CHECK(verify.out == "verify=ok\n");

  // Any tampering must be caught.
  std::string cert = read_file(tmp_file("d.json"));
  auto pos = cert.find("\"delta_p\": 4");
  REQUIRE(pos != std::string::npos);
  std::string tampered = cert;
  tampered.replace(pos, 12, "\"delta_p\": 3");
  write_file(tmp_file("d_bad.json"), tampered);
  auto bad = run_cli({"verify", "--in1", tmp_file("d1.nwk"), "--in2",
                      tmp_file("d2.nwk"), "--cert", tmp_file("d_bad.json")});
  CHECK(bad.code == 2);
}

TEST_CASE("solve with greedy reports the refined value") {
  // The two-cut output of the solver shrinks to the one-cut optimum.
  write_file(tmp_file("e1.nwk"), "((a,b),c);\n");
  write_file(tmp_file("e2.nwk"), "((a,c),b);\n");
  auto res = run_cli({"solve", "--algo", "redblue", "--in1",
                      tmp_file("e1.nwk"), "--in2", tmp_file("e2.nwk"),
                      "--greedy"});
  CHECK(res.code == 0);
  CHECK(res.out == "value=1 dual=1 cuts=2\n");
}

TEST_CASE("bench output is byte-identical across reruns and job counts") {
  auto run1 = run_cli({"bench", "--runs", "6", "--n", "60", "--spr", "4",
                       "--seed", "99", "--greedy", "--jobs", "1"});
  auto run2 = run_cli({"bench", "--runs", "6", "--n", "60", "--spr", "4",
                       "--seed", "99", "--greedy", "--jobs", "1"});
  auto run3 = run_cli({"bench", "--runs", "6", "--n", "60", "--spr", "4",
                       "--seed", "99", "--greedy", "--jobs", "8"});
  CHECK(run1.code == 0);
  auto strip_millis = [](const std::string& csv) {
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) {
      auto comma = line.rfind(',');
      out += line.substr(0, comma) + "\n";
    }
    return out;
  };
  // The trailing wall-time column is the only nondeterministic field.
  CHECK(strip_millis(run1.out) == strip_millis(run2.out));
  CHECK(strip_millis(run1.out) == strip_millis(run3.out));
}

TEST_CASE("oracle cross check rows at small size") {
  auto res = run_cli({"bench", "--runs", "10", "--n", "6", "--spr", "1",
                      "--seed", "3", "--jobs", "2"});
  CHECK(res.code == 0);
  std::istringstream in(res.out);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line) && line[0] != '#') {
    // dual <= known optimum bound of one edit
    auto fields = line;
    int dual = -1, value = -1;
    std::sscanf(fields.c_str(), "%*llu,%*d,%*d,%d,%d", &value, &dual);
    CHECK(dual <= 1);
    CHECK(value >= dual);
  }
}
