// Runs the CLI binary and checks output and exit-code contracts.
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Run {
  int code = -1;
  std::string out;  // stdout followed by stderr
};

Run run(const std::string& args) {
  const std::string cmd = std::string(BELGAUGE_CLI_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const char* name) { return std::string(BELGAUGE_TEST_DATA) + "/" + name; }

std::string write_temp(const char* name, const std::string& text) {
  const std::string path = std::string("/tmp/belgauge_test_") + name;
  std::ofstream(path) << text;
  return path;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("analyze the Bell state") {
  const Run r = run("analyze --input " + data("bell.json") + " --settings 2 2");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"bracket_valid\": true") != std::string::npos);
  CHECK(r.out.find("\"tag\": \"eq28\"") != std::string::npos);
}

TEST_CASE("analyze a product state") {
  const Run r = run("analyze --input " + data("product.json"));
  CHECK(r.code == 0);
  CHECK(r.out.find("\"negativity\": 0.0") != std::string::npos);
}

TEST_CASE("input errors exit with 1") {
  const std::string bad =
      write_temp("bad.json", R"({"d1": 1, "d2": 2, "kind": "pure", "data": [[[1, 0], [0, "x"]]]})");
  Run r = run("analyze --input " + bad);
  CHECK(r.code == 1);
  CHECK(r.out.find("data[0][1]") != std::string::npos);

  r = run("analyze --input /nonexistent.json");
  CHECK(r.code == 1);
  r = run("coherent-scan --alpha 0.1 3");
  CHECK(r.code == 1);
  r = run("coherent-scan --alpha 0.1 3 1");
  CHECK(r.code == 1);
  r = run("selftest --tol nonsense=1");
  CHECK(r.code == 1);
  r = run("selftest --tol slack");
  CHECK(r.code == 1);
  r = run("frobnicate");
  CHECK(r.code == 1);
}

TEST_CASE("source-op") {
  Run r = run("source-op --input " + data("bell.json") + " --s 2");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"pass\": true") != std::string::npos);
  r = run("source-op --input " + data("random44.json") + " --s 6");
  CHECK(r.code == 1);
  CHECK(r.out.find("16384") != std::string::npos);
}

TEST_CASE("coherent-scan CSV") {
  const Run r = run("coherent-scan --alpha 0.1 3 30 --family 1");
  CHECK(r.code == 0);
  const auto lines = lines_of(r.out);
  REQUIRE(lines.size() == 31);
  CHECK(lines[0] ==
        "alpha,lambda_plus,lambda_minus,negativity,concurrence,bound_eq63,bound_numeric,chsh_lower");
  double prev_alpha = 0.0, prev_bound = 0.0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    double a, lp, lm, n, c, b, bn, cl;
    REQUIRE(std::sscanf(lines[i].c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf", &a, &lp, &lm, &n, &c, &b,
                        &bn, &cl) == 8);
    CHECK(a > prev_alpha);
    CHECK(b >= prev_bound);
    CHECK(std::abs(bn - b) <= 1e-8);
    prev_alpha = a;
    prev_bound = b;
  }
  CHECK(prev_bound < 3.0 + 1e-12);
}

TEST_CASE("selftest exit codes and determinism") {
  const Run a = run("selftest --seed 0");
  const Run b = run("selftest --seed 0");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("summary:") != std::string::npos);
  const Run strict = run("selftest --tol all=1e-20");
  CHECK(strict.code == 2);
  CHECK(strict.out.find("FAIL") != std::string::npos);
  const Run j = run("selftest --format json");
  CHECK(j.code == 0);
  CHECK(j.out.find("\"properties\"") != std::string::npos);
}
