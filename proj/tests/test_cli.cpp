#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "doctest.h"
#include "edgestat/report.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(EDGESTAT_CLI_PATH) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  Run r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

}  // namespace

TEST_CASE("mean and variance") {
  const Run m = run("mean --ensemble gue --f gauss:1,0");
  REQUIRE(m.code == 0);
  const auto rows = edgestat::parse_csv(m.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][0] == "ensemble");
  CHECK(std::abs(std::stod(rows[1][2]) - 0.18422065168803854818) < 1e-7);
  const Run z = run("variance --ensemble goe --f zero");
  REQUIRE(z.code == 0);
  CHECK(std::stod(edgestat::parse_csv(z.out)[1][2]) == 0.0);
  const Run j = run("mean --ensemble gse --f sech2:1 --format json");
  REQUIRE(j.code == 0);
  CHECK(j.out.find("\"meta\"") != std::string::npos);
}

TEST_CASE("argument errors exit with 2") {
  const Run a = run("mean --ensemble lse --alpha 0 --f gauss:1,0");
  CHECK(a.code == 2);
  CHECK(a.out.find("alpha must be > 0 for LSE") != std::string::npos);
  CHECK(run("mean --ensemble xyz").code == 2);
  CHECK(run("mean --f cubic:1").code == 2);
  CHECK(run("compare --ensemble loe --N 11 --samples 200").code == 2);
  CHECK(run("nosuchcommand").code == 2);
}

TEST_CASE("numerical failures exit with 3") {
  const Run r = run("bw-scan --lambda 1000 --gammas 4,6");
  CHECK(r.code == 3);
  CHECK(r.out.find("1 + f(-x) <= 0") != std::string::npos);
}

TEST_CASE("sample export is reproducible") {
  const Run a = run("sample-export --ensemble lue --alpha 1 --N 6 --samples 4 --seed 17");
  const Run b = run("sample-export --ensemble lue --alpha 1 --N 6 --samples 4 --seed 17");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto rows = edgestat::parse_csv(a.out);
  CHECK(rows.size() == 25);
  CHECK(run("sample-export --ensemble lue --alpha 1 --N 6 --samples 4 --seed 18").out != a.out);
}

TEST_CASE("bw-scan at lambda 0") {
  const Run r = run("bw-scan --lambda 0 --gammas 4,6");
  REQUIRE(r.code == 0);
  const auto rows = edgestat::parse_csv(r.out);
  REQUIRE(rows.size() > 2);
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i][0] == "scan") CHECK(std::stod(rows[i][2]) == 0.0);
}

TEST_CASE("compare small run") {
  const Run r = run("compare --ensemble gue --f gauss:1,0 --N 50 --samples 2000 --seed 5");
  REQUIRE(r.code == 0);
  const auto rows = edgestat::parse_csv(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[1][0] == "asymptotic");
  CHECK(rows[2][0] == "monte_carlo");
  CHECK(rows[3][0] == "fredholm");
}
