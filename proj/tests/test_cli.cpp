#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd =
      std::string(NATQUANT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) {
    r.out.append(buf.data(), got);
  }
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("solve emits exact fractions") {
  const auto r = run_cli("solve --dist distA --n 2 --format json");
  REQUIRE(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["results"][0]["vn"] == "17/28");
  CHECK(doc["results"][0]["optima"][0]["boundaries"] ==
        nlohmann::json::array({1, 4}));
  CHECK(doc["results"][0]["optima"][0]["centroids"] ==
        nlohmann::json::array({"13/7", "5"}));
}

TEST_CASE("one mean reports the global mean and variance") {
  const auto r = run_cli("solve --dist distA --n 1 --format json");
  REQUIRE(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["results"][0]["vn"] == "27/16");
  CHECK(doc["results"][0]["optima"][0]["centroids"] ==
        nlohmann::json::array({"9/4"}));
}

TEST_CASE("json output is byte-for-byte deterministic") {
  const auto a = run_cli("solve --dist distB --n 6 --format json");
  const auto b = run_cli("solve --dist distB --n 6 --format json");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("table output uses interval notation") {
  const auto r = run_cli("solve --dist distA --n 2");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("V_n = 17/28") != std::string::npos);
  CHECK(r.out.find("[1,3] [4,∞)") != std::string::npos);
  CHECK(r.out.find("13/7 5") != std::string::npos);
}

TEST_CASE("verify-paper is self-contained and green") {
  const auto r = run_cli("verify-paper --sweep-to 12");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("PASS  distA n=2 V_n=17/28") != std::string::npos);
  CHECK(r.out.find("PASS  distC n=5 V_n=29/624") != std::string::npos);
  CHECK(r.out.find("closed-form sweep") != std::string::npos);
}

TEST_CASE("check-conjecture reports the counterexample") {
  const auto r = run_cli("check-conjecture --dist distC --n-from 5 --n-to 5");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("holds=false") != std::string::npos);
  CHECK(r.out.find("missing: 2") != std::string::npos);
}

TEST_CASE("dimension emits decimal annotations only") {
  const auto r = run_cli("dimension --dist distA --n-to 16 --digits 4");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("d_n=0.5485") != std::string::npos);
}

TEST_CASE("usage and solver failures map to distinct exit codes") {
  CHECK(run_cli("no-such-command").exit_code == 2);
  CHECK(run_cli("solve --dist distA").exit_code == 2);  // missing --n
  CHECK(run_cli("solve --dist nope.json --n 2").exit_code == 2);
  const std::string finite = R"('{"head":["1/2","1/2"]}')";
  CHECK(run_cli("solve --dist " + finite + " --n 5").exit_code == 3);
  CHECK(run_cli("solve --dist " + finite + " --n 2").exit_code == 0);
}
