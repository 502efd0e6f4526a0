#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#ifndef CHARP_CLI_PATH
#error "CHARP_CLI_PATH must point at the CLI binary"
#endif

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(CHARP_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  std::string out;
  std::array<char, 256> buf;
  while (fgets(buf.data(), buf.size(), f)) out += buf.data();
  int status = pclose(f);
  while (!out.empty() && out.back() == '\n') out.pop_back();
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

const std::string kIntro3 = "--inline \"p=3; X:base; E:hyperexp(2*X)\"";

}  // namespace

TEST_CASE("integrate prints the closed form") {
  RunResult r = run("integrate " + kIntro3 + " --expr E");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out == "(1+2*X^2)/X^3*E");
}

TEST_CASE("verify accepts the identity and rejects a wrong claim") {
  REQUIRE(run("verify " + kIntro3 + " --d \"(1-X^2)/X^3*E\" --equals E").exit_code == 0);
  RunResult bad = run("verify " + kIntro3 + " --d X --equals X");
  REQUIRE(bad.exit_code == 5);
  REQUIRE(bad.out.find("mismatch") != std::string::npos);
}

TEST_CASE("derive iterates the derivation") {
  RunResult r = run(
      "derive --inline \"p=3; X:base; Y,Y1:linear_block([[0,1],[X,0]])\" "
      "--expr Y --order 6");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out == "(1+X^3)*Y");
  REQUIRE(run("derive --inline \"p=3; X:base\" --expr X^2").out == "2*X");
}

TEST_CASE("tower specs load from files") {
  std::string path = "cli_test_tower.json";
  {
    std::ofstream f(path);
    f << R"({"p": 3, "generators": [{"name": "X", "kind": "base"},)"
      << R"({"name": "E", "kind": "hyperexp", "arg": "2*X"}]})";
  }
  RunResult r = run("integrate --tower " + path + " --expr E");
  std::remove(path.c_str());
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out == "(1+2*X^2)/X^3*E");
}

TEST_CASE("integration can extend the tower") {
  RunResult r = run("integrate --inline \"p=3; X:base\" --expr X^2 --format json");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.find("\"value\":\"X^3*zeta1\"") != std::string::npos);
  REQUIRE(r.out.find("\"dlog_of\":\"X\"") != std::string::npos);
  REQUIRE(r.out.find("\"verified\":true") != std::string::npos);
}

TEST_CASE("annihilate and reduce print operators") {
  REQUIRE(run("annihilate " + kIntro3 + " --expr E").out == "X^3+D^3");
  RunResult r = run("reduce --inline \"p=3; X:base\" --op \"D^2-X\" --format json");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.find("\"operator\":\"2+2*X^3+D^6\"") != std::string::npos);
}

TEST_CASE("solve reports solution classes") {
  RunResult r = run("solve --inline \"p=3; X:base\" --op \"D^3-D\" --format json");
  REQUIRE(r.exit_code == 0);
  for (const char* a : {"\"alpha\":\"0\"", "\"alpha\":\"1\"", "\"alpha\":\"2\""})
    REQUIRE(r.out.find(a) != std::string::npos);
  REQUIRE(r.out.find("\"verified\":false") == std::string::npos);
}

TEST_CASE("exit codes separate the failure modes") {
  // 2: syntax/spec problems
  REQUIRE(run("derive --inline \"p=3; X:base\" --expr 2X").exit_code == 2);
  REQUIRE(run("derive --inline \"p=4; X:base\" --expr X").exit_code == 2);
  REQUIRE(run("derive --inline \"p=3; X:base\"").exit_code == 2);  // missing --expr
  REQUIRE(run("derive --inline \"p=3; X:base\" --expr Q").exit_code == 2);
  // 3: annihilator bound exhausted (forced tiny bound)
  REQUIRE(run("annihilate --inline \"p=3; X:base; L:log(X); E:hyperexp(L)\" "
              "--expr E --jmax 1").exit_code == 3);
  // the environment override behaves like --jmax
  REQUIRE(std::system((std::string("CHARP_JMAX=1 ") + CHARP_CLI_PATH +
                       " annihilate --inline \"p=3; X:base; L:log(X); "
                       "E:hyperexp(L)\" --expr E >/dev/null 2>&1")
                          .c_str()) >> 8 == 3);
  // 4: unsupported requests
  REQUIRE(run("solve --inline \"p=3; X:base\" --op \"D^2-X\"").exit_code == 4);
  REQUIRE(run("solve --inline \"p=3; X:base\" --op \"D^3-X^3\" --roots fp")
              .exit_code == 4);
  // the gated pipeline succeeds when asked for
  REQUIRE(run("solve --inline \"p=3; X:base\" --op \"D^2-X\" --experimental")
              .exit_code == 0);
}
