#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <string>

namespace {

struct Result {
  int code;
  std::string out;
};

Result sh(const std::string& args) {
  std::string cmd = std::string(CUTFREE_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string tmp(const char* name) { return std::string(CUTFREE_TMP) + "/" + name; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("prove exit codes") {
    CHECK(sh("prove --logic ckid \"a => a\"").code == 0);
    CHECK(sh("prove --logic ck \"a => b\"").code == 1);
    CHECK(sh("prove --logic ck \"a => b => c\"").code == 3);
    CHECK(sh("prove --logic k \"a => b\"").code == 3);
    CHECK(sh("prove --logic nope \"a\"").code == 3);
    CHECK(sh("prove --logic ck --strategy dp \"a\"").code == 3);
    CHECK(sh("prove --logic ck --max-nodes 0 \"a\"").code == 3);
    CHECK(sh("prove --logic ckcem --strategy naive --max-nodes 20 \"" "(a => ((a => d) | (b => d))) | (b => ((a => d) | (b => d)))" "\"").code == 2);
    CHECK(sh("").code == 3);
    CHECK(sh("--help").code == 0);
  }

  TEST_CASE("prove output formats") {
    auto j = nlohmann::json::parse(sh("prove --logic ckid --output json \"a => a\"").out);
    CHECK(j["verdict"] == "Provable");
    CHECK(j["derivation"]["rule"] == "CKIDg");
    CHECK_FALSE(j["stats"].contains("elapsed_us"));
    auto t = nlohmann::json::parse(sh("prove --logic ckid --output json --timing \"a => a\"").out);
    CHECK(t["stats"].contains("elapsed_us"));
    std::string tex = sh("prove --logic ckid --output latex \"a => a\"").out;
    CHECK(tex.find("\\begin{prooftree}") != std::string::npos);
    CHECK(tex.find("\\end{prooftree}") != std::string::npos);
    std::string text = sh("prove --logic ckmp \"~(a => b), ~a, b\"").out;
    CHECK(text.rfind("Provable", 0) == 0);
    CHECK(text.find("MPg") != std::string::npos);
  }

  TEST_CASE("identical runs give identical JSON") {
    const char* args = "prove --logic ckmpcem --output json \"~((a => b) & a & ~b), c => ~(c => a)\"";
    CHECK(sh(args).out == sh(args).out);
    CHECK(sh("generate --logic ckmpid --seed 5 --count 4 --output json").out ==
          sh("generate --logic ckmpid --seed 5 --count 4 --output json").out);
  }

  TEST_CASE("check round trip") {
    std::string proof = tmp("cli_id_proof.json");
    REQUIRE(sh("prove --logic ckid --proof " + proof + " \"a => a\"").code == 0);
    CHECK(sh("check --logic ckid " + proof).code == 0);
    CHECK(sh("check --logic ck " + proof).code == 1);
    auto report = nlohmann::json::parse(sh("check --logic ck --output json " + proof).out);
    CHECK(report["ok"] == false);

    std::string broken = tmp("cli_broken.json");
    std::ifstream in(proof);
    std::string text((std::istreambuf_iterator<char>(in)), {});
    std::ofstream(broken) << text.substr(0, text.size() / 2);
    CHECK(sh("check --logic ckid " + broken).code == 3);
    CHECK(sh("check --logic ckid " + tmp("does_not_exist.json")).code == 3);
  }

  TEST_CASE("countermodel") {
    auto r = sh("countermodel --logic ck \"(a => b) -> ((a & c) => b)\" --max-worlds 3");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["worlds"].get<int>() <= 3);
    auto none = sh("countermodel --logic ckid \"a => a\"");
    CHECK(none.code == 1);
    CHECK(none.out.find("no countermodel up to 3 worlds") != std::string::npos);
    CHECK(sh("countermodel --logic k \"a => b\"").code == 3);
  }

  TEST_CASE("bench") {
    auto r = sh("bench --logic ckcem --suite random --count 100 --seed 7");
    CHECK(r.code == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 101);
    CHECK(r.out.rfind("formula,logic,strategy,verdict,nodes,depth,microseconds\n", 0) == 0);
    auto strip = [](const std::string& csv) {
      std::string out;
      std::size_t pos = 0;
      while (pos < csv.size()) {
        std::size_t end = csv.find('\n', pos);
        std::string line = csv.substr(pos, end - pos);
        out += line.substr(0, line.rfind(',')) + "\n";
        pos = end + 1;
      }
      return out;
    };
    auto again = sh("bench --logic ckcem --suite random --count 100 --seed 7 --threads 3");
    CHECK(strip(r.out) == strip(again.out));
    auto empty = sh("bench --logic ck --suite corpus --count 0");
    CHECK(empty.out == "formula,logic,strategy,verdict,nodes,depth,microseconds\n");
    CHECK(sh("bench --suite nowhere").code == 3);
  }
}
