#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <regex>
#include <string>

using Json = nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(LOVX_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), got);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string data(const std::string& name) { return std::string(LOVX_DATA_DIR) + "/" + name; }

std::string strip_timing(const std::string& report) {
  static const std::regex timing("\\s*\"(timestamp_ms|wall_ms)\":[^\n]*\n");
  return std::regex_replace(report, timing, "\n");
}

}  // namespace

TEST_CASE("oracle command") {
  RunResult r = run("oracle --problem maxcut --graph " + data("k3.el"));
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["result"]["optimum"] == 2.0);
  // A witness separates one vertex from at least one other.
  auto witness = j["result"]["witnesses"][0][0];
  CHECK(witness["pos"].size() >= 1);
  CHECK(witness["neg"].size() >= 1);

  RunResult mc = run("oracle --problem mincut --graph " + data("p3.el"));
  REQUIRE(mc.exit_code == 0);
  CHECK(Json::parse(mc.out)["result"]["optimum"] == 1.0);

  RunResult fr = run("oracle --problem frustration --graph " + data("neg_k3.el"));
  REQUIRE(fr.exit_code == 0);
  CHECK(Json::parse(fr.out)["result"]["frustration_index"] == 1.0);
}

TEST_CASE("solve command") {
  RunResult r = run("solve --problem frustration --graph " + data("neg_k3.el") +
                    " --algo ipsd-gen --seed 7 --multistart 4");
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["result"]["frustration_index"] == 1.0);

  RunResult mx = run("solve --problem maxcut --graph " + data("k3.el") +
                     " --algo ipsd --seed 3 --multistart 2 --verify-eigen");
  REQUIRE(mx.exit_code == 0);
  Json jm = Json::parse(mx.out);
  CHECK(jm["result"]["witness_ratio"] == 2.0);
  CHECK(jm["result"]["certificate"]["accepted"] == true);

  RunResult dk = run("solve --problem mincut --graph " + data("k3.el") + " --algo dinkelbach");
  REQUIRE(dk.exit_code == 0);
  CHECK(Json::parse(dk.out)["result"]["ratio"] == 2.0);

  RunResult rec = run("solve --algo recursive-frustration --graph " + data("neg_c4.el") +
                      " --seed 5");
  REQUIRE(rec.exit_code == 0);
  CHECK(Json::parse(rec.out)["result"]["frustrated_weight"] == 0.0);
}

TEST_CASE("eigen command") {
  RunResult r = run("eigen --pair cut --graph " + data("p3.el"));
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.out);
  auto evs = j["result"]["eigenvalues"];
  REQUIRE(evs.size() == 3);
  CHECK(evs[0]["lambda"] == 0.0);
  CHECK(evs[1]["lambda"] == 1.0);
  CHECK(evs[2]["lambda"] == 2.0);
}

TEST_CASE("eval command") {
  std::string table = "/tmp/lovx_cut_k3.json";
  {
    std::ofstream out(table);
    // cut function of the triangle
    out << R"({"n":3,"kind":"powerset","values":{"1":2,"2":2,"4":2,"3":2,"5":2,"6":2}})";
  }
  RunResult r = run("eval --setfn " + table + " --point 3,1,2");
  REQUIRE(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["result"]["value"] == 4.0);

  RunResult ri = run("eval --setfn " + table + " --point 3,1,2 --extension integral");
  CHECK(Json::parse(ri.out)["result"]["value"] == 4.0);

  RunResult rp = run("eval --problem maxcut --graph " + data("k3.el") + " --point 1,-1,0");
  Json jp = Json::parse(rp.out);
  CHECK(jp["result"]["F"] == 4.0);
  CHECK(jp["result"]["G"] == 2.0);
}

TEST_CASE("check command and negative control") {
  RunResult ok = run("check --trials 6 --seed 2");
  CHECK(ok.exit_code == 0);
  Json j = Json::parse(ok.out);
  CHECK(j["result"]["pass"] == true);

  // A corrupted table claiming submodularity fails with a witness.
  std::string bad = "/tmp/lovx_bad_table.json";
  {
    std::ofstream out(bad);
    out << R"({"n":3,"kind":"powerset",
               "values":{"1":2,"2":2,"4":2,"3":2,"5":2,"6":2,"7":9},
               "asserts":{"submodular":true}})";
  }
  RunResult fail = run("check --setfn " + bad);
  CHECK(fail.exit_code == 1);
  Json jf = Json::parse(fail.out);
  CHECK(jf["result"]["pass"] == false);
  std::string detail = jf["result"]["suites"][0]["detail"];
  CHECK(detail.find("witness") != std::string::npos);
}

TEST_CASE("reports are deterministic modulo the timing fields") {
  std::string args = "solve --problem maxcut --graph " + data("p4.el") +
                     " --algo ipsd --seed 11 --multistart 3";
  RunResult a = run(args);
  RunResult b = run(args);
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(strip_timing(a.out) == strip_timing(b.out));
  CHECK(a.out.find("\"seed\": 11") != std::string::npos);
}

TEST_CASE("error handling") {
  RunResult bad_flag = run("solve --no-such-flag");
  CHECK(bad_flag.exit_code != 0);
  RunResult bad_file = run("oracle --problem maxcut --graph /nonexistent.el");
  CHECK(bad_file.exit_code == 1);
  RunResult bad_problem = run("oracle --problem not-a-problem --graph " + data("k3.el"));
  CHECK(bad_problem.exit_code == 1);
}

TEST_CASE("thread cap does not change reports") {
  // The report must be identical across worker counts because enumeration
  // ranges merge in index order.
  std::string args = "oracle --problem maxcut --graph " + data("petersen.el");
  std::string cmd1 = "LOVX_THREADS=1 " + std::string(LOVX_CLI_PATH) + " " + args + " 2>/dev/null";
  std::string cmd4 = "LOVX_THREADS=4 " + std::string(LOVX_CLI_PATH) + " " + args + " 2>/dev/null";
  auto capture = [](const std::string& cmd) {
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    pclose(pipe);
    return out;
  };
  CHECK(strip_timing(capture(cmd1)) == strip_timing(capture(cmd4)));
}

TEST_CASE("tsv output and verbosity") {
  RunResult r = run("oracle --problem mincut --graph " + data("p3.el") + " --output tsv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("schema\t") != std::string::npos);

  RunResult gate = run("solve --problem chromatic --graph " + data("petersen.el") +
                       " --algo ipsd --max-iter 2");
  CHECK(gate.exit_code == 1);  // 100-dimensional solve needs --allow-dim
}

TEST_CASE("dimacs input") {
  RunResult r = run("oracle --problem maxcut --graph " + data("k3.dimacs") + " --format dimacs");
  REQUIRE(r.exit_code == 0);
  CHECK(Json::parse(r.out)["result"]["optimum"] == 2.0);
}
