// Copyright 2026 the ratiocs authors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end tests driving the installed binary (path injected via
// RATIOCS_BIN at compile time).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / "ratiocs_cli_test";

int run(const std::string& args) {
  const std::string cmd =
      std::string(RATIOCS_BIN) + " " + args + " > " +
      (kWork / "stdout.txt").string() + " 2> " + (kWork / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string captured_stdout() {
  std::ifstream f(kWork / "stdout.txt");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

struct Fixture {
  Fixture() {
    fs::remove_all(kWork);
    fs::create_directories(kWork);
  }
};

}  // namespace

TEST_CASE_FIXTURE(Fixture, "version exits zero") {
  CHECK(run("version") == 0);
  CHECK(captured_stdout().find("ratiocs") != std::string::npos);
}

TEST_CASE_FIXTURE(Fixture, "unknown flags and missing subcommands exit 2") {
  CHECK(run("") == 2);
  CHECK(run("solve") == 2);                      // missing instance
  CHECK(run("version --bogus-flag") == 2);
  CHECK(run("certify --instance x") == 2);       // missing condition
}

TEST_CASE_FIXTURE(Fixture, "gen then solve round trip") {
  const std::string inst = (kWork / "inst").string();
  REQUIRE(run("gen --out " + inst + " --m 20 --n 60 --s 4 --seed 9") == 0);
  REQUIRE(run("solve " + inst + " --method l1 --out " +
              (kWork / "res.json").string()) == 0);
  const std::string out = captured_stdout();
  CHECK(out.find("feasibility=") != std::string::npos);
  const auto j = nlohmann::json::parse(slurp(kWork / "res.json"));
  CHECK(j.contains("x"));
  CHECK(j.contains("termination"));
}

TEST_CASE_FIXTURE(Fixture, "unknown solver name exits 2") {
  const std::string inst = (kWork / "inst2").string();
  REQUIRE(run("gen --out " + inst + " --m 10 --n 30 --s 2 --seed 1") == 0);
  CHECK(run("solve " + inst + " --method mystery") == 2);
}

TEST_CASE_FIXTURE(Fixture, "support selection result carries winning_index") {
  const std::string inst = (kWork / "inst3").string();
  REQUIRE(run("gen --out " + inst + " --m 20 --n 60 --s 3 --seed 4") == 0);
  REQUIRE(run("solve " + inst + " --method l1l2+ss --s 3 --out " +
              (kWork / "ss.json").string()) == 0);
  const auto j = nlohmann::json::parse(slurp(kWork / "ss.json"));
  CHECK(j.contains("winning_index"));
  CHECK(j["winning_index"].get<int>() >= 0);
}

TEST_CASE_FIXTURE(Fixture, "certify nsp exact on a small instance") {
  const std::string inst = (kWork / "inst4").string();
  REQUIRE(run("gen --out " + inst + " --m 3 --n 4 --s 1 --seed 2") == 0);
  REQUIRE(run("certify --instance " + inst +
              " --condition nsp --exact --s 1 --c 1 --out " +
              (kWork / "nsp.json").string()) == 0);
  CHECK(captured_stdout().find("verdict=") != std::string::npos);
  const auto j = nlohmann::json::parse(slurp(kWork / "nsp.json"));
  CHECK(j.contains("verdict"));
  CHECK(j.contains("quantities"));
}

TEST_CASE_FIXTURE(Fixture, "certify width prints a holds verdict") {
  REQUIRE(run("certify --condition width --n 100 --samples 4000 --seed 3") ==
          0);
  CHECK(captured_stdout().find("verdict=holds") != std::string::npos);
}

TEST_CASE_FIXTURE(Fixture, "oracle finds the sparsest solution") {
  const std::string inst = (kWork / "inst5").string();
  REQUIRE(run("gen --out " + inst + " --m 5 --n 8 --s 2 --seed 6") == 0);
  REQUIRE(run("oracle --instance " + inst + " --mode sparsest --out " +
              (kWork / "oracle.json").string()) == 0);
  const auto j = nlohmann::json::parse(slurp(kWork / "oracle.json"));
  CHECK(j["sparsity"].get<int>() <= 2);
}

TEST_CASE_FIXTURE(Fixture, "experiment runs are deterministic across parallelism") {
  nlohmann::json spec{{"kind", "recovery_rate"},
                      {"m", 16},
                      {"n", 32},
                      {"s_list", {3}},
                      {"trials", 3},
                      {"replications", 2},
                      {"methods", {"l1", "omp"}},
                      {"seed", 19},
                      {"record_timing", false}};
  std::ofstream(kWork / "spec.json") << spec.dump();
  const std::string spec_path = (kWork / "spec.json").string();
  REQUIRE(run("experiment --spec " + spec_path + " --out " +
              (kWork / "out1").string() + " --parallelism 1") == 0);
  REQUIRE(run("experiment --spec " + spec_path + " --out " +
              (kWork / "out2").string() + " --parallelism 2") == 0);
  CHECK(slurp(kWork / "out1" / "records.csv") ==
        slurp(kWork / "out2" / "records.csv"));
  CHECK(slurp(kWork / "out1" / "summary.json") ==
        slurp(kWork / "out2" / "summary.json"));
  const std::string csv = slurp(kWork / "out1" / "records.csv");
  CHECK(csv.rfind("method,s,replication,trial,recovered,rel_error,wall_ms,"
                  "extra_json\n", 0) == 0);
  // header + 3 trials x 2 reps x 2 methods rows
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);
}

TEST_CASE_FIXTURE(Fixture, "noisy gen feeds the constrained solver") {
  const std::string inst = (kWork / "inst6").string();
  REQUIRE(run("gen --out " + inst +
              " --m 30 --n 90 --s 3 --seed 8 --epsilon 0.01") == 0);
  CHECK(run("solve " + inst + " --method l1l2") == 0);
}
