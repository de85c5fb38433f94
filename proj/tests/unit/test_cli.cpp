#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "doctest.h"

namespace {

struct Result {
  int status = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(OME_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  Result r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string device() { return std::string("--config ") + OME_CONFIG_DIR + "/device.conf"; }

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream l(line);
    std::string cell;
    while (std::getline(l, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("witness on the device configuration") {
  const Result r = run("witness " + device());
  REQUIRE(r.status == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][0] == "verdict");
  CHECK(rows[1][0] == "entangled");
  CHECK(rows[0][2] == "o_bm");
  const double o = std::stod(rows[1][2]);
  CHECK(o > 0.40);
  CHECK(o < 0.46);

  const Result j = run("witness " + device() + " --format json");
  REQUIRE(j.status == 0);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["result"]["verdict"] == "entangled");
  CHECK(doc["result"]["o_bm"].get<double>() == doctest::Approx(o).epsilon(1e-15));
}

TEST_CASE("quantum-gravity decay curve") {
  const Result r = run("decay " + device() + " --model qg --n-max 20");
  REQUIRE(r.status == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 21);
  CHECK(rows[0] == std::vector<std::string>{"model", "n", "deficit", "valid"});
  const double d1 = std::stod(rows[1][2]);
  CHECK(d1 > 0.0);
  for (int n = 1; n <= 20; ++n) {
    CHECK(rows[n][0] == "qg");
    CHECK(std::stoi(rows[n][1]) == n);
    CHECK(std::stod(rows[n][2]) == doctest::Approx(n * d1).epsilon(1e-12));
  }
}

TEST_CASE("identical runs give identical bytes") {
  for (const char* sub : {"correlations", "visibility", "witness", "feasibility", "decay"}) {
    const Result a = run(std::string(sub) + " " + device());
    const Result b = run(std::string(sub) + " " + device());
    CHECK(a.status == b.status);
    CHECK(!a.out.empty());
    CHECK(a.out == b.out);
  }
  const std::string sweep = std::string("sweep --config ") + OME_CONFIG_DIR + "/sweep.conf";
  const Result a = run(sweep);
  REQUIRE(a.status == 0);
  CHECK(csv(a.out).size() == 1 + 4 * 3);
  CHECK(a.out == run(sweep).out);
  CHECK(a.out == run(sweep + " --set sweep.workers=1").out);
}

TEST_CASE("oracle validation passes at small beta") {
  const Result r = run("validate " + device() + " --beta 2 --fock-cutoff 60");
  CHECK(r.status == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() > 5);
  CHECK(rows[0].back() == "pass");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    INFO(rows[i][0]);
    CHECK(rows[i].back() == "1");
  }
}

TEST_CASE("overrides and errors map to exit codes") {
  const Result o = run("correlations " + device() + " --set beta=50 --set dx=0");
  REQUIRE(o.status == 0);
  const auto rows = csv(o.out);
  REQUIRE(rows.size() == 2);
  CHECK(o.out.find("exact") != std::string::npos);

  CHECK(run("witness " + device() + " --set bogus=1").status == 1);
  CHECK(run("witness --config /nonexistent.conf").status == 1);
  CHECK(run("frobnicate " + device()).status == 1);
  CHECK(run("witness").status == 1);
  CHECK(run("decay " + device() + " --model csl").status == 1);
  // The 20-period QG curve leaves the first-order regime.
  CHECK(run("decay " + device() + " --model qg --n-max 20 --strict").status == 2);
  CHECK(run("feasibility " + device() + " --strict").status == 0);
  CHECK(run("feasibility " + device() + " --strict --set Np=1e3").status == 2);
}

TEST_CASE("output file") {
  const std::string path = "cli_test_output.json";
  std::remove(path.c_str());
  REQUIRE(run("feasibility " + device() + " --format json --output " + path).status == 0);
  FILE* f = std::fopen(path.c_str(), "r");
  REQUIRE(f != nullptr);
  std::string text;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), f)) > 0) text.append(buf.data(), n);
  std::fclose(f);
  std::remove(path.c_str());
  const auto doc = nlohmann::json::parse(text);
  CHECK(doc["result"]["g0_over_omega_m"].get<double>() == doctest::Approx(5e-3).epsilon(0.01));
}
