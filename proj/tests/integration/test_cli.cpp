#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

// Drives the built binary end to end. The path comes from the build system
// through SPLITGAP_BIN.

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string binary() {
  const char* env = std::getenv("SPLITGAP_BIN");
  REQUIRE_MESSAGE(env != nullptr, "SPLITGAP_BIN must point at the splitgap binary");
  return env;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args, const std::string& stdin_data = "") {
  std::string cmd = binary() + " " + args;
  if (!stdin_data.empty()) {
    const fs::path tmp = fs::temp_directory_path() /
                         ("splitgap_cli_stdin_" + std::to_string(::getpid()) + ".jsonl");
    std::ofstream(tmp) << stdin_data;
    cmd += " < " + tmp.string();
  }
  cmd += " 2>/dev/null";
  std::array<char, 4096> buffer{};
  RunResult result;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::size_t n = std::fread(buffer.data(), 1, buffer.size(), pipe))
    result.out.append(buffer.data(), n);
  const int status = ::pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::vector<json> parse_lines(const std::string& out) {
  std::vector<json> lines;
  std::istringstream is(out);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    lines.push_back(json::parse(line));
  }
  return lines;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("splitgap_cli_" + std::to_string(::getpid()) + "_" +
            std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("ed at lambda=0 reports an exactly degenerate pair") {
  const RunResult r = run("ed --L 8 --lambda 0 --alpha 0.5 --coupling all-to-all");
  REQUIRE(r.exit_code == 0);
  const auto lines = parse_lines(r.out);
  REQUIRE(lines.size() == 1);
  CHECK(std::abs(lines[0]["result"]["delta"].get<double>()) < 1e-12);
  CHECK(lines[0]["cached"] == false);
}

TEST_CASE("emitted records re-dump byte-identically") {
  const RunResult r = run("toy --L 8 --lambda 1 --alpha 0.5 --choice sigma-x");
  REQUIRE(r.exit_code == 0);
  std::istringstream is(r.out);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    CHECK(json::parse(line).dump() == line);
  }
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("definitely-not-a-command").exit_code == 2);
  CHECK(run("ed --no-such-flag").exit_code == 2);
}

TEST_CASE("computation errors exit with 1") {
  // thermal path is capped at L = 12
  CHECK(run("ed --thermal --beta 2 --L 14 --lambda 0").exit_code == 1);
}

TEST_CASE("identical invocations hit the cache") {
  TempDir dir;
  const std::string base =
      "--cache-dir " + dir.path.string() + " ed --L 6 --lambda 0.3 --coupling power-law";
  const auto first = parse_lines(run(base).out);
  const auto second = parse_lines(run(base).out);
  REQUIRE(first.size() == 1);
  REQUIRE(second.size() == 1);
  CHECK(first[0]["cached"] == false);
  CHECK(second[0]["cached"] == true);
  CHECK(first[0]["result"].dump() == second[0]["result"].dump());

  // a changed tolerance is a different key
  const auto third = parse_lines(run(base + " --tol 1e-10").out);
  CHECK(third[0]["cached"] == false);
}

TEST_CASE("sweep emits one record per point and pipes into fit") {
  // L >= 8 keeps |delta| < 1 so that log(-log delta) is defined downstream
  const RunResult sweep = run(
      "sweep --axis L=8,12,16 --cmd toy --choice sigma-x --route secular --lambda 1 "
      "--alpha 0.5");
  REQUIRE(sweep.exit_code == 0);
  const auto lines = parse_lines(sweep.out);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0]["params"]["L"] == 8);
  CHECK(lines[2]["params"]["L"] == 16);

  const RunResult fitted = run("fit --model pure", sweep.out);
  REQUIRE(fitted.exit_code == 0);
  const auto report = parse_lines(fitted.out);
  REQUIRE(report.size() == 1);
  CHECK(report[0]["result"].contains("p"));
}

TEST_CASE("sweep respects the point cap") {
  CHECK(run("sweep --axis L=4,6,8,10 --axis lambda=0:1:0.1 --max-points 10 --cmd toy")
            .exit_code == 1);
}

TEST_CASE("ed csv table carries the documented columns") {
  TempDir dir;
  const fs::path csv = dir.path / "ed.csv";
  const RunResult r = run("--csv " + csv.string() +
                          " sweep --axis L=4,8 --cmd ed --lambda 0 --coupling all-to-all");
  REQUIRE(r.exit_code == 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "model,L,lambda,alpha,coupling,E_plus,E_minus,delta,err_bound");
  int rows = 0;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) ++rows;
  CHECK(rows == 2);
}

TEST_CASE("concurrent sweeps sharing a cache settle on one valid entry per point") {
  TempDir dir;
  const std::string cmd = "--cache-dir " + dir.path.string() +
                          " sweep --axis L=4,6,8 --cmd toy --choice sigma-x "
                          "--route secular --lambda 1 --jobs 2";
  auto fut1 = std::async(std::launch::async, [&] { return run(cmd); });
  auto fut2 = std::async(std::launch::async, [&] { return run(cmd); });
  const RunResult r1 = fut1.get();
  const RunResult r2 = fut2.get();
  REQUIRE(r1.exit_code == 0);
  REQUIRE(r2.exit_code == 0);
  // both emitted the same results, and the cache holds exactly one entry per point
  auto l1 = parse_lines(r1.out), l2 = parse_lines(r2.out);
  REQUIRE(l1.size() == l2.size());
  for (std::size_t i = 0; i < l1.size(); ++i)
    CHECK(l1[i]["result"].dump() == l2[i]["result"].dump());
  int entries = 0;
  for (const auto& entry : fs::directory_iterator(dir.path)) {
    ++entries;
    CHECK(entry.path().extension() == ".json");
  }
  CHECK(entries == 3);
  // a third run is fully cached
  for (const auto& line : parse_lines(run(cmd).out)) CHECK(line["cached"] == true);
}

TEST_CASE("SPLITGAP_CACHE environment variable configures the cache") {
  TempDir dir;
  const std::string cmd = "SPLITGAP_CACHE=" + dir.path.string() + " " + binary() +
                          " toy --L 6 --lambda 1 --route secular 2>/dev/null";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buffer{};
  std::string out;
  while (std::size_t n = std::fread(buffer.data(), 1, buffer.size(), pipe))
    out.append(buffer.data(), n);
  ::pclose(pipe);
  CHECK(parse_lines(out)[0]["cached"] == false);
  int entries = 0;
  for ([[maybe_unused]] const auto& entry : fs::directory_iterator(dir.path)) ++entries;
  CHECK(entries == 1);
}

TEST_CASE("verify subcommand runs the fast suites green") {
  CHECK(run("verify --suite kernel").exit_code == 0);
  CHECK(run("verify --suite model").exit_code == 0);
  CHECK(run("verify --suite toy-routes").exit_code == 0);
}

TEST_CASE("records carry the run metadata fields") {
  const auto lines = parse_lines(run("toy --L 6 --lambda 1 --route secular").out);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].contains("key"));
  CHECK(lines[0]["key"].get<std::string>().size() == 16);
  CHECK(lines[0].contains("timestamp"));
  CHECK(lines[0].contains("version"));
}

TEST_CASE("verify appendix-d suite passes at beta=50, nmax=10000") {
  CHECK(run("verify --suite appendix-d --beta 50 --nmax 10000").exit_code == 0);
}

TEST_CASE("rotor appendix-d verification through the CLI") {
  const RunResult r = run("rotor --L 4 --lambda 0.2 --appendix-d --beta 30 --nmax 2000");
  REQUIRE(r.exit_code == 0);
  const auto lines = parse_lines(r.out);
  CHECK(lines[0]["result"]["rel_error"].get<double>() < 0.005);
}
