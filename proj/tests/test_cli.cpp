#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <string>

#include <json.hpp>

#include "condtrack/formats.hpp"
#include "condtrack/homotopy.hpp"
#include "condtrack/sampling.hpp"

using namespace condtrack;
using nlohmann::json;

namespace {

std::string dir() { return std::string(CLI_TEST_DIR); }

int run(const std::string& args) {
  const std::string cmd = std::string(CONDTRACK_BIN) + " " + args +
                          " > " + dir() + "/cli_stdout.txt 2> " + dir() +
                          "/cli_stderr.txt";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string captured_stdout() { return read_file(dir() + "/cli_stdout.txt"); }

}  // namespace

TEST_CASE("solve: trivial homotopy exits 0 and writes a sane report") {
  const StartPair start = unit_roots_start(1, {3});
  const std::string target = dir() + "/target_trivial.json";
  save_system(target, start.system);
  const std::string out = dir() + "/report_trivial.json";
  CHECK(run("solve --target " + target + " --start unit-roots --epsilon 0.05" +
            " --out " + out + " --seed 9") == 0);

  const json report = json::parse(read_file(out));
  CHECK(report.at("schema") == "condtrack-run-report");
  CHECK(report.at("paths").size() == 3);
  for (const json& path : report.at("paths")) {
    CHECK(path.at("k").get<int>() == 1);
    CHECK(path.at("final_certificate").at("certified").get<bool>());
  }
  CHECK(report.at("config").at("seed").get<std::uint64_t>() == 9);
  // Reports re-parse to equal values.
  CHECK(json::parse(report.dump()) == report);
}

TEST_CASE("solve: epsilon outside (0, 1/20] is rejected at validation") {
  const StartPair start = unit_roots_start(1, {3});
  const std::string target = dir() + "/target_eps.json";
  save_system(target, start.system);
  CHECK(run("solve --target " + target + " --epsilon 0.2 --out " + dir() +
            "/never.json") == 2);
}

TEST_CASE("solve: unreadable target exits 2") {
  CHECK(run("solve --target " + dir() + "/missing.json --out " + dir() +
            "/never.json") == 2);
}

TEST_CASE("solve: a start pair file far from its zeros exits 3") {
  StartPair start = unit_roots_start(1, {3});
  const std::string target = dir() + "/target_badstart.json";
  save_system(target, start.system);
  // Replace the zeros with a far-away point; the eps^2/2 gate must refuse.
  json j = start_pair_to_json(start);
  j["zeros"] = json::array({json::array(
      {json::array({1.0, 0.0}), json::array({0.6, 0.0})})});
  write_file(dir() + "/badstart.json", j.dump());
  CHECK(run("solve --target " + target + " --start " + dir() +
            "/badstart.json --out " + dir() + "/never.json") == 3);
}

TEST_CASE("certify: exact zero exits 0, rank-deficient prints inf") {
  const StartPair start = canonical_start(1, {2});
  const std::string system = dir() + "/canonical.json";
  save_system(system, start.system);
  CHECK(run("certify --system " + system + " --point 1,0") == 0);
  CHECK(captured_stdout().find("certified   = yes") != std::string::npos);

  // (1, 0.1) on sqrt(2) z0 z1: alpha_bound = sqrt(2) * 1.01 * 0.1 / 0.99^2
  // = 0.14573..., above the 0.049 default threshold.
  CHECK(run("certify --system " + system + " --point 1,0.1") == 1);
  CHECK(captured_stdout().find("0.14573") != std::string::npos);
  CHECK(captured_stdout().find("certified   = no") != std::string::npos);

  // z1^2 has a rank-deficient Jacobian at e0.
  const std::string degenerate = dir() + "/degenerate.json";
  write_file(degenerate,
             R"({"n":1,"degrees":[2],"equations":[[{"exponents":[0,2],"coeff_re":1.0,"coeff_im":0.0}]]})");
  CHECK(run("certify --system " + degenerate + " --point 1,0") == 1);
  CHECK(captured_stdout().find("inf") != std::string::npos);
}

TEST_CASE("check: suites pass, unknown suite exits 2") {
  CHECK(run("check --suite lemma37 --samples 25 --seed 4") == 0);
  CHECK(captured_stdout().find("0 violations") != std::string::npos);
  CHECK(run("check --suite nonsense --samples 5 --seed 4") == 2);
}

TEST_CASE("solve: canonical start and corrector noise plumb through") {
  std::mt19937_64 rng(1357);
  const auto target_system =
      normalize(sampling::bw_gaussian_system(rng, {2, 2}));
  const std::string target = dir() + "/target_n2.json";
  save_system(target, target_system);
  const std::string out = dir() + "/report_n2.json";
  CHECK(run("solve --target " + target + " --start canonical" +
            " --epsilon 0.05 --out " + out + " --seed 2 --perturb 0.5") == 0);
  const json report = json::parse(read_file(out));
  CHECK(report.at("paths").size() == 1);
  CHECK(report.at("config").at("perturbation").get<double>() == 0.5);
  CHECK(report.at("paths")[0].at("final_certificate").at("certified").get<bool>());

  // Noise at or above the correction radius is rejected up front.
  CHECK(run("solve --target " + target + " --out " + out + " --perturb 1.0") ==
        2);
}

TEST_CASE("solve: full run on a random cubic target") {
  std::mt19937_64 rng(2468);
  const auto target_system =
      normalize(sampling::bw_gaussian_system(rng, {3}));
  const std::string target = dir() + "/target_cubic.json";
  save_system(target, target_system);
  const std::string out = dir() + "/report_cubic.json";
  CHECK(run("solve --target " + target + " --start unit-roots --epsilon 0.05" +
            " --out " + out + " --seed 1") == 0);
  const json report = json::parse(read_file(out));
  for (const json& path : report.at("paths")) {
    CHECK(path.at("final_certificate").at("certified").get<bool>());
    CHECK(path.at("k").get<int>() >= 1);
    CHECK(path.at("k").get<int>() <=
          1.1 * path.at("step_bound").get<double>());
  }
}
