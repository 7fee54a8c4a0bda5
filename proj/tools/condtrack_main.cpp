#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "condtrack/formats.hpp"
#include "condtrack/homotopy.hpp"
#include "condtrack/invariants.hpp"
#include "condtrack/newton_alpha.hpp"
#include "condtrack/suites.hpp"
#include "condtrack/tracker.hpp"

namespace {

using condtrack::Complex;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;       // completed, but not certified / violations
constexpr int kExitParse = 2;        // bad arguments or unreadable input
constexpr int kExitStartCert = 3;    // start pair fails the eps^2/2 test
constexpr int kExitInvariant = 4;    // a step invariant was violated
constexpr int kExitMaxSteps = 5;     // step budget exhausted

int run_solve(const std::string& target_path, const std::string& start_mode,
              double epsilon, const std::string& out_path, std::uint64_t seed,
              double perturb) {
  if (!(epsilon > 0.0) || epsilon > 1.0 / 20.0) {
    std::cerr << "solve: epsilon must lie in (0, 1/20]\n";
    return kExitParse;
  }
  const auto t_begin = std::chrono::steady_clock::now();

  const std::string target_bytes = condtrack::read_file(target_path);
  const condtrack::HomogeneousSystem target = condtrack::normalize(
      condtrack::system_from_json(json::parse(target_bytes)));

  condtrack::StartPair start = [&]() {
    if (start_mode == "canonical")
      return condtrack::canonical_start(target.num_equations(),
                                        target.degrees());
    if (start_mode == "unit-roots")
      return condtrack::unit_roots_start(target.num_equations(),
                                         target.degrees());
    return condtrack::load_start_pair(start_mode);
  }();
  start.system = condtrack::normalize(start.system);
  if (start.system.degrees() != target.degrees())
    throw condtrack::ParseError("start and target systems do not match");

  const std::string start_digest =
      start_mode == "canonical" || start_mode == "unit-roots"
          ? start_mode
          : condtrack::fnv1a64_hex(condtrack::read_file(start_mode));

  const condtrack::LinearHomotopy h(start.system, target);
  condtrack::TrackerConfig config;
  config.epsilon = epsilon;
  config.seed = seed;
  config.perturbation = perturb;

  json paths = json::array();
  bool all_certified = true;
  int root_index = 0;
  for (const condtrack::ProjectivePoint& zero : start.zeros) {
    condtrack::TrackerConfig path_config = config;
    path_config.seed = seed + static_cast<std::uint64_t>(root_index);
    const condtrack::TrackingResult result = condtrack::track(h, zero, path_config);
    all_certified = all_certified && result.final_certificate.certified;
    json entry = condtrack::tracking_result_to_json(result);
    entry["root_index"] = root_index;
    paths.push_back(std::move(entry));
    ++root_index;
  }

  const auto t_end = std::chrono::steady_clock::now();
  json report{
      {"schema", "condtrack-run-report"},
      {"version", 1},
      {"input",
       {{"target", target_path},
        {"target_digest", condtrack::fnv1a64_hex(target_bytes)},
        {"start_mode", start_mode},
        {"start_digest", start_digest}}},
      {"config",
       {{"epsilon", epsilon},
        {"quad_tol", config.quad_tol},
        {"perturbation", perturb},
        {"max_steps_factor", config.max_steps_factor},
        {"length_tol", 1e-6},
        {"seed", seed}}},
      {"paths", std::move(paths)},
      {"timing_ms",
       std::chrono::duration_cast<std::chrono::milliseconds>(t_end - t_begin)
           .count()}};
  condtrack::write_file(out_path, report.dump(2) + "\n");
  std::cout << (all_certified ? "all paths certified"
                              : "some path ended uncertified")
            << "; report written to " << out_path << "\n";
  return all_certified ? kExitOk : kExitFailed;
}

int run_certify(const std::string& system_path, const std::string& point_text,
                double threshold) {
  const condtrack::HomogeneousSystem f =
      condtrack::load_system(system_path);
  const condtrack::ProjectivePoint x(condtrack::parse_complex_list(point_text));
  const condtrack::AlphaCertificate cert = condtrack::certify(f, x, threshold);
  const double m = condtrack::mu(f, x);
  std::cout << "mu          = ";
  if (std::isfinite(m))
    std::cout << m << "\n";
  else
    std::cout << "inf\n";
  if (std::isfinite(m)) {
    std::cout << "beta0       = " << condtrack::beta0(f, x) << "\n";
    std::cout << "alpha_bound = " << cert.alpha_bound << "\n";
  } else {
    std::cout << "beta0       = inf\nalpha_bound = inf\n";
  }
  std::cout << "threshold   = " << cert.threshold_used << "\n";
  std::cout << "certified   = " << (cert.certified ? "yes" : "no") << "\n";
  if (cert.certified)
    std::cout << "zero within d_T <= " << cert.zero_radius_tan << "\n";
  return cert.certified ? kExitOk : kExitFailed;
}

int run_check(const std::string& suite, std::uint64_t seed, int samples) {
  condtrack::suites::SuiteResult result;
  if (suite == "theorem31")
    result = condtrack::suites::run_theorem31_suite(seed, samples);
  else if (suite == "lemma37")
    result = condtrack::suites::run_lemma37_suite(seed, samples);
  else if (suite == "alpha")
    result = condtrack::suites::run_alpha_suite(seed, samples);
  else if (suite == "tracker-audit")
    result = condtrack::suites::run_tracker_audit_suite(seed, samples);
  else {
    std::cerr << "unknown suite: " << suite
              << " (expected theorem31|lemma37|alpha|tracker-audit)\n";
    return kExitParse;
  }
  std::cout << result.detail << "\n";
  return result.violations == 0 ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"certified homotopy continuation for homogeneous polynomial systems"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "track all start zeros to a target system");
  std::string target_path, out_path, start_mode = "unit-roots";
  double epsilon = 0.05, perturb = 0.0;
  std::uint64_t seed = 0;
  solve->add_option("--target", target_path, "target system file")->required();
  solve->add_option("--start", start_mode,
                    "canonical | unit-roots | start-pair file");
  solve->add_option("--epsilon", epsilon, "tolerance parameter in (0, 1/20]");
  solve->add_option("--out", out_path, "report output file")->required();
  solve->add_option("--seed", seed, "seed for randomized pieces");
  solve->add_option("--perturb", perturb,
                    "corrector noise as a fraction of the admissible radius");

  auto* certify = app.add_subcommand("certify", "alpha-test a point against a system");
  std::string system_path, point_text;
  double threshold = condtrack::kApproxZeroThreshold;
  certify->add_option("--system", system_path, "system file")->required();
  certify->add_option("--point", point_text, "comma-separated complex coords")
      ->required();
  certify->add_option("--threshold", threshold, "alpha threshold (default 0.049)");

  auto* check = app.add_subcommand("check", "run a property suite");
  std::string suite;
  int samples = 100;
  std::uint64_t check_seed = 12345;
  check->add_option("--suite", suite, "theorem31|lemma37|alpha|tracker-audit")
      ->required();
  check->add_option("--samples", samples, "sample count");
  check->add_option("--seed", check_seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (solve->parsed())
      return run_solve(target_path, start_mode, epsilon, out_path, seed,
                       perturb);
    if (certify->parsed())
      return run_certify(system_path, point_text, threshold);
    return run_check(suite, check_seed, samples);
  } catch (const condtrack::StartNotCertifiedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitStartCert;
  } catch (const condtrack::StepInvariantViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const condtrack::MaxStepsExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMaxSteps;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const condtrack::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
}
