#include <doctest.h>

#include <cmath>
#include <random>

#include "condtrack/formats.hpp"
#include "condtrack/sampling.hpp"
#include "condtrack/tracker.hpp"
#include "test_helpers.hpp"

using namespace condtrack;
using nlohmann::json;

TEST_CASE("system files round-trip bit-exactly") {
  std::mt19937_64 rng(139);
  for (int rep = 0; rep < 5; ++rep) {
    const auto f = sampling::bw_gaussian_system(rng, {2, 3});
    const std::string text = system_to_json(f).dump();
    const auto back = system_from_json(json::parse(text));
    REQUIRE(back.degrees() == f.degrees());
    for (int i = 0; i < f.num_equations(); ++i) {
      REQUIRE(back.equation(i).size() == f.equation(i).size());
      for (size_t m = 0; m < f.equation(i).size(); ++m) {
        CHECK(back.equation(i)[m].exponents == f.equation(i)[m].exponents);
        CHECK(back.equation(i)[m].coeff == f.equation(i)[m].coeff);
      }
    }
    // Serializing again yields the identical byte stream.
    CHECK(system_to_json(back).dump() == text);
  }
}

TEST_CASE("system parsing rejects malformed input") {
  CHECK_THROWS_AS(system_from_json(json::parse(R"({"n": 2, "degrees": [2]})")),
                  ParseError);
  CHECK_THROWS_AS(
      system_from_json(json::parse(
          R"({"n":1,"degrees":[2],"equations":[[{"exponents":[1],"coeff_re":1,"coeff_im":0}]]})")),
      ParseError);
  CHECK_THROWS_AS(
      system_from_json(json::parse(
          R"({"n":1,"degrees":[2],"equations":[[{"exponents":[1,2],"coeff_re":1,"coeff_im":0}]]})")),
      ParseError);
}

TEST_CASE("start pair files round-trip") {
  const StartPair pair = unit_roots_start(1, {3});
  const json j = start_pair_to_json(pair);
  const StartPair back = start_pair_from_json(j);
  REQUIRE(back.zeros.size() == pair.zeros.size());
  for (size_t i = 0; i < pair.zeros.size(); ++i)
    CHECK((back.zeros[i].coords() - pair.zeros[i].coords()).norm() == 0.0);
}

TEST_CASE("tracking results serialize with schema-stable fields") {
  const StartPair start = unit_roots_start(1, {3});
  const auto f = normalize(start.system);
  const LinearHomotopy h(f, f);
  TrackerConfig config;
  const TrackingResult result = track(h, start.zeros[0], config);
  const json j = tracking_result_to_json(result);
  CHECK(j.at("k").get<int>() == 1);
  CHECK(j.at("subdivision").size() == 2);
  CHECK(j.at("steps").size() == 2);
  CHECK(j.at("steps")[0].at("trigger") == "START");
  CHECK(j.at("steps")[1].at("trigger") == "END");
  CHECK(j.at("final_certificate").at("certified").get<bool>());
  for (const char* key :
       {"t", "mu", "beta0", "alpha_bound", "trigger", "arc_increment",
        "phi_at_step", "x_re", "x_im"})
    CHECK(j.at("steps")[0].contains(key));
  // Round-trip equality of the serialized values.
  CHECK(json::parse(j.dump()) == j);
}

TEST_CASE("complex point parsing") {
  const CVec v = parse_complex_list("1, 0.5-2i, 3i, -i");
  REQUIRE(v.size() == 4);
  CHECK(v[0] == Complex(1.0, 0.0));
  CHECK(v[1] == Complex(0.5, -2.0));
  CHECK(v[2] == Complex(0.0, 3.0));
  CHECK(v[3] == Complex(0.0, -1.0));
  CHECK_THROWS_AS(parse_complex_list("1"), ParseError);
  CHECK_THROWS_AS(parse_complex_list("1,abc"), ParseError);
  const CVec e = parse_complex_list("1e-3+2e-4i,2");
  CHECK(e[0] == Complex(1e-3, 2e-4));
}

TEST_CASE("digest is stable and input-sensitive") {
  const std::string a = fnv1a64_hex("condtrack");
  CHECK(a == fnv1a64_hex("condtrack"));
  CHECK(a != fnv1a64_hex("condtrack "));
}
