#include <doctest.h>

#include "condtrack/suites.hpp"

using namespace condtrack;

TEST_CASE("theorem31 suite: clean at reduced scale") {
  const suites::SuiteResult r = suites::run_theorem31_suite(2026, 60);
  CHECK(r.samples == 60);
  CHECK(r.violations == 0);
}

TEST_CASE("lemma37 suite: clean at reduced scale") {
  const suites::SuiteResult r = suites::run_lemma37_suite(2026, 60);
  CHECK(r.samples == 60);
  CHECK(r.violations == 0);
}

TEST_CASE("alpha suite: clean at reduced scale") {
  const suites::SuiteResult r = suites::run_alpha_suite(2026, 25);
  CHECK(r.samples == 25);
  CHECK(r.violations == 0);
}

TEST_CASE("tracker audit suite: clean on one target") {
  const suites::SuiteResult r = suites::run_tracker_audit_suite(2026, 1);
  CHECK(r.samples == 3);
  CHECK(r.violations == 0);
}
