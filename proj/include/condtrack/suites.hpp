#pragma once

#include <cstdint>
#include <string>

namespace condtrack::suites {

struct SuiteResult {
  int samples = 0;
  int violations = 0;
  std::string detail;
};

/// Two-sided mu comparison on random perturbation pairs with u, v <= 1/20:
/// (1 - 3.805u - v) mu(g,y) <= mu(f,x) <= (1 + 3.504u + v) mu(g,y).
SuiteResult run_theorem31_suite(std::uint64_t seed, int num_samples);

/// tan(kernel angle) = delta(f,x) to relative 1e-8, and
/// delta <= sqrt(D) mu + 1e-9 on normalized inputs.
SuiteResult run_lemma37_suite(std::uint64_t seed, int num_samples);

/// On certified samples (threshold 0.049): the Newton contraction
/// (1/2)^{2^p - 1} for p <= 4, beta0 <= 1.128 d_T(x, zeta), and
/// beta0 of the iterate < 1.23 a beta0.
SuiteResult run_alpha_suite(std::uint64_t seed, int num_samples);

/// Tracks seeded univariate cubics from the unit-roots start and audits the
/// per-step condition-length progress floors. num_samples counts targets.
SuiteResult run_tracker_audit_suite(std::uint64_t seed, int num_samples);

}  // namespace condtrack::suites
