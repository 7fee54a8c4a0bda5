#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "condtrack/homotopy.hpp"
#include "condtrack/newton_alpha.hpp"
#include "condtrack/types.hpp"

namespace condtrack {

struct TrackerConfig {
  double epsilon = 0.05;          // tolerance parameter, in (0, 1/20]
  double max_steps_factor = 4.0;  // safety multiplier on the step bound
  double quad_tol = 0.0;          // arc quadrature tolerance; 0 = per-step default
  double perturbation = 0.0;      // corrector noise as a fraction of the
                                  // admissible radius 4 eps^2 / (5 D^2 mu^2),
                                  // must stay below 1
  std::uint64_t seed = 0;         // drives injected noise only

  void validate() const;
};

enum class StepTrigger { Start, S1Arc, S2Phi, End };

const char* to_string(StepTrigger t);

struct StepRecord {
  double t;
  ProjectivePoint x;    // unit norm
  double mu;            // mu(f_t, x)
  double beta0;         // beta0(f_t, x)
  double alpha_bound;   // (D^{3/2}/2) mu beta0, must stay below eps^2/2
  StepTrigger trigger;  // which step-size condition fired
  double arc_increment; // projective arc length of (f_t) over the step
  double phi_at_step;   // phi_{t_prev, t}(x_prev)
};

struct TrackingResult {
  std::vector<StepRecord> steps;  // k+1 records, t increasing from a to b
  int k = 0;                      // main-loop iterations
  double condition_length_estimate = 0.0;
  double step_bound = 0.0;        // 1 + 0.65 D^{3/2} eps^-2 Lhat
  AlphaCertificate final_certificate;
  TrackerConfig config;
};

class StartNotCertifiedError : public Error {
 public:
  StartNotCertifiedError(const std::string& what, AlphaCertificate cert)
      : Error(what), certificate(cert) {}
  AlphaCertificate certificate;
};

class StepInvariantViolation : public Error {
 public:
  StepInvariantViolation(const std::string& what, StepRecord record)
      : Error(what), record(std::move(record)) {}
  StepRecord record;
};

class MaxStepsExceededError : public Error {
 public:
  MaxStepsExceededError(const std::string& what, int steps_taken,
                        double running_length)
      : Error(what), steps_taken(steps_taken), running_length(running_length) {}
  int steps_taken;
  double running_length;
};

/// The start gate: certificate at threshold eps^2/2, certified only under
/// the strict inequality (D^{3/2}/2) mu(f_a, x0) beta0(f_a, x0) < eps^2/2.
AlphaCertificate certify_start(const HomogeneousSystem& f_a,
                               const ProjectivePoint& x0, double epsilon);

struct StepSearch {
  double t_next;
  double gauge;  // the arc integral (s-search) or phi value (s'-search)
};

/// Finds s with the cumulative projective arc length over [t_i, s] inside
/// the band [4 eps^2, eps/5] / (sqrt(D) mu_i), targeting the band midpoint by
/// bisection on the monotone cumulative integral; returns the domain end
/// when the total remaining arc stays below the band.
StepSearch find_step_s(const HomotopyPath& h, double t_i, double mu_i,
                       double epsilon, double quad_tol, double step_hint = 0.0);

/// Finds s' with phi_{t_i, s'}(x_i) inside the band
/// [4 eps^2, eps/5] / (D^{3/2} mu_i), where phi is evaluated between the
/// normalized systems. The upper bound is enforced on a 64-point geometric
/// sample of [t_i, s'] and the crossing is located by bisection; returns the
/// domain end when phi never reaches the band.
StepSearch find_step_sprime(const HomotopyPath& h, double t_i,
                            const ProjectivePoint& x_i, double mu_i,
                            double epsilon);

/// The corrector: the projective Newton image of x_i under f_next, plus an
/// optional perturbation by exactly `noise_angle` in a random tangent
/// direction (robustness testing of the d_R tolerance of the correction
/// step).
ProjectivePoint corrector(const HomogeneousSystem& f_next,
                          const ProjectivePoint& x_i, double noise_angle = 0.0,
                          std::mt19937_64* rng = nullptr);

/// Runs the adaptive-step homotopy loop from x0 at the start of the path.
/// Each iteration takes t_{i+1} = min(s, s'), corrects with projective
/// Newton, renormalizes the system and the iterate, and asserts the step
/// invariants:
///   - alpha_bound(f_{t_{i+1}}, x_{i+1}) < eps^2/2 (induction hypothesis),
///   - mu(f_{t_{i+1}}, x_{i+1}) <= mu(f_{t_i}, x_i) / (1 - eps),
///   - (D^{3/2}/2) beta0(f_{t_{i+1}}, x_i) mu(f_{t_{i+1}}, x_i) <= 0.049.
/// Throws StartNotCertifiedError, StepInvariantViolation, or
/// MaxStepsExceededError (the latter signals a likely infinite condition
/// length).
TrackingResult track(const HomotopyPath& h, const ProjectivePoint& x0,
                     const TrackerConfig& config);

struct ProgressAuditEntry {
  int index;  // step index (the record at steps[index])
  StepTrigger trigger;
  double increment;  // condition-length increment over the step
  double floor;      // required minimum, including the quadrature slack
  bool ok;
  bool phi_upper_ok;  // (s2) upper bound holds on a 10x denser sample
};

struct ProgressAudit {
  std::vector<ProgressAuditEntry> entries;  // non-terminal steps only
  double min_increment_s1;
  double min_increment_s2;
  double sum_increments = 0.0;
  int violations = 0;
};

/// Re-derives the per-step condition-length increments of a completed run
/// and checks them against the progress floors xi eps / (5 D^{3/2}) for arc
/// steps and xi eps / (13 D^{3/2}) for phi steps (xi = 20 eps), with a
/// relative quadrature slack. Also re-checks the (s2) upper bound at 10x the
/// search density.
ProgressAudit progress_audit(const TrackingResult& result,
                             const HomotopyPath& h, double quad_slack = 0.1,
                             double tol = 1e-6);

}  // namespace condtrack
