#include "condtrack/suites.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "condtrack/invariants.hpp"
#include "condtrack/newton_alpha.hpp"
#include "condtrack/projgeom.hpp"
#include "condtrack/sampling.hpp"
#include "condtrack/tracker.hpp"

namespace condtrack::suites {

namespace {

std::vector<int> random_degrees(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> deg(2, 4);
  std::vector<int> degrees(n);
  for (int& d : degrees) d = deg(rng);
  return degrees;
}

struct NormalizedSample {
  HomogeneousSystem f;
  ProjectivePoint x;
  double mu_fx;
};

// Draws a normalized BW-Gaussian system (n <= 3, d_i in {2..4}) and a unit
// point with finite mu.
NormalizedSample draw_sample(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick_n(1, 3);
  while (true) {
    const int n = pick_n(rng);
    HomogeneousSystem f =
        normalize(sampling::bw_gaussian_system(rng, random_degrees(rng, n)));
    ProjectivePoint x = sampling::random_unit_point(rng, n + 1);
    const double m = mu(f, x);
    if (std::isfinite(m)) return NormalizedSample{std::move(f), std::move(x), m};
  }
}

}  // namespace

SuiteResult run_theorem31_suite(std::uint64_t seed, int num_samples) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> gauge_target(0.0, 1.0 / 20.0);
  SuiteResult result;
  for (int s = 0; s < num_samples; ++s) {
    NormalizedSample sample = draw_sample(rng);
    const double D = sample.f.max_degree();

    const double u_target = gauge_target(rng);
    const double angle =
        2.0 * u_target / (std::pow(D, 1.5) * sample.mu_fx);
    const ProjectivePoint y = sampling::perturb_within(rng, sample.x, angle);

    // Perturb the system, then shrink until v lands at or below its target.
    const double v_target = gauge_target(rng);
    HomogeneousSystem noise =
        sampling::bw_gaussian_system(rng, sample.f.degrees());
    double rho = v_target / (std::sqrt(D) * sample.mu_fx *
                             std::max(bw_norm(noise), 1e-12));
    HomogeneousSystem g = sample.f;
    for (int attempt = 0; attempt < 8; ++attempt) {
      g = linear_combination(Complex(1.0, 0.0), sample.f, Complex(rho, 0.0),
                             noise);
      const ComparisonGauge uv = gauges(sample.f, g, sample.x, y);
      if (uv.v <= 1.0 / 20.0) break;
      rho *= 0.9 * (1.0 / 20.0) / uv.v;
    }

    ++result.samples;
    try {
      if (!check_sandwich(sample.f, g, sample.x, y).ok) ++result.violations;
    } catch (const Error&) {
      ++result.violations;
    }
  }
  std::ostringstream os;
  os << "theorem31: " << result.violations << " violations in "
     << result.samples << " samples";
  result.detail = os.str();
  return result;
}

SuiteResult run_lemma37_suite(std::uint64_t seed, int num_samples) {
  std::mt19937_64 rng(seed);
  SuiteResult result;
  while (result.samples < num_samples) {
    NormalizedSample sample = draw_sample(rng);
    const double dl = delta(sample.f, sample.x);
    if (dl < 1e-6) continue;  // nondegenerate samples only
    ++result.samples;
    const double tan_theta = std::tan(kernel_angle(sample.f, sample.x));
    if (std::abs(tan_theta - dl) > 1e-8 * dl) ++result.violations;
    const double D = sample.f.max_degree();
    if (dl > std::sqrt(D) * sample.mu_fx + 1e-9) ++result.violations;
  }
  std::ostringstream os;
  os << "lemma37: " << result.violations << " violations in " << result.samples
     << " samples";
  result.detail = os.str();
  return result;
}

SuiteResult run_alpha_suite(std::uint64_t seed, int num_samples) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> alpha_target(0.002, 0.045);
  SuiteResult result;
  while (result.samples < num_samples) {
    NormalizedSample sample = draw_sample(rng);
    const double d32 = std::pow(double(sample.f.max_degree()), 1.5);

    // Walk to a zero, then back off to a point certified at 0.049.
    ProjectivePoint zeta = sample.x;
    try {
      zeta = refine_to_zero(sample.f, sample.x, 60);
    } catch (const Error&) {
      continue;
    }
    const double mu_zeta = mu(sample.f, zeta);
    if (!std::isfinite(mu_zeta)) continue;
    double radius =
        std::max(2.0 * alpha_target(rng) / (d32 * mu_zeta), 1e-6);
    ProjectivePoint x = zeta;
    AlphaCertificate cert;
    bool found = false;
    for (int attempt = 0; attempt < 8; ++attempt) {
      x = sampling::perturb_within(rng, zeta, radius);
      cert = certify(sample.f, x, kApproxZeroThreshold);
      if (cert.certified && beta0(sample.f, x) > 1e-7) {
        found = true;
        break;
      }
      radius *= 0.5;
    }
    if (!found) continue;
    ++result.samples;

    try {
      const ProjectivePoint zero = refine_to_zero(sample.f, x, 60);
      // Doubly exponential contraction of the first four Newton iterates.
      const double d0 = d_tan(zero, x);
      ProjectivePoint xp = x;
      for (int p = 1; p <= 4; ++p) {
        xp = newton_step(sample.f, xp);
        const double bound =
            std::pow(0.5, std::pow(2.0, p) - 1.0) * d0 * (1.0 + 1e-6);
        if (d_tan(zero, xp) > bound) {
          ++result.violations;
          break;
        }
      }
      if (!beta_dist_check(sample.f, x).ok) ++result.violations;
      if (!iterate_beta_check(sample.f, x).ok) ++result.violations;
    } catch (const Error&) {
      ++result.violations;
    }
  }
  std::ostringstream os;
  os << "alpha: " << result.violations << " violations in " << result.samples
     << " samples";
  result.detail = os.str();
  return result;
}

SuiteResult run_tracker_audit_suite(std::uint64_t seed, int num_samples) {
  SuiteResult result;
  const StartPair start = unit_roots_start(1, {3});
  for (int s = 0; s < num_samples; ++s) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(s));
    const HomogeneousSystem target =
        normalize(sampling::bw_gaussian_system(rng, {3}));
    const LinearHomotopy h(normalize(start.system), target);
    TrackerConfig config;
    config.epsilon = 0.05;
    for (const ProjectivePoint& zero : start.zeros) {
      ++result.samples;
      try {
        const TrackingResult run = track(h, zero, config);
        const ProgressAudit audit = progress_audit(run, h);
        result.violations += audit.violations;
        if (audit.sum_increments >
            run.condition_length_estimate * (1.0 + 1e-6) + 1e-9)
          ++result.violations;
      } catch (const Error&) {
        ++result.violations;
      }
    }
  }
  std::ostringstream os;
  os << "tracker-audit: " << result.violations << " violations in "
     << result.samples << " tracked paths";
  result.detail = os.str();
  return result;
}

}  // namespace condtrack::suites
