#include "condtrack/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "condtrack/invariants.hpp"

namespace condtrack {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kInvariantSlack = 1e-9;

double d_to_3_2(int D) { return std::pow(static_cast<double>(D), 1.5); }

}  // namespace

void TrackerConfig::validate() const {
  if (!(epsilon > 0.0) || epsilon > 1.0 / 20.0)
    throw DimensionError("tracker: epsilon must lie in (0, 1/20]");
  if (max_steps_factor < 1.0)
    throw DimensionError("tracker: max_steps_factor must be >= 1");
  if (quad_tol < 0.0) throw DimensionError("tracker: quad_tol must be >= 0");
  if (perturbation < 0.0 || perturbation >= 1.0)
    throw DimensionError(
        "tracker: perturbation must lie in [0, 1) of the correction radius");
}

const char* to_string(StepTrigger t) {
  switch (t) {
    case StepTrigger::Start: return "START";
    case StepTrigger::S1Arc: return "S1_ARC";
    case StepTrigger::S2Phi: return "S2_PHI";
    case StepTrigger::End: return "END";
  }
  return "?";
}

AlphaCertificate certify_start(const HomogeneousSystem& f_a,
                               const ProjectivePoint& x0, double epsilon) {
  if (!(epsilon > 0.0) || epsilon > 1.0 / 20.0)
    throw DimensionError("certify_start: epsilon must lie in (0, 1/20]");
  const double threshold = 0.5 * epsilon * epsilon;
  AlphaCertificate cert = certify(f_a, x0, threshold);
  cert.certified = cert.alpha_bound < threshold;  // strict start gate
  return cert;
}

StepSearch find_step_s(const HomotopyPath& h, double t_i, double mu_i,
                       double epsilon, double quad_tol, double step_hint) {
  const double b = h.domain_end();
  const int D = h.at(t_i).max_degree();
  const double sqrt_d = std::sqrt(static_cast<double>(D));
  const double lo = 4.0 * epsilon * epsilon / (sqrt_d * mu_i);
  const double hi = epsilon / (5.0 * sqrt_d * mu_i);
  const double target = 0.5 * (lo + hi);
  // The band degenerates to a point at epsilon = 1/20; the quadrature
  // tolerance keeps a floor so the search still terminates there.
  const double tol = quad_tol > 0.0
                         ? quad_tol
                         : std::max(1e-2 * epsilon * epsilon * (hi - lo),
                                    1e-4 * lo);
  const double accept = std::max(0.45 * (hi - lo), 1e-6 * target + 2.0 * tol);

  // Expand a bracket from the previous step size before bisecting; this
  // keeps the integrated intervals short.
  double lo_t = t_i;
  double delta = step_hint > 0.0 ? 2.0 * step_hint : (b - t_i) * 1e-6;
  double hi_t = std::min(b, t_i + delta);
  double hi_val = arc_length(h, t_i, hi_t, tol);
  while (hi_val < target && hi_t < b) {
    lo_t = hi_t;
    delta *= 2.0;
    hi_t = std::min(b, t_i + delta);
    hi_val = arc_length(h, t_i, hi_t, tol);
  }
  if (hi_t >= b && hi_val < lo) return StepSearch{b, hi_val};  // no such s
  if (hi_t >= b && hi_val <= hi) return StepSearch{b, hi_val};  // b in band

  for (int iter = 0; iter < 80; ++iter) {
    const double mid = 0.5 * (lo_t + hi_t);
    const double val = arc_length(h, t_i, mid, tol);
    // accept <= 0.45 * bandwidth keeps the value strictly inside the band;
    // for the point band at epsilon = 1/20 it is the quadrature resolution.
    if (std::abs(val - target) <= accept) return StepSearch{mid, val};
    if (val < target)
      lo_t = mid;
    else
      hi_t = mid;
  }
  const double mid = 0.5 * (lo_t + hi_t);
  return StepSearch{mid, arc_length(h, t_i, mid, tol)};
}

StepSearch find_step_sprime(const HomotopyPath& h, double t_i,
                            const ProjectivePoint& x_i, double mu_i,
                            double epsilon) {
  const double b = h.domain_end();
  const HomogeneousSystem f_i = h.at(t_i);
  const int D = f_i.max_degree();
  const double d32 = d_to_3_2(D);
  const double lo = 4.0 * epsilon * epsilon / (d32 * mu_i);
  const double hi = epsilon / (5.0 * d32 * mu_i);
  const double target = 0.5 * (lo + hi);
  const double accept = std::max(0.45 * (hi - lo), 1e-9 * target);

  const double fnorm = bw_norm(f_i);
  const OrthoFrame frame = ortho_frame(x_i);
  const RestrictedJacobian rj(f_i, frame);
  const auto sampler = h.normalized_value_sampler(frame.base.coords());
  const CVec v_t = sampler(t_i);
  // phi between the normalized systems; the factor ||f_i|| converts the raw
  // restricted inverse into the normalized one.
  const auto phi_of = [&](double s) {
    return fnorm * rj.solve(v_t - sampler(s)).norm();
  };

  constexpr int kSamples = 64;
  const double span = b - t_i;
  double prev_t = t_i;
  double prev_phi = 0.0;
  for (int j = 1; j <= kSamples; ++j) {
    const double offset =
        span * 1e-6 * std::pow(1e6, (j - 1) / double(kSamples - 1));
    const double s_j = (j == kSamples) ? b : t_i + offset;
    const double phi_j = phi_of(s_j);
    if (phi_j >= target) {
      // First crossing of the band midpoint; bisect inside [prev_t, s_j].
      double lo_t = prev_t, hi_t = s_j, hi_val = phi_j;
      for (int iter = 0; iter < 80; ++iter) {
        const double mid = 0.5 * (lo_t + hi_t);
        const double val = phi_of(mid);
        if (std::abs(val - target) <= accept) return StepSearch{mid, val};
        if (val < target)
          lo_t = mid;
        else {
          hi_t = mid;
          hi_val = val;
        }
      }
      return StepSearch{hi_t, hi_val};
    }
    prev_t = s_j;
    prev_phi = phi_j;
  }
  return StepSearch{b, prev_phi};  // no such s'; upper bound never crossed
}

ProjectivePoint corrector(const HomogeneousSystem& f_next,
                          const ProjectivePoint& x_i, double noise_angle,
                          std::mt19937_64* rng) {
  ProjectivePoint y = newton_step(f_next, x_i);
  if (noise_angle <= 0.0 || rng == nullptr) return y;
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVec dir(y.dim());
  double norm = 0.0;
  do {
    for (Eigen::Index j = 0; j < dir.size(); ++j)
      dir[j] = Complex(gauss(*rng), gauss(*rng));
    dir -= y.coords() * y.coords().dot(dir);
    norm = dir.norm();
  } while (norm < 1e-12);
  dir /= norm;
  const CVec perturbed =
      std::cos(noise_angle) * y.coords() + std::sin(noise_angle) * dir;
  return ProjectivePoint(perturbed).normalized();
}

TrackingResult track(const HomotopyPath& h, const ProjectivePoint& x0,
                     const TrackerConfig& config) {
  config.validate();
  const double a = h.domain_start();
  const double b = h.domain_end();
  const double eps = config.epsilon;
  const double alpha_limit = 0.5 * eps * eps;

  HomogeneousSystem f_i = normalize(h.at(a));
  const int D = f_i.max_degree();
  if (D < 2) throw DimensionError("track: requires max degree >= 2");
  const double d32 = d_to_3_2(D);

  ProjectivePoint x_i = x0.normalized();
  const AlphaCertificate start_cert = certify_start(f_i, x_i, eps);
  if (!start_cert.certified) {
    std::ostringstream os;
    os << "start not certified: (D^{3/2}/2) mu beta0 = "
       << start_cert.alpha_bound << " >= " << alpha_limit;
    throw StartNotCertifiedError(os.str(), start_cert);
  }

  std::mt19937_64 rng(config.seed);
  TrackingResult result;
  result.config = config;
  double mu_i = mu(f_i, x_i);
  result.steps.push_back(StepRecord{a, x_i, mu_i, beta0(f_i, x_i),
                                    start_cert.alpha_bound, StepTrigger::Start,
                                    0.0, 0.0});

  double t_i = a;
  double running_length = 0.0;
  double step_hint = 0.0;
  while (t_i < b) {
    const int iterations = static_cast<int>(result.steps.size()) - 1;
    const double theoretical =
        1.0 + 0.65 * d32 / (eps * eps) * running_length;
    if (iterations > config.max_steps_factor * theoretical + 8.0)
      throw MaxStepsExceededError(
          "step budget exhausted; condition length may be infinite",
          iterations, running_length);

    const StepSearch s =
        find_step_s(h, t_i, mu_i, eps, config.quad_tol, step_hint);
    const StepSearch sp = find_step_sprime(h, t_i, x_i, mu_i, eps);
    double t_next = std::min(s.t_next, sp.t_next);
    if (!(t_next > t_i))
      throw MaxStepsExceededError("no forward progress in t",
                                  iterations, running_length);
    const StepTrigger trigger =
        (t_next >= b) ? StepTrigger::End
                      : (s.t_next <= sp.t_next ? StepTrigger::S1Arc
                                               : StepTrigger::S2Phi);
    t_next = std::min(t_next, b);

    const HomogeneousSystem f_next = normalize(h.at(t_next));
    const double noise_angle =
        config.perturbation > 0.0
            ? config.perturbation * 4.0 * eps * eps / (5.0 * D * D * mu_i * mu_i)
            : 0.0;
    const ProjectivePoint x_next = corrector(f_next, x_i, noise_angle, &rng);

    const double arc_inc =
        (t_next == s.t_next)
            ? s.gauge
            : arc_length(h, t_i, t_next,
                         config.quad_tol > 0.0 ? config.quad_tol
                                               : 1e-4 * 4.0 * eps * eps /
                                                     (std::sqrt(double(D)) * mu_i));
    const double phi_inc =
        (t_next == sp.t_next) ? sp.gauge : phi(f_i, f_next, x_i);

    const double mu_next = mu(f_next, x_next);
    const double beta0_next =
        std::isfinite(mu_next) ? beta0(f_next, x_next) : kInf;
    const double alpha_next = 0.5 * d32 * mu_next * beta0_next;
    StepRecord record{t_next,  x_next,  mu_next, beta0_next,
                      alpha_next, trigger, arc_inc, phi_inc};

    // Gauge at the uncorrected point: both old and new iterates must be
    // approximate zeros of the new system.
    const double mu_next_xi = mu(f_next, x_i);
    const double gauge3 =
        std::isfinite(mu_next_xi)
            ? 0.5 * d32 * beta0(f_next, x_i) * mu_next_xi
            : kInf;
    if (gauge3 > 0.049 + kInvariantSlack) {
      std::ostringstream os;
      os << "(D^{3/2}/2) beta0(f_next, x_i) mu(f_next, x_i) = " << gauge3
         << " exceeds 0.049";
      throw StepInvariantViolation(os.str(), record);
    }
    // Per-step mu growth stays below 1/(1-eps).
    if (mu_next > mu_i / (1.0 - eps) + kInvariantSlack) {
      std::ostringstream os;
      os << "mu grew from " << mu_i << " to " << mu_next
         << ", above the 1/(1-eps) bound";
      throw StepInvariantViolation(os.str(), record);
    }
    // The invariant that keeps every later step certified.
    if (!(alpha_next < alpha_limit)) {
      std::ostringstream os;
      os << "alpha bound " << alpha_next << " not below eps^2/2 = "
         << alpha_limit;
      throw StepInvariantViolation(os.str(), record);
    }

    running_length += std::hypot(arc_inc, d_riemann(x_i, x_next)) * mu_i;
    step_hint = t_next - t_i;
    result.steps.push_back(std::move(record));
    t_i = t_next;
    x_i = x_next;
    f_i = f_next;
    mu_i = mu_next;
  }

  result.k = static_cast<int>(result.steps.size()) - 1;
  result.final_certificate = certify(f_i, x_i, kApproxZeroThreshold);

  std::vector<std::pair<double, ProjectivePoint>> samples;
  samples.reserve(result.steps.size());
  for (const StepRecord& r : result.steps) samples.emplace_back(r.t, r.x);
  result.condition_length_estimate = condition_length(h, samples, 1e-6);
  result.step_bound =
      1.0 + 0.65 * d32 / (eps * eps) * result.condition_length_estimate;
  return result;
}

ProgressAudit progress_audit(const TrackingResult& result,
                             const HomotopyPath& h, double quad_slack,
                             double tol) {
  ProgressAudit audit;
  audit.min_increment_s1 = kInf;
  audit.min_increment_s2 = kInf;
  const double eps = result.config.epsilon;
  const double xi = 20.0 * eps;
  const int D = h.at(h.domain_start()).max_degree();
  const double d32 = d_to_3_2(D);
  const double floor_s1 = xi * eps / (5.0 * d32) * (1.0 - quad_slack);
  const double floor_s2 = xi * eps / (13.0 * d32) * (1.0 - quad_slack);

  for (size_t j = 1; j < result.steps.size(); ++j) {
    const StepRecord& prev = result.steps[j - 1];
    const StepRecord& cur = result.steps[j];
    if (cur.trigger != StepTrigger::S1Arc && cur.trigger != StepTrigger::S2Phi)
      continue;  // terminal or start records carry no progress obligation

    const std::vector<std::pair<double, ProjectivePoint>> pair = {
        {prev.t, prev.x}, {cur.t, cur.x}};
    const double increment =
        condition_length(h, pair, std::max(tol, 1e-3 * floor_s2));

    ProgressAuditEntry entry{};
    entry.index = static_cast<int>(j);
    entry.trigger = cur.trigger;
    entry.increment = increment;
    entry.floor =
        cur.trigger == StepTrigger::S1Arc ? floor_s1 : floor_s2;
    entry.ok = increment >= entry.floor;

    // Re-check the (s2) upper bound over the step at 10x the search density.
    const HomogeneousSystem f_prev = normalize(h.at(prev.t));
    const double hi_phi = eps / (5.0 * d32 * prev.mu);
    const OrthoFrame frame = ortho_frame(prev.x);
    const RestrictedJacobian rj(f_prev, frame);
    const auto sampler = h.normalized_value_sampler(frame.base.coords());
    const CVec v_t = sampler(prev.t);
    entry.phi_upper_ok = true;
    const double width = cur.t - prev.t;
    for (int m = 1; m <= 640; ++m) {
      const double sigma = prev.t + width * m / 640.0;
      const double val = rj.solve(v_t - sampler(sigma)).norm();
      if (val > hi_phi * (1.0 + 1e-9)) {
        entry.phi_upper_ok = false;
        break;
      }
    }

    if (!entry.ok || !entry.phi_upper_ok) ++audit.violations;
    if (cur.trigger == StepTrigger::S1Arc)
      audit.min_increment_s1 = std::min(audit.min_increment_s1, increment);
    else
      audit.min_increment_s2 = std::min(audit.min_increment_s2, increment);
    audit.sum_increments += increment;
    audit.entries.push_back(std::move(entry));
  }
  return audit;
}

}  // namespace condtrack
