#include "condtrack/newton_alpha.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace condtrack {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sigma_unchecked(double a) {
  // (1+a)^2 - 8a = 1 - 6a + a^2, positive on [0, alpha_0].
  const double q = std::sqrt(1.0 + a * (a - 6.0));
  return 0.25 + (6.0 - a) / (4.0 * (1.0 + q));
}

}  // namespace

double alpha0_threshold() { return (13.0 - 3.0 * std::sqrt(17.0)) / 4.0; }

double sigma(double alpha) {
  if (!(alpha > 0.0) || alpha > alpha0_threshold()) {
    std::ostringstream os;
    os << "sigma: alpha = " << alpha << " outside (0, " << alpha0_threshold()
       << "]";
    throw DimensionError(os.str());
  }
  return sigma_unchecked(alpha);
}

double psi(double u) {
  if (u < 0.0) throw DimensionError("psi: u must be nonnegative");
  return 1.0 - 4.0 * u + 2.0 * u * u;
}

ProjectivePoint newton_step(const HomogeneousSystem& f,
                            const ProjectivePoint& x) {
  const OrthoFrame frame = ortho_frame(x);
  const RestrictedJacobian rj(f, frame);
  const CVec w = rj.solve(evaluate(f, frame.base));
  const CVec y = frame.base.coords() - w;
  return ProjectivePoint(y).normalized();
}

AlphaCertificate certify(const HomogeneousSystem& f, const ProjectivePoint& x,
                         double threshold) {
  if (!(threshold > 0.0) || threshold > alpha0_threshold() + 1e-15)
    throw DimensionError("certify: threshold must lie in (0, alpha_0]");
  AlphaCertificate cert;
  cert.threshold_used = threshold;
  const double mu_fx = mu(f, x);
  if (!std::isfinite(mu_fx)) {
    cert.alpha_bound = kInf;
    cert.certified = false;
    cert.zero_radius_tan = kInf;
    return cert;
  }
  const double b0 = beta0(f, x);
  const double D = static_cast<double>(f.max_degree());
  cert.alpha_bound = 0.5 * std::pow(D, 1.5) * mu_fx * b0;
  cert.certified = cert.alpha_bound <= threshold;
  cert.zero_radius_tan =
      cert.certified ? sigma_unchecked(cert.alpha_bound) * b0 : kInf;
  return cert;
}

ProjectivePoint refine_to_zero(const HomogeneousSystem& f,
                               const ProjectivePoint& x, int iterations,
                               double residual_tol) {
  ProjectivePoint z = x.normalized();
  for (int i = 0; i < iterations; ++i) z = newton_step(f, z);
  const double resid = evaluate(f, z).norm();
  if (resid > residual_tol * bw_norm(f)) {
    std::ostringstream os;
    os << "refine_to_zero: residual " << resid << " above gate "
       << residual_tol * bw_norm(f);
    throw RefinementError(os.str());
  }
  return z;
}

BetaDistVerdict beta_dist_check(const HomogeneousSystem& f,
                                const ProjectivePoint& x) {
  const AlphaCertificate cert = certify(f, x, kApproxZeroThreshold);
  if (!cert.certified)
    throw GaugeOutOfRangeError("beta_dist_check requires alpha_bound <= 0.049",
                               cert.alpha_bound, 0.0);
  const ProjectivePoint zeta = refine_to_zero(f, x);
  BetaDistVerdict v{};
  v.beta0 = beta0(f, x);
  v.d_tan = d_tan(x, zeta);
  v.ok = v.beta0 <= 1.128 * v.d_tan + 1e-10;
  return v;
}

IterateBetaVerdict iterate_beta_check(const HomogeneousSystem& f,
                                      const ProjectivePoint& x) {
  IterateBetaVerdict v{};
  const double mu_fx = mu(f, x);
  if (!std::isfinite(mu_fx))
    throw RankDeficientError("iterate_beta_check: mu infinite", 0.0);
  v.beta0_x = beta0(f, x);
  const double D = static_cast<double>(f.max_degree());
  v.a = 0.5 * std::pow(D, 1.5) * v.beta0_x * mu_fx;
  if (v.a > 1.0 / 20.0)
    throw GaugeOutOfRangeError("iterate_beta_check requires a <= 1/20", v.a,
                               0.0);
  const ProjectivePoint y = newton_step(f, x);
  v.beta0_y = beta0(f, y);
  v.bound = 1.23 * v.a * v.beta0_x;
  v.ok = v.beta0_y <= v.bound + 1e-10;
  return v;
}

AffineLocal affine_localize(const HomogeneousSystem& f,
                            const AffineChart& chart, const CVec& X) {
  if (X.size() != f.num_equations())
    throw DimensionError("affine_localize: X must have length n");
  const CVec p = chart.base().coords() + chart.frame.basis * X;
  AffineLocal out;
  out.value = evaluate(f, p);
  out.jacobian = jacobian(f, p) * chart.frame.basis;
  return out;
}

}  // namespace condtrack
