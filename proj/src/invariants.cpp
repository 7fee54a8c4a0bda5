#include "condtrack/invariants.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace condtrack {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_match(const HomogeneousSystem& f, const ProjectivePoint& x) {
  if (x.dim() != f.num_vars())
    throw DimensionError("invariant: point dimension does not match system");
}

}  // namespace

double mu(const HomogeneousSystem& f, const ProjectivePoint& x) {
  require_match(f, x);
  const double fnorm = bw_norm(f);
  if (fnorm == 0.0) throw ZeroSystemError("mu: zero system");
  // Evaluate at the unit representative; the formula is scale invariant.
  const OrthoFrame frame = ortho_frame(x);
  CMat m = jacobian(f, frame.base) * frame.basis;
  for (int i = 0; i < f.num_equations(); ++i)
    m.row(i) /= std::sqrt(static_cast<double>(f.degrees()[i]));
  Eigen::JacobiSVD<CMat> svd(m);
  const auto& sv = svd.singularValues();
  const double smax = sv[0];
  const double smin = sv[sv.size() - 1];
  if (smax == 0.0 || smin / smax <= RestrictedJacobian::kRankThreshold)
    return kInf;
  return fnorm / smin;
}

double beta0(const HomogeneousSystem& f, const ProjectivePoint& x) {
  require_match(f, x);
  const OrthoFrame frame = ortho_frame(x);
  const RestrictedJacobian rj(f, frame);
  return rj.solve(evaluate(f, frame.base)).norm();
}

double delta(const HomogeneousSystem& f, const ProjectivePoint& x) {
  require_match(f, x);
  const OrthoFrame frame = ortho_frame(x);
  const RestrictedJacobian rj(f, frame);
  CVec rhs = evaluate(f, frame.base);
  for (int i = 0; i < f.num_equations(); ++i)
    rhs[i] *= static_cast<double>(f.degrees()[i]);
  return rj.solve(rhs).norm();
}

double phi(const HomogeneousSystem& f_t, const HomogeneousSystem& f_s,
           const ProjectivePoint& x) {
  require_match(f_t, x);
  if (f_t.degrees() != f_s.degrees())
    throw DimensionError("phi: systems differ in size or degrees");
  const OrthoFrame frame = ortho_frame(x);
  const RestrictedJacobian rj(f_t, frame);
  const CVec rhs = evaluate(f_t, frame.base) - evaluate(f_s, frame.base);
  return rj.solve(rhs).norm();
}

ComparisonGauge gauges(const HomogeneousSystem& f, const HomogeneousSystem& g,
                       const ProjectivePoint& x, const ProjectivePoint& y) {
  const double mu_fx = mu(f, x);
  if (!std::isfinite(mu_fx))
    throw RankDeficientError("gauges: mu(f,x) is infinite", 0.0);
  const double D = static_cast<double>(f.max_degree());
  const double u = 0.5 * std::pow(D, 1.5) * mu_fx * d_riemann(x, y);
  const HomogeneousSystem diff =
      linear_combination(Complex(1.0, 0.0), normalize(f), Complex(-1.0, 0.0),
                         normalize(g));
  const double v = std::sqrt(D) * mu_fx * bw_norm(diff);
  return ComparisonGauge{u, v};
}

SandwichVerdict check_sandwich(const HomogeneousSystem& f,
                               const HomogeneousSystem& g,
                               const ProjectivePoint& x,
                               const ProjectivePoint& y) {
  const ComparisonGauge uv = gauges(f, g, x, y);
  if (uv.u > 1.0 / 20.0 || uv.v > 1.0 / 20.0)
    throw GaugeOutOfRangeError("check_sandwich requires u, v <= 1/20", uv.u,
                               uv.v);
  SandwichVerdict verdict;
  verdict.u = uv.u;
  verdict.v = uv.v;
  verdict.mu_fx = mu(f, x);
  verdict.mu_gy = mu(g, y);
  // Under these gauges the comparison side must also have full rank.
  if (!std::isfinite(verdict.mu_gy))
    throw RankDeficientError("check_sandwich: mu(g,y) infinite despite gauges",
                             0.0);
  constexpr double kSlack = 1e-9;
  verdict.lower = (1.0 - 3.805 * uv.u - uv.v) * verdict.mu_gy;
  verdict.upper = (1.0 + 3.504 * uv.u + uv.v) * verdict.mu_gy;
  verdict.ok = (verdict.lower - kSlack <= verdict.mu_fx) &&
               (verdict.mu_fx <= verdict.upper + kSlack);
  verdict.eps = 5.0 * std::max(uv.u, uv.v);
  verdict.eps_form_ok =
      ((1.0 - verdict.eps) * verdict.mu_gy - kSlack <= verdict.mu_fx) &&
      (verdict.mu_fx <= (1.0 + verdict.eps) * verdict.mu_gy + kSlack);
  return verdict;
}

InvariantReport invariant_report(const HomogeneousSystem& f,
                                 const ProjectivePoint& x) {
  InvariantReport r{};
  r.mu = mu(f, x);
  const double D = static_cast<double>(f.max_degree());
  if (std::isfinite(r.mu)) {
    r.beta0 = beta0(f, x);
    r.delta = delta(f, x);
    r.gamma0_bound = 0.5 * std::pow(D, 1.5) * r.mu;
    r.alpha_bound = r.beta0 * r.gamma0_bound;
  } else {
    r.beta0 = kInf;
    r.delta = kInf;
    r.gamma0_bound = kInf;
    r.alpha_bound = kInf;
  }
  return r;
}

}  // namespace condtrack
