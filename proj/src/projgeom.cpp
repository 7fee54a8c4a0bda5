#include "condtrack/projgeom.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace condtrack {

namespace {

// Returns (sin, cos) of the angle between the lines through x and y. The
// sine comes from the orthogonal residual of y against x, which stays
// accurate down to ~1e-15 where acos of the inner product would floor out
// near 1e-8.
std::pair<double, double> angle_sincos(const ProjectivePoint& x,
                                       const ProjectivePoint& y) {
  if (x.dim() != y.dim())
    throw DimensionError("projective distance: dimension mismatch");
  const CVec xh = x.coords() / x.norm();
  const CVec yh = y.coords() / y.norm();
  const Complex inner = yh.dot(xh);  // <x, y> with Eigen's conjugate-first dot
  double c = std::abs(inner);
  if (c > 1.0) c = 1.0;
  const CVec resid = yh - xh * std::conj(inner);
  double s = resid.norm();
  if (s > 1.0) s = 1.0;
  return {s, c};
}

}  // namespace

double d_riemann(const ProjectivePoint& x, const ProjectivePoint& y) {
  const auto [s, c] = angle_sincos(x, y);
  return std::atan2(s, c);
}

double d_proj(const ProjectivePoint& x, const ProjectivePoint& y) {
  const auto [s, c] = angle_sincos(x, y);
  const double h = std::hypot(s, c);
  return h == 0.0 ? 0.0 : s / h;
}

double d_tan(const ProjectivePoint& x, const ProjectivePoint& y) {
  const auto [s, c] = angle_sincos(x, y);
  if (c == 0.0) return std::numeric_limits<double>::infinity();
  return s / c;
}

OrthoFrame ortho_frame(const ProjectivePoint& x) {
  const Eigen::Index nv = x.dim();
  const CVec xh = x.coords() / x.norm();
  // Phase-align so the pivot is non-negative real, then reflect e_0 onto it.
  const Complex x0 = xh[0];
  const Complex phase =
      (std::abs(x0) == 0.0) ? Complex(1.0, 0.0) : x0 / std::abs(x0);
  const CVec y = xh / phase;  // y[0] = |x0| >= 0
  CVec u = -y;
  u[0] += 1.0;  // u = e_0 - y
  const double un2 = u.squaredNorm();
  CMat reflector = CMat::Identity(nv, nv);
  if (un2 > 1e-30) reflector -= (2.0 / un2) * (u * u.adjoint());
  // reflector * e_0 = y, so its trailing columns span y-perp = x-perp.
  OrthoFrame frame{ProjectivePoint(xh), reflector.rightCols(nv - 1)};
  return frame;
}

RestrictedJacobian::RestrictedJacobian(const HomogeneousSystem& f,
                                       const OrthoFrame& frame)
    : frame_(frame),
      restricted_(jacobian(f, frame.base) * frame.basis),
      svd_(restricted_, Eigen::ComputeFullU | Eigen::ComputeFullV) {
  const auto& sv = svd_.singularValues();
  sigma_max_ = sv.size() ? sv[0] : 0.0;
  sigma_min_ = sv.size() ? sv[sv.size() - 1] : 0.0;
}

double RestrictedJacobian::sigma_ratio() const {
  if (sigma_max_ == 0.0) return 0.0;
  return sigma_min_ / sigma_max_;
}

bool RestrictedJacobian::rank_deficient() const {
  return sigma_max_ == 0.0 || sigma_ratio() <= kRankThreshold;
}

CVec RestrictedJacobian::solve(const CVec& rhs) const {
  if (rhs.size() != restricted_.rows())
    throw DimensionError("restricted solve: rhs dimension mismatch");
  if (rank_deficient())
    throw RankDeficientError("restricted Jacobian is rank deficient",
                             sigma_ratio());
  return frame_.basis * svd_.solve(rhs);
}

CVec restricted_solve(const HomogeneousSystem& f, const OrthoFrame& frame,
                      const CVec& rhs) {
  return RestrictedJacobian(f, frame).solve(rhs);
}

double kernel_angle(const HomogeneousSystem& f, const ProjectivePoint& x) {
  const CVec xh = x.coords() / x.norm();
  const CMat J = jacobian(f, xh);
  Eigen::JacobiSVD<CMat> svd(J, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv[0];
  const double smin = sv[sv.size() - 1];
  if (smax == 0.0 || smin / smax <= RestrictedJacobian::kRankThreshold)
    throw RankDeficientError("kernel_angle: rank Df(x) < n",
                             smax == 0.0 ? 0.0 : smin / smax);
  // The kernel of Df(x) is spanned by the last right singular vector.
  const CVec kernel = svd.matrixV().col(J.cols() - 1);
  return d_riemann(ProjectivePoint(xh), ProjectivePoint(kernel));
}

}  // namespace condtrack
