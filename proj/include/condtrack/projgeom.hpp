#pragma once

#include <Eigen/SVD>

#include "condtrack/polysys.hpp"
#include "condtrack/types.hpp"

namespace condtrack {

/// Riemannian distance in P_n(C): the angle in [0, pi/2] between the lines
/// through x and y. Computed from the orthogonal residual so that small
/// angles keep full absolute precision.
double d_riemann(const ProjectivePoint& x, const ProjectivePoint& y);

/// Projective distance sin(d_R) = min over nonzero complex lambda of
/// ||x - lambda y|| / ||x||.
double d_proj(const ProjectivePoint& x, const ProjectivePoint& y);

/// Tangential "distance" tan(d_R); +infinity for orthogonal lines. Does not
/// satisfy the triangle inequality.
double d_tan(const ProjectivePoint& x, const ProjectivePoint& y);

/// A unit base point together with an orthonormal basis of its orthogonal
/// complement, as the (n+1) x n column matrix of the trailing columns of the
/// Householder reflector taking e_0 to the base (non-negative real pivot
/// convention).
struct OrthoFrame {
  ProjectivePoint base;  // unit norm
  CMat basis;            // (n+1) x n, basis^H basis = I, basis^H base = 0
};

OrthoFrame ortho_frame(const ProjectivePoint& x);

/// Df(x) restricted to x's orthogonal complement, held in factored form so
/// several right-hand sides can be solved against one factorization.
class RestrictedJacobian {
 public:
  /// Rank test: sigma_min/sigma_max must exceed this for solves.
  static constexpr double kRankThreshold = 1e-13;

  RestrictedJacobian(const HomogeneousSystem& f, const OrthoFrame& frame);

  double sigma_min() const { return sigma_min_; }
  double sigma_max() const { return sigma_max_; }
  double sigma_ratio() const;
  bool rank_deficient() const;

  /// Returns w in base-perp with Df(x) w = rhs. Throws RankDeficientError.
  CVec solve(const CVec& rhs) const;

  /// The n x n matrix Df(x) * basis.
  const CMat& matrix() const { return restricted_; }
  const OrthoFrame& frame() const { return frame_; }

 private:
  OrthoFrame frame_;
  CMat restricted_;
  Eigen::JacobiSVD<CMat> svd_;
  double sigma_min_ = 0.0;
  double sigma_max_ = 0.0;
};

/// Convenience wrapper over RestrictedJacobian::solve for one-off solves.
CVec restricted_solve(const HomogeneousSystem& f, const OrthoFrame& frame,
                      const CVec& rhs);

/// Angle in [0, pi/2] between x and the one-dimensional kernel of Df(x).
/// Requires rank Df(x) = n. Zero when f(x) = 0 (the kernel contains x then,
/// by Euler's identity).
double kernel_angle(const HomogeneousSystem& f, const ProjectivePoint& x);

}  // namespace condtrack
