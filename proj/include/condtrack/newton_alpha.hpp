#pragma once

#include "condtrack/invariants.hpp"
#include "condtrack/polysys.hpp"
#include "condtrack/projgeom.hpp"
#include "condtrack/types.hpp"

namespace condtrack {

/// The zero-existence threshold alpha_0 = (13 - 3 sqrt(17)) / 4.
double alpha0_threshold();

/// The approximate-zero threshold: contraction is only claimed for
/// alpha <= 0.049.
constexpr double kApproxZeroThreshold = 0.049;

/// sigma(a) = 1/4 + (1 - sqrt((1+a)^2 - 8a)) / (4a), evaluated in the
/// cancellation-free form 1/4 + (6 - a) / (4 (1 + sqrt((1+a)^2 - 8a))).
/// Increasing on (0, alpha_0], with sigma -> 1 as a -> 0+. Throws outside
/// (0, alpha_0].
double sigma(double alpha);

/// psi(u) = 1 - 4u + 2u^2, decreasing from 1 to 0 on [0, (2 - sqrt 2)/2].
/// Requires u >= 0.
double psi(double u);

/// Projective Newton step: x - Df(x)|_{x-perp}^{-1} f(x), renormalized to
/// unit norm. Projectively well defined. Throws RankDeficientError.
ProjectivePoint newton_step(const HomogeneousSystem& f,
                            const ProjectivePoint& x);

/// Verdict of the alpha test at (f, x): alpha_bound = (D^{3/2}/2) mu beta0
/// dominates beta0(f,x) gamma0(f,x), so alpha_bound <= threshold certifies a
/// zero within tangential distance sigma(alpha_bound) * beta0 of x, and an
/// approximate zero when threshold <= 0.049.
struct AlphaCertificate {
  double alpha_bound = 0.0;  // +infinity when the Jacobian is rank deficient
  bool certified = false;
  double threshold_used = kApproxZeroThreshold;
  double zero_radius_tan = 0.0;  // sigma(alpha_bound) * beta0, if certified
};

/// threshold must lie in (0, alpha_0]. Rank-deficient points come back
/// uncertified with alpha_bound = +infinity.
AlphaCertificate certify(const HomogeneousSystem& f, const ProjectivePoint& x,
                         double threshold = kApproxZeroThreshold);

/// Newton-refines x to an exact zero: `iterations` projective Newton steps,
/// then the residual gate ||f(zeta)|| <= residual_tol * ||f|| at unit zeta.
/// Throws RefinementError if the gate fails.
ProjectivePoint refine_to_zero(const HomogeneousSystem& f,
                               const ProjectivePoint& x, int iterations = 20,
                               double residual_tol = 1e-12);

/// Checks beta0(f,x) <= 1.128 d_T(x, zeta) against the refined associated
/// zero. Requires alpha_bound <= 0.049.
struct BetaDistVerdict {
  double beta0;
  double d_tan;
  bool ok;
};
BetaDistVerdict beta_dist_check(const HomogeneousSystem& f,
                                const ProjectivePoint& x);

/// Checks beta0(f, N_f(x)) < 1.23 a beta0(f, x) with
/// a = (D^{3/2}/2) beta0 mu <= 1/20.
struct IterateBetaVerdict {
  double a;
  double beta0_x;
  double beta0_y;
  double bound;
  bool ok;
};
IterateBetaVerdict iterate_beta_check(const HomogeneousSystem& f,
                                      const ProjectivePoint& x);

/// Affine chart at a unit base point: X in C^n represents base + frame * X,
/// realizing F(X) = f(x + X) with DF(X) = Df(x + X)|_{x-perp}.
struct AffineChart {
  explicit AffineChart(const ProjectivePoint& base_point)
      : frame(ortho_frame(base_point)) {}
  const ProjectivePoint& base() const { return frame.base; }
  OrthoFrame frame;
};

struct AffineLocal {
  CVec value;    // F(X), length n
  CMat jacobian; // DF(X), n x n
};
AffineLocal affine_localize(const HomogeneousSystem& f,
                            const AffineChart& chart, const CVec& X);

}  // namespace condtrack
