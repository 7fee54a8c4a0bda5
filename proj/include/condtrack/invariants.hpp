#pragma once

#include "condtrack/polysys.hpp"
#include "condtrack/projgeom.hpp"
#include "condtrack/types.hpp"

namespace condtrack {

/// Condition number mu(f, x) = ||f|| * || Df(x)|_{x-perp}^{-1}
/// diag(sqrt(d_i) ||x||^{d_i - 1}) ||, computed as ||f|| over the smallest
/// singular value of the degree-scaled restricted Jacobian. Returns
/// +infinity when the restricted Jacobian is rank deficient. Invariant under
/// independent scalings of f and x; never below sqrt(n).
double mu(const HomogeneousSystem& f, const ProjectivePoint& x);

/// Newton step length over ||x||: ||x||^-1 || Df(x)|_{x-perp}^{-1} f(x) ||.
double beta0(const HomogeneousSystem& f, const ProjectivePoint& x);

/// ||x||^-1 || Df(x)|_{x-perp}^{-1} diag(d_i) f(x) ||; equals tan of the
/// angle between x and ker Df(x).
double delta(const HomogeneousSystem& f, const ProjectivePoint& x);

/// phi_{t,s}(x) = ||x||^-1 || Df_t(x)|_{x-perp}^{-1} (f_t(x) - f_s(x)) ||.
double phi(const HomogeneousSystem& f_t, const HomogeneousSystem& f_s,
           const ProjectivePoint& x);

/// The comparison gauges of the mu-variation theory:
///   u = D^{3/2} mu(f,x) d_R(x,y) / 2
///   v = D^{1/2} mu(f,x) || f/||f|| - g/||g|| ||
struct ComparisonGauge {
  double u;
  double v;
};

ComparisonGauge gauges(const HomogeneousSystem& f, const HomogeneousSystem& g,
                       const ProjectivePoint& x, const ProjectivePoint& y);

/// Outcome of testing the two-sided mu comparison
///   (1 - 3.805 u - v) mu(g,y) <= mu(f,x) <= (1 + 3.504 u + v) mu(g,y)
/// on one sample, with 1e-9 additive slack. Requires u, v <= 1/20. Also
/// evaluates the epsilon-form (1 -+ eps) bounds with eps = 5 max(u, v).
struct SandwichVerdict {
  double u = 0.0;
  double v = 0.0;
  double mu_fx = 0.0;
  double mu_gy = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool ok = false;
  // epsilon-form (valid whenever u, v <= eps/5 with eps <= 1/4)
  double eps = 0.0;
  bool eps_form_ok = false;
};

SandwichVerdict check_sandwich(const HomogeneousSystem& f,
                               const HomogeneousSystem& g,
                               const ProjectivePoint& x,
                               const ProjectivePoint& y);

/// One-stop snapshot of the invariants at a pair (f, x). gamma0_bound is the
/// certified upper bound (D^{3/2}/2) mu, and alpha_bound = beta0 *
/// gamma0_bound dominates beta0(f,x) gamma0(f,x).
struct InvariantReport {
  double mu;  // +infinity if rank deficient
  double beta0;
  double delta;
  double gamma0_bound;
  double alpha_bound;
};

InvariantReport invariant_report(const HomogeneousSystem& f,
                                 const ProjectivePoint& x);

}  // namespace condtrack
