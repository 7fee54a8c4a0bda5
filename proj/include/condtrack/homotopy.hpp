#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "condtrack/polysys.hpp"
#include "condtrack/types.hpp"

namespace condtrack {

/// A C^1 path of homogeneous systems over a parameter interval. The tracker
/// consumes paths only through this interface.
class HomotopyPath {
 public:
  virtual ~HomotopyPath() = default;

  virtual double domain_start() const = 0;
  virtual double domain_end() const = 0;

  /// The system at parameter t (t inside the domain).
  virtual HomogeneousSystem at(double t) const = 0;

  /// d f_t / d t at parameter t.
  virtual HomogeneousSystem derivative_at(double t) const = 0;

  /// Projective speed || df_t/dt ||_{f_t} = || Pi_{f_t-perp} df/dt || / ||f_t||.
  virtual double speed(double t) const;

  /// ||f_t|| in the BW norm.
  virtual double norm_at(double t) const;

  /// Returns a closure sigma -> f_sigma(x) / ||f_sigma||. Implementations
  /// may cache whatever makes repeated sampling along the path cheap.
  virtual std::function<CVec(double)> normalized_value_sampler(
      const CVec& x) const;
};

/// f_t = (1 - tau) f_start + tau f_end with tau = (t-a)/(b-a). The pairwise
/// BW inner products of the endpoints are cached, which makes speed and
/// normalized values along the path closed-form scalar work.
class LinearHomotopy : public HomotopyPath {
 public:
  LinearHomotopy(HomogeneousSystem f_start, HomogeneousSystem f_end,
                 double a = 0.0, double b = 1.0);

  double domain_start() const override { return a_; }
  double domain_end() const override { return b_; }
  HomogeneousSystem at(double t) const override;
  HomogeneousSystem derivative_at(double t) const override;
  double speed(double t) const override;
  double norm_at(double t) const override;
  std::function<CVec(double)> normalized_value_sampler(
      const CVec& x) const override;

  const HomogeneousSystem& f_start() const { return f_start_; }
  const HomogeneousSystem& f_end() const { return f_end_; }

 private:
  double tau(double t) const { return (t - a_) / (b_ - a_); }
  double norm2_at_tau(double tau) const;
  void require_in_domain(double t) const;

  HomogeneousSystem f_start_;
  HomogeneousSystem f_end_;
  double a_;
  double b_;
  double gram_aa_;
  double gram_bb_;
  Complex gram_ab_;  // <f_start, f_end>
};

/// Adaptive-Simpson arc length of the path between t0 and t1 in the
/// projective BW metric, to absolute tolerance tol.
double arc_length(const HomotopyPath& h, double t0, double t1, double tol);

/// Condition-length estimate along the lifted path identified by `samples`
/// (ordered approximate zeros on the path). Every quadrature node is
/// Newton-refined to the exact lifted zero, the zero's velocity is estimated
/// by phase-aligned central differences, and each inter-sample interval is
/// integrated by composite Simpson refined until it moves by less than its
/// share of tol.
struct ConditionLengthProfile {
  double total = 0.0;
  std::vector<double> increments;  // one per consecutive sample pair
};

ConditionLengthProfile condition_length_profile(
    const HomotopyPath& h,
    const std::vector<std::pair<double, ProjectivePoint>>& samples,
    double tol);

double condition_length(
    const HomotopyPath& h,
    const std::vector<std::pair<double, ProjectivePoint>>& samples,
    double tol);

/// A start system together with its known zeros, validated on construction:
/// each zero has residual <= 1e-12 * ||system|| and finite mu.
struct StartPair {
  HomogeneousSystem system;
  std::vector<ProjectivePoint> zeros;
};

/// The conjectured good start: f_i = sqrt(d_i) z_0^{d_i - 1} z_i with the
/// single zero e_0 and the minimal condition number mu = sqrt(n).
StartPair canonical_start(int n, const std::vector<int>& degrees);

/// Total-degree start: g_i = z_i^{d_i} - z_0^{d_i} with the prod(d_i) simple
/// zeros (1, w_1, ..., w_n), w_i^{d_i} = 1.
StartPair unit_roots_start(int n, const std::vector<int>& degrees);

}  // namespace condtrack
