#pragma once

#include <vector>

#include "condtrack/types.hpp"

namespace condtrack {

/// One term c * z0^a0 * ... * zn^an of a homogeneous equation.
struct Monomial {
  std::vector<int> exponents;  // size n+1, entries >= 0
  Complex coeff;

  int total_degree() const;
};

/// A nonzero complex vector representing a point of P(C^{n+1}).
class ProjectivePoint {
 public:
  explicit ProjectivePoint(CVec coords);

  const CVec& coords() const { return coords_; }
  double norm() const { return coords_.norm(); }
  Eigen::Index dim() const { return coords_.size(); }

  /// Returns the representative with Euclidean norm 1 (same phase).
  ProjectivePoint normalized() const;

 private:
  CVec coords_;
};

/// A square homogeneous system f : C^{n+1} -> C^n, stored as n dense
/// monomial lists. Construction canonicalizes each equation: terms sorted in
/// graded-lexicographic order, duplicate exponents merged, zero coefficients
/// dropped. Immutable after construction.
class HomogeneousSystem {
 public:
  HomogeneousSystem(std::vector<int> degrees,
                    std::vector<std::vector<Monomial>> equations);

  int num_equations() const { return static_cast<int>(degrees_.size()); }
  int num_vars() const { return num_equations() + 1; }
  const std::vector<int>& degrees() const { return degrees_; }
  int max_degree() const;
  const std::vector<Monomial>& equation(int i) const { return equations_[i]; }
  const std::vector<std::vector<Monomial>>& equations() const {
    return equations_;
  }
  bool is_zero() const;

 private:
  std::vector<int> degrees_;
  std::vector<std::vector<Monomial>> equations_;
};

/// f(x), by direct monomial summation.
CVec evaluate(const HomogeneousSystem& f, const ProjectivePoint& x);
CVec evaluate(const HomogeneousSystem& f, const CVec& x);

/// Df(x): entry (i,j) = d f_i / d z_j, by exact symbolic differentiation of
/// the monomial lists.
CMat jacobian(const HomogeneousSystem& f, const ProjectivePoint& x);
CMat jacobian(const HomogeneousSystem& f, const CVec& x);

/// (D^k f(x) / k!)(v, ..., v), the k-th derivative tensor applied k times to
/// the same vector, via repeated symbolic directional differentiation.
/// Requires 2 <= k <= max degree.
CVec higher_derivative_apply(const HomogeneousSystem& f,
                             const ProjectivePoint& x, int k, const CVec& v);

/// Bombieri-Weyl inner product: sum over matching monomials of
/// (a0!...an!/d!) f_a conj(g_a). Unitarily invariant.
Complex bw_inner(const HomogeneousSystem& f, const HomogeneousSystem& g);
double bw_norm(const HomogeneousSystem& f);

/// The multinomial weight a0!...an!/d! of one monomial in the BW product.
double bw_weight(const std::vector<int>& exponents);

/// a*f + b*g on matched monomial structure (same n and degrees).
HomogeneousSystem linear_combination(Complex a, const HomogeneousSystem& f,
                                     Complex b, const HomogeneousSystem& g);

/// f / ||f||_BW. Throws if f is the zero system.
HomogeneousSystem normalize(const HomogeneousSystem& f);

HomogeneousSystem scale(Complex a, const HomogeneousSystem& f);

/// f composed with a unitary change of variables, z -> U z, expanded back to
/// canonical monomial form. U must be unitary to 1e-12.
HomogeneousSystem compose_unitary(const HomogeneousSystem& f, const CMat& U);

}  // namespace condtrack
