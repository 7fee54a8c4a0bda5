#include "condtrack/sampling.hpp"

#include <cmath>
#include <functional>

#include <Eigen/Dense>

namespace condtrack::sampling {

std::vector<std::vector<int>> monomial_exponents(int num_vars, int degree) {
  std::vector<std::vector<int>> out;
  std::vector<int> current(num_vars, 0);
  // Recursive enumeration unrolled with an explicit position walk.
  const std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == num_vars - 1) {
      current[pos] = remaining;
      out.push_back(current);
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      current[pos] = e;
      rec(pos + 1, remaining - e);
    }
  };
  rec(0, degree);
  return out;
}

Complex standard_complex_gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double re = gauss(rng);
  const double im = gauss(rng);
  return Complex(re, im);
}

CVec gaussian_vector(std::mt19937_64& rng, Eigen::Index dim) {
  CVec v(dim);
  for (Eigen::Index j = 0; j < dim; ++j) v[j] = standard_complex_gaussian(rng);
  return v;
}

ProjectivePoint random_unit_point(std::mt19937_64& rng, Eigen::Index dim) {
  CVec v;
  do {
    v = gaussian_vector(rng, dim);
  } while (v.norm() < 1e-12);
  return ProjectivePoint(v).normalized();
}

HomogeneousSystem bw_gaussian_system(std::mt19937_64& rng,
                                     const std::vector<int>& degrees) {
  const int n = static_cast<int>(degrees.size());
  std::vector<std::vector<Monomial>> eqs(n);
  for (int i = 0; i < n; ++i) {
    for (const auto& exps : monomial_exponents(n + 1, degrees[i])) {
      const double scale = 1.0 / std::sqrt(bw_weight(exps));
      eqs[i].push_back(Monomial{exps, standard_complex_gaussian(rng) * scale});
    }
  }
  return HomogeneousSystem(degrees, std::move(eqs));
}

CMat random_unitary(std::mt19937_64& rng, Eigen::Index dim) {
  CMat g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j)
      g(i, j) = standard_complex_gaussian(rng);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

ProjectivePoint perturb_within(std::mt19937_64& rng, const ProjectivePoint& x,
                               double angle) {
  const CVec xh = x.coords() / x.norm();
  if (angle == 0.0) return ProjectivePoint(xh);
  CVec dir;
  double norm = 0.0;
  do {
    dir = gaussian_vector(rng, xh.size());
    dir -= xh * xh.dot(dir);
    norm = dir.norm();
  } while (norm < 1e-12);
  dir /= norm;
  return ProjectivePoint(std::cos(angle) * xh + std::sin(angle) * dir);
}

}  // namespace condtrack::sampling
