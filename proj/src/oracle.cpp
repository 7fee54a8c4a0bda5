#include "condtrack/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "condtrack/invariants.hpp"
#include "condtrack/newton_alpha.hpp"
#include "condtrack/projgeom.hpp"

namespace condtrack {

void OracleConfig::validate() const {
  if (fd_step < 1e-9 || fd_step > 1e-3)
    throw DimensionError("oracle: fd_step must lie in [1e-9, 1e-3]");
  if (samples < 16) throw DimensionError("oracle: samples must be >= 16");
}

CMat fd_jacobian(const HomogeneousSystem& f, const ProjectivePoint& x,
                 const OracleConfig& cfg) {
  cfg.validate();
  const double h = cfg.fd_step;
  CMat out(f.num_equations(), f.num_vars());
  for (int j = 0; j < f.num_vars(); ++j) {
    CVec xp = x.coords();
    CVec xm = x.coords();
    xp[j] += h;
    xm[j] -= h;
    out.col(j) = (evaluate(f, xp) - evaluate(f, xm)) / (2.0 * h);
  }
  return out;
}

namespace {

CVec gaussian_unit(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVec v(dim);
  double n = 0.0;
  do {
    for (Eigen::Index j = 0; j < dim; ++j)
      v[j] = Complex(gauss(rng), gauss(rng));
    n = v.norm();
  } while (n < 1e-12);
  return v / n;
}

}  // namespace

double gamma0_sample(const HomogeneousSystem& f, const ProjectivePoint& x,
                     const OracleConfig& cfg) {
  cfg.validate();
  const int D = f.max_degree();
  if (D < 2) throw DimensionError("gamma0_sample: requires D >= 2");
  const ProjectivePoint xh = x.normalized();
  const OrthoFrame frame = ortho_frame(xh);
  const RestrictedJacobian rj(f, frame);
  if (rj.rank_deficient())
    throw RankDeficientError("gamma0_sample: rank-deficient restricted Jacobian",
                             rj.sigma_ratio());

  double best_overall = 0.0;
  for (int k = 2; k <= D; ++k) {
    const auto value = [&](const CVec& v) {
      return rj.solve(higher_derivative_apply(f, xh, k, v)).norm();
    };
    // 20 steps of projected gradient ascent with a numerical gradient over
    // the real coordinates; never returns less than its starting value.
    const auto ascend = [&](CVec v, double val) {
      const double h = 1e-5;
      double step = 0.05;
      for (int iter = 0; iter < 20; ++iter) {
        CVec grad = CVec::Zero(f.num_vars());
        for (Eigen::Index j = 0; j < v.size(); ++j) {
          for (int part = 0; part < 2; ++part) {
            CVec vp = v, vm = v;
            const Complex dir = part == 0 ? Complex(h, 0.0) : Complex(0.0, h);
            vp[j] += dir;
            vm[j] -= dir;
            const double g =
                (value(vp / vp.norm()) - value(vm / vm.norm())) / (2.0 * h);
            grad[j] += part == 0 ? Complex(g, 0.0) : Complex(0.0, g);
          }
        }
        CVec cand = v + step * grad;
        cand /= cand.norm();
        const double cand_val = value(cand);
        if (cand_val > val) {
          val = cand_val;
          v = cand;
        } else {
          step *= 0.5;
        }
      }
      return val;
    };

    // The sample sequence is a fixed seeded stream, so a larger sample count
    // extends (never replaces) a smaller one; ascents run at power-of-two
    // checkpoints of that stream, which makes the result monotone
    // nondecreasing in cfg.samples by construction.
    std::mt19937_64 rng(cfg.seed + static_cast<std::uint64_t>(k));
    CVec best_v = gaussian_unit(rng, f.num_vars());
    double best = value(best_v);
    double with_ascents = 0.0;
    int next_checkpoint = 16;
    for (int s = 1; s <= cfg.samples; ++s) {
      if (s == next_checkpoint) {
        with_ascents = std::max(with_ascents, ascend(best_v, best));
        next_checkpoint *= 2;
      }
      if (s == cfg.samples) break;
      const CVec v = gaussian_unit(rng, f.num_vars());
      const double val = value(v);
      if (val > best) {
        best = val;
        best_v = v;
      }
    }
    best = std::max(best, with_ascents);
    best_overall = std::max(best_overall, std::pow(best, 1.0 / (k - 1)));
  }
  return best_overall;
}

namespace {

Complex horner(const std::vector<Complex>& coeffs, Complex w) {
  Complex acc(0.0, 0.0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
    acc = acc * w + *it;
  return acc;
}

Complex horner_derivative(const std::vector<Complex>& coeffs, Complex w) {
  Complex acc(0.0, 0.0);
  for (size_t j = coeffs.size(); j-- > 1;)
    acc = acc * w + static_cast<double>(j) * coeffs[j];
  return acc;
}

double residual_scale(const std::vector<Complex>& coeffs, Complex w) {
  double acc = 0.0;
  double p = 1.0;
  const double aw = std::abs(w);
  for (const Complex& c : coeffs) {
    acc += std::abs(c) * p;
    p *= aw;
  }
  return std::max(acc, 1e-300);
}

}  // namespace

std::vector<ProjectivePoint> univariate_roots(const HomogeneousSystem& f) {
  if (f.num_equations() != 1)
    throw DimensionError("univariate_roots: requires n = 1");
  const int d = f.degrees()[0];
  // coeffs[j] multiplies z0^{d-j} z1^j; p(w) = f(1, w).
  std::vector<Complex> coeffs(d + 1, Complex(0.0, 0.0));
  for (const Monomial& m : f.equation(0)) coeffs[m.exponents[1]] = m.coeff;
  if (f.equation(0).empty())
    throw DimensionError("univariate_roots: zero form");
  // The root at infinity must be simple: with both leading coefficients
  // zero it is a multiple root, outside this oracle's contract.
  if (d >= 2 && coeffs[d] == Complex(0.0, 0.0) &&
      coeffs[d - 1] == Complex(0.0, 0.0))
    throw DimensionError(
        "univariate_roots: both leading coefficients vanish; the root at "
        "infinity is not simple");

  int m_deg = d;
  while (m_deg > 0 && coeffs[m_deg] == Complex(0.0, 0.0)) --m_deg;
  std::vector<Complex> p(coeffs.begin(), coeffs.begin() + m_deg + 1);

  std::vector<ProjectivePoint> roots;
  if (m_deg > 0) {
    // Aberth-Ehrlich simultaneous iteration.
    double radius = 0.0;
    for (int j = 0; j < m_deg; ++j)
      radius = std::max(radius, std::abs(p[j] / p[m_deg]));
    radius = 1.0 + radius;
    std::vector<Complex> w(m_deg);
    const double pi = std::acos(-1.0);
    for (int i = 0; i < m_deg; ++i) {
      const double angle = 2.0 * pi * i / m_deg + 0.4;
      w[i] = radius * Complex(std::cos(angle), std::sin(angle));
    }
    bool converged = false;
    for (int sweep = 0; sweep < 500 && !converged; ++sweep) {
      converged = true;
      for (int i = 0; i < m_deg; ++i) {
        const Complex pv = horner(p, w[i]);
        if (std::abs(pv) <= 1e-13 * residual_scale(p, w[i])) continue;
        converged = false;
        const Complex dv = horner_derivative(p, w[i]);
        if (dv == Complex(0.0, 0.0)) {
          w[i] += Complex(1e-6, 1e-6);
          continue;
        }
        const Complex newton = pv / dv;
        Complex repulse(0.0, 0.0);
        for (int j = 0; j < m_deg; ++j)
          if (j != i) repulse += Complex(1.0, 0.0) / (w[i] - w[j]);
        const Complex denom = Complex(1.0, 0.0) - newton * repulse;
        w[i] -= (denom == Complex(0.0, 0.0)) ? newton : newton / denom;
      }
    }
    if (!converged)
      throw IterationStallError(
          "univariate_roots: Aberth iteration stalled after 500 sweeps");
    for (int i = 0; i < m_deg; ++i) {
      // A few plain Newton polish steps push the residual to the floor.
      for (int polish = 0; polish < 3; ++polish) {
        const Complex dv = horner_derivative(p, w[i]);
        if (dv == Complex(0.0, 0.0)) break;
        w[i] -= horner(p, w[i]) / dv;
      }
      CVec z(2);
      z[0] = 1.0;
      z[1] = w[i];
      roots.push_back(ProjectivePoint(z).normalized());
    }
  }
  for (int j = m_deg; j < d; ++j) {
    CVec z(2);
    z[0] = 0.0;
    z[1] = 1.0;
    roots.push_back(ProjectivePoint(z));  // root at infinity
  }
  return roots;
}

namespace {

// Deterministic low-discrepancy points on the complex unit sphere: Halton
// uniforms pushed through Box-Muller, then normalized.
CVec quasi_sphere_point(int index, Eigen::Index dim) {
  static const int primes[] = {2,  3,  5,  7,  11, 13, 17, 19,
                               23, 29, 31, 37, 41, 43, 47, 53};
  const auto halton = [](int i, int base) {
    double r = 0.0, f = 1.0;
    while (i > 0) {
      f /= base;
      r += f * (i % base);
      i /= base;
    }
    return r;
  };
  const double pi = std::acos(-1.0);
  CVec v(dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    const double u1 =
        std::max(halton(index + 1, primes[(2 * j) % 16]), 1e-12);
    const double u2 = halton(index + 1, primes[(2 * j + 1) % 16]);
    const double mag = std::sqrt(-2.0 * std::log(u1));
    v[j] = mag * Complex(std::cos(2.0 * pi * u2), std::sin(2.0 * pi * u2));
  }
  const double n = v.norm();
  return n > 1e-12 ? CVec(v / n) : CVec(CVec::Unit(dim, 0));
}

}  // namespace

std::vector<ProjectivePoint> multistart_solve(const HomogeneousSystem& f,
                                              int grid_size,
                                              const OracleConfig& cfg) {
  cfg.validate();
  if (f.num_equations() > 2 || f.max_degree() > 4)
    throw DimensionError("multistart_solve: requires n <= 2 and D <= 4");
  const double fnorm = bw_norm(f);
  std::vector<ProjectivePoint> roots;
  const int offset = static_cast<int>(cfg.seed % 100000);
  for (int s = 0; s < grid_size; ++s) {
    ProjectivePoint z(quasi_sphere_point(s + offset, f.num_vars()));
    bool ok = true;
    try {
      for (int iter = 0; iter < 60; ++iter) {
        if (evaluate(f, z).norm() <= 1e-13 * fnorm) break;
        z = newton_step(f, z);
      }
    } catch (const RankDeficientError&) {
      ok = false;
    }
    if (!ok || evaluate(f, z).norm() > 1e-13 * fnorm) continue;
    if (!certify(f, z, kApproxZeroThreshold).certified) continue;
    bool duplicate = false;
    for (const ProjectivePoint& r : roots)
      if (d_riemann(r, z) < 1e-6) {
        duplicate = true;
        break;
      }
    if (!duplicate) roots.push_back(z);
  }
  return roots;
}

}  // namespace condtrack
