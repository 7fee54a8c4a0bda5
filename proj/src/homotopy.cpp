#include "condtrack/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "condtrack/invariants.hpp"
#include "condtrack/newton_alpha.hpp"

namespace condtrack {

double HomotopyPath::speed(double t) const {
  const HomogeneousSystem ft = at(t);
  const HomogeneousSystem dft = derivative_at(t);
  const double n2 = bw_norm(ft) * bw_norm(ft);
  if (n2 <= 0.0) throw ZeroSystemError("speed: zero system on path");
  const Complex proj = bw_inner(dft, ft) / n2;
  const HomogeneousSystem ortho =
      linear_combination(Complex(1.0, 0.0), dft, -proj, ft);
  return bw_norm(ortho) / std::sqrt(n2);
}

double HomotopyPath::norm_at(double t) const { return bw_norm(at(t)); }

std::function<CVec(double)> HomotopyPath::normalized_value_sampler(
    const CVec& x) const {
  return [this, x](double t) {
    const HomogeneousSystem ft = at(t);
    const double n = bw_norm(ft);
    if (n <= 0.0) throw ZeroSystemError("zero system on path");
    return CVec(evaluate(ft, x) / n);
  };
}

LinearHomotopy::LinearHomotopy(HomogeneousSystem f_start,
                               HomogeneousSystem f_end, double a, double b)
    : f_start_(std::move(f_start)),
      f_end_(std::move(f_end)),
      a_(a),
      b_(b) {
  if (f_start_.degrees() != f_end_.degrees())
    throw DimensionError("LinearHomotopy: endpoints differ in size or degrees");
  if (!(a_ < b_)) throw DimensionError("LinearHomotopy: domain must have a < b");
  const double na = bw_norm(f_start_);
  const double nb = bw_norm(f_end_);
  gram_aa_ = na * na;
  gram_bb_ = nb * nb;
  gram_ab_ = bw_inner(f_start_, f_end_);
  if (gram_aa_ == 0.0 || gram_bb_ == 0.0)
    throw ZeroSystemError("LinearHomotopy: zero endpoint system");
}

void LinearHomotopy::require_in_domain(double t) const {
  if (t < a_ - 1e-12 * (b_ - a_) || t > b_ + 1e-12 * (b_ - a_)) {
    std::ostringstream os;
    os << "t = " << t << " outside homotopy domain [" << a_ << ", " << b_
       << "]";
    throw DimensionError(os.str());
  }
}

double LinearHomotopy::norm2_at_tau(double tau) const {
  const double s = 1.0 - tau;
  return s * s * gram_aa_ + tau * tau * gram_bb_ +
         2.0 * s * tau * gram_ab_.real();
}

HomogeneousSystem LinearHomotopy::at(double t) const {
  require_in_domain(t);
  const double tv = tau(t);
  return linear_combination(Complex(1.0 - tv, 0.0), f_start_,
                            Complex(tv, 0.0), f_end_);
}

HomogeneousSystem LinearHomotopy::derivative_at(double t) const {
  require_in_domain(t);
  const double c = 1.0 / (b_ - a_);
  return linear_combination(Complex(-c, 0.0), f_start_, Complex(c, 0.0),
                            f_end_);
}

double LinearHomotopy::norm_at(double t) const {
  require_in_domain(t);
  return std::sqrt(std::max(0.0, norm2_at_tau(tau(t))));
}

double LinearHomotopy::speed(double t) const {
  require_in_domain(t);
  const double tv = tau(t);
  const double n2 = norm2_at_tau(tv);
  if (n2 <= 1e-28 * std::max(gram_aa_, gram_bb_))
    throw ZeroSystemError("speed: zero system on path");
  const double c = 1.0 / (b_ - a_);
  // <df, f_t> and ||df||^2 from the endpoint Gram matrix.
  const Complex dot_df_ft =
      c * ((1.0 - tv) * (std::conj(gram_ab_) - gram_aa_) +
           tv * (gram_bb_ - gram_ab_));
  const double df2 = c * c * (gram_aa_ + gram_bb_ - 2.0 * gram_ab_.real());
  const double ortho2 = std::max(0.0, df2 - std::norm(dot_df_ft) / n2);
  return std::sqrt(ortho2 / n2);
}

std::function<CVec(double)> LinearHomotopy::normalized_value_sampler(
    const CVec& x) const {
  const CVec va = evaluate(f_start_, x);
  const CVec vb = evaluate(f_end_, x);
  const double floor = 1e-28 * std::max(gram_aa_, gram_bb_);
  return [this, va, vb, floor](double t) {
    const double tv = tau(t);
    const double n2 = norm2_at_tau(tv);
    if (n2 <= floor) throw ZeroSystemError("zero system on path");
    return CVec(((1.0 - tv) * va + tv * vb) / std::sqrt(n2));
  };
}

namespace {

double simpson_rule(double a, double b, double ga, double gm, double gb) {
  return (b - a) / 6.0 * (ga + 4.0 * gm + gb);
}

double adaptive_simpson_rec(const std::function<double(double)>& g, double a,
                            double b, double ga, double gm, double gb,
                            double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double glm = g(lm);
  const double grm = g(rm);
  const double left = simpson_rule(a, m, ga, glm, gm);
  const double right = simpson_rule(m, b, gm, grm, gb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_rec(g, a, m, ga, glm, gm, left, 0.5 * tol,
                              depth - 1) +
         adaptive_simpson_rec(g, m, b, gm, grm, gb, right, 0.5 * tol,
                              depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& g, double a,
                        double b, double tol) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double ga = g(a);
  const double gm = g(m);
  const double gb = g(b);
  const double whole = simpson_rule(a, b, ga, gm, gb);
  return adaptive_simpson_rec(g, a, b, ga, gm, gb, whole, tol, 40);
}

}  // namespace

double arc_length(const HomotopyPath& h, double t0, double t1, double tol) {
  if (t0 > t1) throw DimensionError("arc_length: t0 must be <= t1");
  return adaptive_simpson([&h](double t) { return h.speed(t); }, t0, t1, tol);
}

namespace {

// Phase-align candidate onto ref: multiply by the unit complex scalar making
// <aligned, ref> real nonnegative.
CVec phase_align(const CVec& candidate, const CVec& ref) {
  const Complex inner = ref.dot(candidate);
  const double m = std::abs(inner);
  if (m == 0.0) return candidate;
  return candidate * (std::conj(inner) / m);
}

ProjectivePoint refine_near(const HomogeneousSystem& f,
                            const ProjectivePoint& init) {
  const double fnorm = bw_norm(f);
  ProjectivePoint z = init.normalized();
  for (int i = 0; i < 40; ++i) {
    if (evaluate(f, z).norm() <= 1e-13 * fnorm) break;
    z = newton_step(f, z);
  }
  if (evaluate(f, z).norm() > 1e-12 * fnorm)
    throw RefinementError("condition_length: zero refinement stalled");
  return z;
}

struct LiftedNode {
  ProjectivePoint zeta;
  double integrand;
};

// Integrand sqrt(||df||_f^2 + ||dzeta||_zeta^2) * mu(f_t, zeta_t) at one
// node, with dzeta from phase-aligned central differences of refined zeros.
LiftedNode lifted_node(const HomotopyPath& h, double t,
                       const ProjectivePoint& init, double fd_step) {
  const HomogeneousSystem ft = h.at(t);
  const ProjectivePoint zeta = refine_near(ft, init);
  const double a = h.domain_start();
  const double b = h.domain_end();
  const double tp = std::min(t + fd_step, b);
  const double tm = std::max(t - fd_step, a);
  const CVec zp =
      phase_align(refine_near(h.at(tp), zeta).coords(), zeta.coords());
  const CVec zm =
      phase_align(refine_near(h.at(tm), zeta).coords(), zeta.coords());
  CVec zdot = (zp - zm) / (tp - tm);
  zdot -= zeta.coords() * zeta.coords().dot(zdot);  // tangential part
  const double mu_t = mu(ft, zeta);
  if (!std::isfinite(mu_t))
    throw RankDeficientError("condition_length: rank-deficient lifted zero",
                             0.0);
  return LiftedNode{zeta, std::hypot(h.speed(t), zdot.norm()) * mu_t};
}

}  // namespace

ConditionLengthProfile condition_length_profile(
    const HomotopyPath& h,
    const std::vector<std::pair<double, ProjectivePoint>>& samples,
    double tol) {
  ConditionLengthProfile profile;
  if (samples.size() < 2) return profile;
  for (size_t i = 1; i < samples.size(); ++i)
    if (!(samples[i - 1].first < samples[i].first))
      throw DimensionError("condition_length: samples must increase in t");
  const double span = samples.back().first - samples.front().first;
  const double fd_step =
      std::max(1e-5 * (h.domain_end() - h.domain_start()), 1e-9);

  profile.increments.reserve(samples.size() - 1);
  for (size_t i = 0; i + 1 < samples.size(); ++i) {
    const double t0 = samples[i].first;
    const double t1 = samples[i + 1].first;
    const double subtol = std::max(tol * (t1 - t0) / span, 1e-16);
    // Composite Simpson with doubling; nodes are cached between doublings
    // since each one costs several Newton refinements.
    std::vector<double> vals;   // integrand at m+1 uniform nodes
    ProjectivePoint init = samples[i].second;
    int m = 2;
    {
      vals.resize(3);
      for (int j = 0; j <= 2; ++j) {
        const double t = t0 + (t1 - t0) * j / 2.0;
        const LiftedNode node = lifted_node(h, t, init, fd_step);
        init = node.zeta;
        vals[j] = node.integrand;
      }
    }
    auto composite = [&](const std::vector<double>& v, int intervals) {
      const double hstep = (t1 - t0) / intervals;
      double acc = v.front() + v.back();
      for (int j = 1; j < intervals; ++j) acc += (j % 2 ? 4.0 : 2.0) * v[j];
      return acc * hstep / 3.0;
    };
    double estimate = composite(vals, m);
    for (int round = 0; round < 9; ++round) {
      // Insert midpoints; march the refinement start along the new nodes.
      std::vector<double> next(2 * m + 1);
      ProjectivePoint walk = samples[i].second;
      for (int j = 0; j <= 2 * m; ++j) {
        if (j % 2 == 0) {
          next[j] = vals[j / 2];
        } else {
          const double t = t0 + (t1 - t0) * j / (2.0 * m);
          const LiftedNode node = lifted_node(h, t, walk, fd_step);
          walk = node.zeta;
          next[j] = node.integrand;
        }
      }
      vals = std::move(next);
      m *= 2;
      const double refined = composite(vals, m);
      const double change = std::abs(refined - estimate);
      estimate = refined;
      if (change <= subtol) break;
    }
    profile.increments.push_back(estimate);
    profile.total += estimate;
  }
  return profile;
}

double condition_length(
    const HomotopyPath& h,
    const std::vector<std::pair<double, ProjectivePoint>>& samples,
    double tol) {
  return condition_length_profile(h, samples, tol).total;
}

namespace {

StartPair validated_start(HomogeneousSystem system,
                          std::vector<ProjectivePoint> zeros) {
  const double fnorm = bw_norm(system);
  for (const ProjectivePoint& z : zeros) {
    const ProjectivePoint zn = z.normalized();
    if (evaluate(system, zn).norm() > 1e-12 * std::max(fnorm, 1.0))
      throw RefinementError("start pair: listed zero fails the residual gate");
    if (!std::isfinite(mu(system, zn)))
      throw RankDeficientError("start pair: zero has infinite mu", 0.0);
  }
  return StartPair{std::move(system), std::move(zeros)};
}

}  // namespace

StartPair canonical_start(int n, const std::vector<int>& degrees) {
  if (n < 1 || static_cast<int>(degrees.size()) != n)
    throw DimensionError("canonical_start: need n >= 1 matching degrees");
  std::vector<std::vector<Monomial>> eqs(n);
  for (int i = 0; i < n; ++i) {
    if (degrees[i] < 1) throw DimensionError("canonical_start: degrees >= 1");
    std::vector<int> e(n + 1, 0);
    e[0] = degrees[i] - 1;
    e[i + 1] = 1;
    eqs[i].push_back(
        Monomial{e, Complex(std::sqrt(static_cast<double>(degrees[i])), 0.0)});
  }
  CVec e0 = CVec::Zero(n + 1);
  e0[0] = 1.0;
  return validated_start(HomogeneousSystem(degrees, std::move(eqs)),
                         {ProjectivePoint(e0)});
}

StartPair unit_roots_start(int n, const std::vector<int>& degrees) {
  if (n < 1 || static_cast<int>(degrees.size()) != n)
    throw DimensionError("unit_roots_start: need n >= 1 matching degrees");
  std::vector<std::vector<Monomial>> eqs(n);
  for (int i = 0; i < n; ++i) {
    if (degrees[i] < 1) throw DimensionError("unit_roots_start: degrees >= 1");
    std::vector<int> ei(n + 1, 0), e0(n + 1, 0);
    ei[i + 1] = degrees[i];
    e0[0] = degrees[i];
    eqs[i].push_back(Monomial{ei, Complex(1.0, 0.0)});
    eqs[i].push_back(Monomial{e0, Complex(-1.0, 0.0)});
  }
  HomogeneousSystem system(degrees, std::move(eqs));

  std::vector<ProjectivePoint> zeros;
  std::vector<int> index(n, 0);
  const double pi = std::acos(-1.0);
  while (true) {
    CVec z(n + 1);
    z[0] = 1.0;
    for (int i = 0; i < n; ++i) {
      const double angle = 2.0 * pi * index[i] / degrees[i];
      z[i + 1] = Complex(std::cos(angle), std::sin(angle));
    }
    zeros.push_back(ProjectivePoint(z).normalized());
    int pos = n - 1;
    while (pos >= 0 && ++index[pos] == degrees[pos]) index[pos--] = 0;
    if (pos < 0) break;
  }
  return validated_start(std::move(system), std::move(zeros));
}

}  // namespace condtrack
