#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "condtrack/homotopy.hpp"
#include "condtrack/invariants.hpp"
#include "condtrack/oracle.hpp"
#include "condtrack/sampling.hpp"
#include "test_helpers.hpp"

using namespace condtrack;
using testing::make_system;
using testing::point2;

TEST_CASE("mu: canonical start attains sqrt(n), worked cases") {
  CHECK(mu(testing::sqrt2_z0z1(), point2(1.0, 0.0)) ==
        doctest::Approx(1.0).epsilon(1e-12));

  const StartPair start = canonical_start(2, {2, 3});
  CHECK(mu(start.system, start.zeros[0]) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  const auto degenerate = make_system({2}, {{{{0, 2}, Complex(1.0, 0.0)}}});
  CHECK(mu(degenerate, point2(1.0, 0.0)) ==
        std::numeric_limits<double>::infinity());
}

TEST_CASE("mu agrees with the explicit inverse-times-scaling operator norm") {
  std::mt19937_64 rng(223);
  for (int rep = 0; rep < 15; ++rep) {
    const auto f = sampling::bw_gaussian_system(rng, {2, 3});
    const ProjectivePoint x(3.7 * sampling::gaussian_vector(rng, 3));
    const double via_svd = mu(f, x);
    if (!std::isfinite(via_svd)) continue;
    const OrthoFrame frame = ortho_frame(x);
    CMat scaled = CMat(jacobian(f, x.coords()) * frame.basis).inverse();
    for (int i = 0; i < f.num_equations(); ++i)
      scaled.col(i) *= std::sqrt(double(f.degrees()[i])) *
                       std::pow(x.norm(), f.degrees()[i] - 1);
    Eigen::JacobiSVD<CMat> svd(scaled);
    CHECK(via_svd ==
          doctest::Approx(bw_norm(f) * svd.singularValues()[0]).epsilon(1e-10));
  }
}

TEST_CASE("mu: scale invariance and the sqrt(n) floor") {
  std::mt19937_64 rng(47);
  for (int rep = 0; rep < 25; ++rep) {
    const auto f = sampling::bw_gaussian_system(rng, {2, 3, 2});
    const auto x = sampling::random_unit_point(rng, 4);
    const double base = mu(f, x);
    if (!std::isfinite(base)) continue;
    CHECK(base >= std::sqrt(3.0) - 1e-9);
    const Complex l1 = 3.7 * sampling::standard_complex_gaussian(rng);
    const Complex l2 = 0.2 * sampling::standard_complex_gaussian(rng);
    if (std::abs(l1) < 1e-3 || std::abs(l2) < 1e-3) continue;
    CHECK(mu(scale(l1, f), ProjectivePoint(l2 * x.coords())) ==
          doctest::Approx(base).epsilon(1e-10));
  }
}

TEST_CASE("beta0: worked example, zero at zeros, scale invariance") {
  const auto f = testing::sqrt2_z0z1();
  CHECK(beta0(f, point2(1.0, 0.0)) <= 1e-15);
  CHECK(beta0(f, point2(1.0, 0.1)) ==
        doctest::Approx(0.1 / 0.99).epsilon(1e-12));
  CHECK(beta0(scale(Complex(3.0, 4.0), f), point2(1.0, 0.1)) ==
        doctest::Approx(0.1 / 0.99).epsilon(1e-10));
  CHECK(beta0(f, ProjectivePoint(Complex(0.0, 2.0) * point2(1.0, 0.1).coords())) ==
        doctest::Approx(0.1 / 0.99).epsilon(1e-10));
}

TEST_CASE("delta: diag(d_i) weighting and the tan-theta identity") {
  const auto f = testing::sqrt2_z0z1();
  CHECK(delta(f, point2(1.0, 0.0)) <= 1e-15);
  CHECK(delta(f, point2(1.0, 0.1)) ==
        doctest::Approx(0.2 / 0.99).epsilon(1e-12));

  std::mt19937_64 rng(53);
  for (int rep = 0; rep < 20; ++rep) {
    const auto g = normalize(sampling::bw_gaussian_system(rng, {2, 3}));
    const auto x = sampling::random_unit_point(rng, 3);
    const double dl = delta(g, x);
    if (dl < 1e-6) continue;
    CHECK(std::tan(kernel_angle(g, x)) == doctest::Approx(dl).epsilon(1e-8));
    CHECK(dl <= std::sqrt(3.0) * mu(g, x) + 1e-9);
  }
}

TEST_CASE("phi: worked examples and linearity") {
  const auto f = testing::sqrt2_z0z1();
  const auto e0 = point2(1.0, 0.0);
  CHECK(phi(f, f, e0) == 0.0);

  const Complex c(0.3, -0.4);
  const auto perturbed = make_system(
      {2},
      {{{{1, 1}, Complex(std::sqrt(2.0), 0.0)}, {{2, 0}, c}}});
  CHECK(phi(f, perturbed, e0) ==
        doctest::Approx(std::abs(c) / std::sqrt(2.0)).epsilon(1e-12));

  const auto doubled = make_system(
      {2},
      {{{{1, 1}, Complex(std::sqrt(2.0), 0.0)}, {{2, 0}, 2.0 * c}}});
  CHECK(phi(f, doubled, e0) ==
        doctest::Approx(2.0 * std::abs(c) / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("gauges: worked examples") {
  const auto f = testing::sqrt2_z0z1();
  const auto e0 = point2(1.0, 0.0);
  const ComparisonGauge trivial = gauges(f, f, e0, e0);
  CHECK(trivial.u == 0.0);
  CHECK(trivial.v <= 1e-12);

  const ComparisonGauge uv = gauges(f, f, e0, point2(1.0, 0.01));
  CHECK(uv.u ==
        doctest::Approx(std::sqrt(2.0) * std::atan(0.01)).epsilon(1e-10));

  const ComparisonGauge anti = gauges(f, scale(Complex(-1.0, 0.0), f), e0, e0);
  CHECK(anti.v ==
        doctest::Approx(2.0 * std::sqrt(2.0) * 1.0).epsilon(1e-10));
}

TEST_CASE("check_sandwich: identity, boundary, and preconditions") {
  const auto f = testing::sqrt2_z0z1();
  const auto e0 = point2(1.0, 0.0);
  const SandwichVerdict same = check_sandwich(f, f, e0, e0);
  CHECK(same.ok);
  CHECK(same.eps_form_ok);
  CHECK(same.mu_fx == doctest::Approx(same.mu_gy).epsilon(1e-12));

  // Boundary stress: u at (nearly) 1/20, v = 0.
  const double angle = 2.0 * (1.0 / 20.0) / (std::pow(2.0, 1.5) * 1.0) *
                       (1.0 - 1e-12);
  const SandwichVerdict boundary =
      check_sandwich(f, f, e0, point2(std::cos(angle), std::sin(angle)));
  CHECK(boundary.u == doctest::Approx(1.0 / 20.0).epsilon(1e-9));
  CHECK(boundary.ok);

  const auto far = point2(1.0, 1.0);
  CHECK_THROWS_AS(check_sandwich(f, f, e0, far), GaugeOutOfRangeError);
}

TEST_CASE("mu comparison at a single point (v-form) and single system (u-form)") {
  std::mt19937_64 rng(59);
  int tested_v = 0, tested_u = 0;
  while (tested_v < 25 || tested_u < 25) {
    const auto f = normalize(sampling::bw_gaussian_system(rng, {2, 3}));
    const auto x = sampling::random_unit_point(rng, 3);
    const double mu_fx = mu(f, x);
    if (!std::isfinite(mu_fx)) continue;

    if (tested_v < 25) {
      // v < 1: (1-v) mu(g,x) <= mu(f,x) <= (1+v) mu(g,x).
      const auto noise = sampling::bw_gaussian_system(rng, {2, 3});
      const double rho =
          0.5 / (std::sqrt(3.0) * mu_fx * std::max(bw_norm(noise), 1e-9));
      const auto g = normalize(linear_combination(
          Complex(1.0, 0.0), f, Complex(rho, 0.0), noise));
      const double v =
          std::sqrt(3.0) * mu_fx *
          bw_norm(linear_combination(Complex(1.0, 0.0), f,
                                     Complex(-1.0, 0.0), g));
      const double mu_gx = mu(g, x);
      if (v < 1.0 && std::isfinite(mu_gx)) {
        CHECK((1.0 - v) * mu_gx <= mu_fx + 1e-9);
        CHECK(mu_fx <= (1.0 + v) * mu_gx + 1e-9);
        ++tested_v;
      }
    }

    if (tested_u < 25) {
      // u < 1/19: mu(f,y) <= (1 + 3.805 u) mu(f,x).
      const double angle = (1.0 / 19.0) * 0.95 * 2.0 /
                           (std::pow(3.0, 1.5) * mu_fx);
      const auto y = sampling::perturb_within(rng, x, angle);
      const double u = 0.5 * std::pow(3.0, 1.5) * mu_fx * d_riemann(x, y);
      if (u < 1.0 / 19.0) {
        CHECK(mu(f, y) <= (1.0 + 3.805 * u) * mu_fx + 1e-9);
        ++tested_u;
      }
    }
  }
}

TEST_CASE("invariants are unitarily invariant") {
  std::mt19937_64 rng(61);
  for (int rep = 0; rep < 10; ++rep) {
    const auto f = normalize(sampling::bw_gaussian_system(rng, {2, 3}));
    const auto x = sampling::random_unit_point(rng, 3);
    if (!std::isfinite(mu(f, x))) continue;
    const CMat u = sampling::random_unitary(rng, 3);
    const auto fu = compose_unitary(f, u);
    const ProjectivePoint xu(u.adjoint() * x.coords());
    CHECK(mu(fu, xu) == doctest::Approx(mu(f, x)).epsilon(1e-8));
    CHECK(beta0(fu, xu) == doctest::Approx(beta0(f, x)).epsilon(1e-8));
    CHECK(delta(fu, xu) == doctest::Approx(delta(f, x)).epsilon(1e-8));
    const auto g = normalize(sampling::bw_gaussian_system(rng, {2, 3}));
    const auto gu = compose_unitary(g, u);
    CHECK(phi(fu, gu, xu) == doctest::Approx(phi(f, g, x)).epsilon(1e-8));
  }
}

TEST_CASE("gamma0 lower bound stays below (D^{3/2}/2) mu") {
  std::mt19937_64 rng(67);
  OracleConfig cfg;
  cfg.samples = 256;
  cfg.seed = 99;
  for (int rep = 0; rep < 8; ++rep) {
    const auto f = normalize(sampling::bw_gaussian_system(rng, {2, 3}));
    const auto x = sampling::random_unit_point(rng, 3);
    const double m = mu(f, x);
    if (!std::isfinite(m)) continue;
    CHECK(gamma0_sample(f, x, cfg) <=
          0.5 * std::pow(3.0, 1.5) * m + 1e-9);
  }
}

TEST_CASE("invariant report ties the bounds together") {
  const auto f = testing::sqrt2_z0z1();
  const auto x = point2(1.0, 0.1);
  const InvariantReport r = invariant_report(f, x);
  CHECK(r.gamma0_bound ==
        doctest::Approx(0.5 * std::pow(2.0, 1.5) * r.mu).epsilon(1e-14));
  CHECK(r.alpha_bound == doctest::Approx(r.beta0 * r.gamma0_bound).epsilon(1e-14));
  CHECK(r.mu == doctest::Approx(1.01 / 0.99).epsilon(1e-12));
  CHECK(r.delta == doctest::Approx(2.0 * r.beta0).epsilon(1e-12));
}
