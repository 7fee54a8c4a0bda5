#include <doctest.h>

#include <cmath>
#include <random>

#include "condtrack/homotopy.hpp"
#include "condtrack/invariants.hpp"
#include "condtrack/newton_alpha.hpp"
#include "condtrack/sampling.hpp"
#include "test_helpers.hpp"

using namespace condtrack;
using testing::make_system;
using testing::point2;

namespace {

// Two BW-orthonormal degree-2 binary forms.
LinearHomotopy orthonormal_pair_homotopy() {
  const auto fa = make_system({2}, {{{{2, 0}, Complex(1.0, 0.0)}}});
  const auto fb = make_system({2}, {{{{0, 2}, Complex(1.0, 0.0)}}});
  return LinearHomotopy(fa, fb);
}

// Dense-trapezoid oracle for the projective arc length.
double trapezoid_arc(const HomotopyPath& h, double t0, double t1, int n) {
  double acc = 0.0;
  const double step = (t1 - t0) / n;
  for (int i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    acc += w * h.speed(t0 + i * step);
  }
  return acc * step;
}

}  // namespace

TEST_CASE("at / derivative_at: interpolation and domain checks") {
  const auto fa = testing::sqrt2_z0z1();
  const auto fb = make_system({2}, {{{{2, 0}, Complex(2.0, 0.0)}}});
  const LinearHomotopy h(fa, fb);
  CHECK(bw_norm(linear_combination(Complex(1, 0), h.at(0.0), Complex(-1, 0),
                                   fa)) <= 1e-15);
  CHECK(bw_norm(linear_combination(Complex(1, 0), h.at(1.0), Complex(-1, 0),
                                   fb)) <= 1e-15);
  // Midpoint is the coefficientwise average.
  const auto mid = h.at(0.5);
  const auto avg = linear_combination(Complex(0.5, 0), fa, Complex(0.5, 0), fb);
  CHECK(bw_norm(linear_combination(Complex(1, 0), mid, Complex(-1, 0), avg)) <=
        1e-15);
  // The derivative is constant in t.
  const auto d1 = h.derivative_at(0.1);
  const auto d2 = h.derivative_at(0.9);
  CHECK(bw_norm(linear_combination(Complex(1, 0), d1, Complex(-1, 0), d2)) <=
        1e-15);
  CHECK_THROWS_AS(h.at(-0.5), DimensionError);
  CHECK_THROWS_AS(h.at(1.5), DimensionError);
}

TEST_CASE("speed: radial paths, orthonormal endpoints, scaling invariance") {
  const auto fa = testing::sqrt2_z0z1();
  const LinearHomotopy radial(fa, scale(Complex(2.0, 0.0), fa));
  for (double t : {0.0, 0.3, 0.7, 1.0}) CHECK(radial.speed(t) <= 1e-12);

  const LinearHomotopy ortho = orthonormal_pair_homotopy();
  CHECK(ortho.speed(0.0) == doctest::Approx(1.0).epsilon(1e-12));

  const LinearHomotopy scaled(scale(Complex(0.0, 3.0), ortho.f_start()),
                              scale(Complex(0.0, 3.0), ortho.f_end()));
  for (double t : {0.0, 0.25, 0.6})
    CHECK(scaled.speed(t) == doctest::Approx(ortho.speed(t)).epsilon(1e-12));
}

TEST_CASE("arc_length: closed form pi/2, oracle cross-check, additivity") {
  const LinearHomotopy ortho = orthonormal_pair_homotopy();
  CHECK(arc_length(ortho, 0.2, 0.2, 1e-10) == 0.0);

  const double full = arc_length(ortho, 0.0, 1.0, 1e-10);
  CHECK(full == doctest::Approx(std::acos(-1.0) / 2.0).epsilon(1e-9));
  CHECK(full == doctest::Approx(trapezoid_arc(ortho, 0.0, 1.0, 200000))
                    .epsilon(1e-8));

  const double tol = 1e-9;
  const double left = arc_length(ortho, 0.0, 0.37, tol);
  const double right = arc_length(ortho, 0.37, 1.0, tol);
  CHECK(std::abs(full - left - right) <= 2.0 * tol);

  const auto fa = testing::sqrt2_z0z1();
  const LinearHomotopy radial(fa, scale(Complex(2.0, 0.0), fa));
  CHECK(arc_length(radial, 0.0, 1.0, 1e-10) <= 1e-10);
}

TEST_CASE("cached Gram fast paths match first-principles evaluation") {
  std::mt19937_64 rng(211);
  for (int rep = 0; rep < 8; ++rep) {
    const auto fa = sampling::bw_gaussian_system(rng, {2, 3});
    const auto fb = sampling::bw_gaussian_system(rng, {2, 3});
    const LinearHomotopy h(fa, fb);
    for (double t : {0.07, 0.35, 0.62, 0.93}) {
      CHECK(h.speed(t) ==
            doctest::Approx(h.HomotopyPath::speed(t)).epsilon(1e-12));
      const auto y = sampling::random_unit_point(rng, 3);
      const CVec fast = h.normalized_value_sampler(y.coords())(t);
      const CVec slow = evaluate(normalize(h.at(t)), y);
      CHECK((fast - slow).norm() <= 1e-12 * std::max(1.0, slow.norm()));
    }
  }
}

TEST_CASE("speed and arc length are invariant under a common unitary") {
  std::mt19937_64 rng(89);
  const auto fa = normalize(sampling::bw_gaussian_system(rng, {2, 3}));
  const auto fb = normalize(sampling::bw_gaussian_system(rng, {2, 3}));
  const LinearHomotopy h(fa, fb);
  const CMat u = sampling::random_unitary(rng, 3);
  const LinearHomotopy hu(compose_unitary(fa, u), compose_unitary(fb, u));
  for (double t : {0.0, 0.3, 0.8, 1.0})
    CHECK(hu.speed(t) == doctest::Approx(h.speed(t)).epsilon(1e-10));
  CHECK(arc_length(hu, 0.0, 1.0, 1e-10) ==
        doctest::Approx(arc_length(h, 0.0, 1.0, 1e-10)).epsilon(1e-8));
}

TEST_CASE("condition_length: constant and radial paths vanish") {
  const StartPair start = canonical_start(1, {2});
  const LinearHomotopy constant(start.system, start.system);
  const std::vector<std::pair<double, ProjectivePoint>> samples = {
      {0.0, start.zeros[0]}, {1.0, start.zeros[0]}};
  CHECK(condition_length(constant, samples, 1e-8) <= 1e-8);

  const LinearHomotopy radial(start.system,
                              scale(Complex(2.0, 0.0), start.system));
  CHECK(condition_length(radial, samples, 1e-8) <= 1e-8);
}

TEST_CASE("condition_length: profile is additive over its sample grid") {
  std::mt19937_64 rng(97);
  const StartPair start = unit_roots_start(1, {3});
  const auto target = normalize(sampling::bw_gaussian_system(rng, {3}));
  const LinearHomotopy h(normalize(start.system), target);
  // A lifted path seeded by a few Newton-corrected waypoints.
  std::vector<std::pair<double, ProjectivePoint>> samples;
  ProjectivePoint x = start.zeros[0];
  samples.emplace_back(0.0, x);
  for (double t : {0.02, 0.05, 0.1, 0.2, 0.35, 0.5, 0.65, 0.8, 0.9, 1.0}) {
    for (int i = 0; i < 8; ++i) x = newton_step(h.at(t), x);
    samples.emplace_back(t, x);
  }
  const ConditionLengthProfile profile =
      condition_length_profile(h, samples, 1e-7);
  CHECK(profile.increments.size() == samples.size() - 1);
  double sum = 0.0;
  for (double inc : profile.increments) {
    CHECK(inc >= 0.0);
    sum += inc;
  }
  CHECK(profile.total == doctest::Approx(sum).epsilon(1e-12));
  CHECK(profile.total > 0.0);
}

TEST_CASE("canonical_start: systems, zeros, minimal mu") {
  const StartPair pair = canonical_start(2, {2, 3});
  CHECK(pair.system.equation(0).size() == 1);
  CHECK(pair.system.equation(0)[0].exponents == std::vector<int>{1, 1, 0});
  CHECK(std::abs(pair.system.equation(0)[0].coeff -
                 Complex(std::sqrt(2.0), 0.0)) <= 1e-15);
  CHECK(pair.system.equation(1)[0].exponents == std::vector<int>{2, 0, 1});
  CHECK(std::abs(pair.system.equation(1)[0].coeff -
                 Complex(std::sqrt(3.0), 0.0)) <= 1e-15);
  CHECK(pair.zeros.size() == 1);
  CHECK(mu(pair.system, pair.zeros[0]) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("unit_roots_start: all product roots, certified with beta0 = 0") {
  const StartPair pair = unit_roots_start(1, {3});
  CHECK(pair.zeros.size() == 3);
  const double pi = std::acos(-1.0);
  for (int k = 0; k < 3; ++k) {
    const auto expected =
        point2(1.0, Complex(std::cos(2 * pi * k / 3), std::sin(2 * pi * k / 3)));
    bool found = false;
    for (const auto& z : pair.zeros)
      if (d_riemann(z, expected) <= 1e-12) found = true;
    CHECK(found);
  }
  for (const auto& z : pair.zeros) {
    const AlphaCertificate cert = certify(pair.system, z);
    CHECK(cert.certified);
    CHECK(beta0(pair.system, z) <= 1e-13);
  }

  const StartPair big = unit_roots_start(2, {2, 3});
  CHECK(big.zeros.size() == 6);
}

TEST_CASE("a zero system along the path is a hard error") {
  const auto fa = testing::sqrt2_z0z1();
  const LinearHomotopy through_zero(fa, scale(Complex(-1.0, 0.0), fa));
  CHECK_THROWS_AS(through_zero.speed(0.5), ZeroSystemError);
  CHECK_THROWS_AS(arc_length(through_zero, 0.0, 1.0, 1e-8), ZeroSystemError);
  CHECK_THROWS_AS(normalize(through_zero.at(0.5)), ZeroSystemError);
  const auto sampler =
      through_zero.normalized_value_sampler(testing::point2(1.0, 0.3).coords());
  CHECK_THROWS_AS(sampler(0.5), ZeroSystemError);
}

TEST_CASE("linear homotopy rejects mismatched endpoints and bad domains") {
  const auto fa = testing::sqrt2_z0z1();
  const auto fb = make_system({3}, {{{{3, 0}, Complex(1.0, 0.0)}}});
  CHECK_THROWS_AS(LinearHomotopy(fa, fb), DimensionError);
  CHECK_THROWS_AS(LinearHomotopy(fa, fa, 1.0, 0.0), DimensionError);
}
