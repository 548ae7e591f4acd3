#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "schur/radial_geometry.hpp"

namespace {

using schur::RadialProfile;

RadialProfile sampled_round(int n, double radius, std::size_t intervals) {
  const double L = std::numbers::pi * radius;
  std::vector<double> phi(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    // Measure from the nearer pole so both ends carry full relative accuracy.
    const std::size_t j = std::min(i, intervals - i);
    phi[i] = radius * std::sin(std::numbers::pi * static_cast<double>(j) / intervals);
  }
  return RadialProfile::from_samples(n, L, std::move(phi));
}

double max_abs_error(const std::vector<double>& v, double expected) {
  double e = 0.0;
  for (double x : v) e = std::max(e, std::abs(x - expected));
  return e;
}

TEST(Curvature, UnitRoundSphereIsEinstein) {
  const auto p = sampled_round(5, 1.0, 4096);
  const auto c = schur::curvature(p);
  EXPECT_LT(max_abs_error(c.R, 20.0), 1e-7);
  EXPECT_LT(max_abs_error(c.rho_r, 4.0), 1e-7);
  EXPECT_LT(max_abs_error(c.rho_t, 4.0), 1e-7);
  for (double q : c.rico_sq) EXPECT_LT(q, 1e-14);
  EXPECT_NEAR(schur::min_ricci_eigenvalue(c), 4.0, 1e-7);
}

TEST(Curvature, RadiusTwoScalesScalarCurvature) {
  const auto p = sampled_round(5, 2.0, 4096);
  const auto c = schur::curvature(p);
  EXPECT_LT(max_abs_error(c.R, 5.0), 1e-7);
}

TEST(Curvature, TraceIdentityHoldsPointwise) {
  const auto p = sampled_round(4, 1.3, 1024);
  const auto c = schur::curvature(p);
  for (std::size_t i = 0; i < p.size(); ++i) {
    EXPECT_LE(std::abs(c.R[i] - c.rho_r[i] - 3.0 * c.rho_t[i]), 1e-12 * (1.0 + std::abs(c.R[i])));
  }
}

TEST(Curvature, ErrorConvergesAtThirdOrderOrBetter) {
  // A non-Einstein analytic profile: phi = sin s (1 + a sin^2 s).
  const double a = 0.2;
  auto build = [a](std::size_t intervals) {
    std::vector<double> phi(intervals + 1);
    for (std::size_t i = 0; i <= intervals; ++i) {
      const double sn = std::sin(std::numbers::pi * static_cast<double>(std::min(i, intervals - i)) / intervals);
      phi[i] = sn * (1.0 + a * sn * sn);
    }
    return RadialProfile::from_samples(3, std::numbers::pi, std::move(phi));
  };
  auto exact_R = [a](double s) {
    const double sn = std::sin(s), cs = std::cos(s);
    const double phi = sn * (1 + a * sn * sn);
    const double d1 = cs * (1 + 3 * a * sn * sn);
    const double d2 = -sn * (1 + 3 * a * sn * sn) + 6 * a * sn * cs * cs;
    return -4.0 * d2 / phi + 2.0 * (1 - d1 * d1) / (phi * phi);
  };
  auto error = [&](std::size_t intervals) {
    const auto p = build(intervals);
    const auto c = schur::curvature(p);
    // The closed form cancels near the poles; there the limit
    // R(0) = -n(n-1) phi'''(0) = 6 (1 - 6a) is the oracle.
    double e = std::abs(c.R.front() - 6.0 * (1.0 - 6.0 * a));
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p.s(i) < 0.1 || p.s(i) > std::numbers::pi - 0.1) continue;
      e = std::max(e, std::abs(c.R[i] - exact_R(p.s(i))));
    }
    return e;
  };
  const double e1 = error(256);
  const double e2 = error(512);
  EXPECT_GE(std::log2(e1 / e2), 3.0) << e1 << " " << e2;
}

TEST(Curvature, SplitIdentityForArbitraryConstant) {
  const auto p = sampled_round(5, 1.0, 512);
  auto c = schur::curvature(p);
  // Perturb the eigenvalues to exercise a non-Einstein point set.
  for (std::size_t i = 0; i < p.size(); ++i) {
    c.rho_r[i] += 0.3 * std::cos(p.s(i));
    c.R[i] = c.rho_r[i] + 4.0 * c.rho_t[i];
    const double gap = c.rho_r[i] - c.rho_t[i];
    c.rico_sq[i] = 0.8 * gap * gap;
  }
  for (double cst : {0.0, 7.5, 20.0, -3.0}) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double split = c.rico_sq[i] + (c.R[i] - cst) * (c.R[i] - cst) / 5.0;
      const double direct = std::pow(c.rho_r[i] - cst / 5.0, 2) + 4.0 * std::pow(c.rho_t[i] - cst / 5.0, 2);
      EXPECT_NEAR(split, direct, 1e-12 * std::max(1.0, direct));
    }
  }
}

TEST(Quadrature, VolumeOfUnitThreeSphere) {
  const auto p = sampled_round(3, 1.0, 4096);
  const auto q = schur::Quadrature::for_profile(p);
  EXPECT_NEAR(q.volume(), 2.0 * std::numbers::pi * std::numbers::pi, 1e-10);
  EXPECT_NEAR(schur::sphere_volume(3), 2.0 * std::numbers::pi * std::numbers::pi, 1e-14);
}

TEST(Quadrature, ConstantTimesVolume) {
  const auto p = sampled_round(4, 1.0, 2048);
  const auto q = schur::Quadrature::for_profile(p);
  const auto c = schur::curvature(p);
  EXPECT_NEAR(schur::integrate(c.R, q), 12.0 * schur::sphere_volume(4), 1e-7);
  std::vector<double> zero(p.size(), 0.0);
  EXPECT_EQ(schur::integrate(zero, q), 0.0);
  std::vector<double> wrong(p.size() + 1, 1.0);
  EXPECT_THROW(schur::integrate(wrong, q), std::invalid_argument);
}

TEST(Quadrature, ScalingCovariance) {
  const double c = 1.7;
  const auto p1 = sampled_round(5, 1.0, 1024);
  const auto p2 = sampled_round(5, c, 1024);
  const auto q1 = schur::Quadrature::for_profile(p1);
  const auto q2 = schur::Quadrature::for_profile(p2);
  EXPECT_NEAR(q2.volume() / q1.volume(), std::pow(c, 5), 1e-9 * std::pow(c, 5));
  const auto c1 = schur::curvature(p1);
  const auto c2 = schur::curvature(p2);
  EXPECT_NEAR(schur::integrate(c2.R, q2) / schur::integrate(c1.R, q1), std::pow(c, 3), 1e-8);
}

TEST(Validation, RejectsOpenPole) {
  std::vector<double> phi(257);
  for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = std::sin(std::numbers::pi * i / 256.0);
  phi.back() = 0.0;
  phi.front() = 0.1;
  try {
    RadialProfile::from_samples(5, std::numbers::pi, phi);
    FAIL() << "expected rejection";
  } catch (const schur::ProfileError& e) {
    ASSERT_FALSE(e.issues().empty());
    EXPECT_NE(e.issues().front().find("pole closure"), std::string::npos);
  }
}

TEST(Validation, RejectsConePoleAndNegativeInterior) {
  std::vector<double> cone(257);
  for (std::size_t i = 0; i < cone.size(); ++i) cone[i] = 2.0 * std::sin(std::numbers::pi * i / 256.0);
  cone.back() = 0.0;
  EXPECT_THROW(RadialProfile::from_samples(4, std::numbers::pi, cone), schur::ProfileError);

  std::vector<double> dip(257);
  for (std::size_t i = 0; i < dip.size(); ++i) dip[i] = std::sin(std::numbers::pi * i / 256.0);
  dip.back() = 0.0;
  dip[128] = -0.1;
  EXPECT_THROW(RadialProfile::from_samples(4, std::numbers::pi, dip), schur::ProfileError);
}

TEST(Validation, RejectsSmallDimensionAndCoarseGrid) {
  std::vector<double> phi(33, 0.5);
  try {
    RadialProfile::from_samples(2, 1.0, phi);
    FAIL();
  } catch (const schur::ProfileError& e) {
    EXPECT_EQ(e.issues().size(), 2u);
  }
}

}  // namespace
