#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "schur/radial_geometry.hpp"
#include "schur/scalar_calculus.hpp"
#include "schur/zonal.hpp"

namespace {

using schur::RadialProfile;

RadialProfile unit_round(int n, std::size_t intervals) {
  std::vector<double> phi(intervals + 1), d1(intervals + 1), d2(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    const double s = std::numbers::pi * static_cast<double>(i) / intervals;
    phi[i] = std::sin(std::numbers::pi * static_cast<double>(std::min(i, intervals - i)) / intervals);
    d1[i] = std::cos(s);
    d2[i] = -phi[i];
  }
  return RadialProfile::with_derivatives(n, std::numbers::pi, phi, d1, d2);
}

schur::ZonalField cos_field(const RadialProfile& p) {
  schur::ZonalField f;
  for (std::size_t i = 0; i < p.size(); ++i) {
    f.value.push_back(std::cos(p.s(i)));
    f.d1.push_back(-std::sin(p.s(i)));
    f.d2.push_back(-std::cos(p.s(i)));
  }
  return f;
}

double sup(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

TEST(Laplacian, FirstHarmonicHasEigenvalueN) {
  for (int n : {3, 5, 8}) {
    const auto p = unit_round(n, 1024);
    const auto f = cos_field(p);
    const auto lap = schur::laplacian(f, p);
    for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(lap[i], -n * f.value[i], 1e-12);
  }
}

TEST(Laplacian, ConstantIsHarmonic) {
  const auto p = unit_round(4, 256);
  schur::ZonalField f{std::vector<double>(p.size(), 3.0), std::vector<double>(p.size(), 0.0),
                      std::vector<double>(p.size(), 0.0), false};
  EXPECT_EQ(sup(schur::laplacian(f, p)), 0.0);
  const auto h = schur::hessian_components(f, p);
  EXPECT_EQ(sup(h.radial), 0.0);
  EXPECT_EQ(sup(h.tangential), 0.0);
}

TEST(Hessian, FirstHarmonicIsPureTrace) {
  const int n = 5;
  const auto p = unit_round(n, 512);
  const auto f = cos_field(p);
  const auto h = schur::hessian_components(f, p);
  const auto lap = schur::laplacian(f, p);
  for (std::size_t i = 0; i < p.size(); ++i) {
    EXPECT_NEAR(h.radial[i], -f.value[i], 1e-12);
    EXPECT_NEAR(h.tangential[i], -f.value[i], 1e-12);
    EXPECT_NEAR(h.traceless_norm_sq(i, n), 0.0, 1e-24);
    EXPECT_NEAR(h.radial[i] + (n - 1) * h.tangential[i], lap[i], 1e-12);
    EXPECT_GE(h.norm_sq(i, n) - lap[i] * lap[i] / n, -1e-12);
  }
}

TEST(ZonalHarmonic, EigenResidualAcrossDimensionsAndDegrees) {
  for (int n : {3, 4, 7, 12}) {
    const auto p = unit_round(n, 4096);
    for (int k : {1, 2, 5, 11, 20, 32}) {
      const auto [f, spec] = schur::zonal_harmonic(p, k);
      EXPECT_EQ(spec.lambda, static_cast<double>(k) * (k + n - 1));
      const auto lap = schur::laplacian(f, p);
      double res = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) res = std::max(res, std::abs(lap[i] + spec.lambda * f.value[i]));
      EXPECT_LE(res, 1e-8 * spec.lambda * sup(f.value)) << "n=" << n << " k=" << k;
      EXPECT_TRUE(f.mean_removed);
    }
  }
}

TEST(ZonalHarmonic, UnitNormAndSmallCases) {
  const auto p = unit_round(3, 4096);
  const auto q = schur::Quadrature::for_profile(p);
  const auto [f2, spec2] = schur::zonal_harmonic(p, 2);
  EXPECT_EQ(spec2.lambda, 8.0);
  std::vector<double> sq(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) sq[i] = f2.value[i] * f2.value[i];
  EXPECT_NEAR(schur::integrate(sq, q), 1.0, 1e-10);

  const auto [f1, spec1] = schur::zonal_harmonic(p, 1);
  EXPECT_EQ(spec1.lambda, 3.0);
  const double ratio = f1.value[0];
  for (std::size_t i = 0; i < p.size(); i += 97) EXPECT_NEAR(f1.value[i], ratio * std::cos(p.s(i)), 1e-12);
}

TEST(ZonalHarmonic, RejectsNonRoundProfile) {
  auto q = unit_round(3, 256);
  std::vector<double> phi(257);
  for (std::size_t i = 0; i <= 256; ++i) phi[i] = 2.0 * std::sin(std::numbers::pi * std::min(i, 256 - i) / 256.0);
  const auto big = RadialProfile::from_samples(3, 2.0 * std::numbers::pi, phi);
  EXPECT_THROW(schur::zonal_harmonic(big, 2), std::invalid_argument);
  EXPECT_THROW(schur::zonal_harmonic(q, 0), std::invalid_argument);
}

TEST(ZonalHarmonic, AnalyticNormMatchesClosedForm) {
  // int C_k^a(cos t)^2 sin^{n-1} t dt = pi 2^{1-2a} Gamma(k+2a) / (k! (k+a) Gamma(a)^2)
  for (int n : {3, 5}) {
    for (int k : {1, 4, 9}) {
      const double a = 0.5 * (n - 1);
      const double norm = std::numbers::pi * std::pow(2.0, 1.0 - 2.0 * a) * std::tgamma(k + 2.0 * a) /
                          (std::tgamma(k + 1.0) * (k + a) * std::pow(std::tgamma(a), 2)) *
                          schur::unit_sphere_area(n - 1);
      const schur::ZonalHarmonic zh(n, k);
      const schur::Gegenbauer g(a, k);
      EXPECT_NEAR(zh(0.3).value, g.value(std::cos(0.3)) / std::sqrt(norm), 1e-12);
    }
  }
}

TEST(Poisson, ZeroSourceGivesZero) {
  const auto p = unit_round(4, 256);
  const auto f = schur::solve_poisson(p, std::vector<double>(p.size(), 0.0));
  EXPECT_EQ(sup(f.value), 0.0);
  EXPECT_TRUE(f.mean_removed);
}

TEST(Poisson, InvertsZonalHarmonic) {
  for (int n : {3, 5}) {
    const auto p = unit_round(n, 4096);
    for (int k : {1, 3, 8}) {
      const auto [y, spec] = schur::zonal_harmonic(p, k);
      std::vector<double> h(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) h[i] = -spec.lambda * y.value[i];
      const auto f = schur::solve_poisson(p, h);
      double e = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) e = std::max(e, std::abs(f.value[i] - y.value[i]));
      EXPECT_LE(e, 1e-9 * sup(y.value)) << "n=" << n << " k=" << k;
      const auto lap = schur::laplacian(f, p);
      double r = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) r = std::max(r, std::abs(lap[i] - h[i]));
      EXPECT_LE(r, 1e-6 * sup(h));
    }
  }
}

TEST(Poisson, RoundTripThroughStencils) {
  const int n = 4;
  const auto p = unit_round(n, 4096);
  const auto src = schur::zonal_test_function(p, 3);
  const auto h = schur::laplacian(src, p);
  const auto f = schur::solve_poisson(p, h);
  const auto g = schur::zonal_from_samples(p, f.value);
  const auto lap = schur::laplacian(g, p);
  double r = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) r = std::max(r, std::abs(lap[i] - h[i]));
  EXPECT_LE(r, 1e-6 * sup(h));
}

TEST(Poisson, RejectsNonZeroMean) {
  const auto p = unit_round(3, 256);
  std::vector<double> h(p.size(), 1.0);
  EXPECT_THROW(schur::solve_poisson(p, h), schur::PoissonError);
}

TEST(RicoHessInner, VanishesOnEinsteinAndConstants) {
  const auto p = unit_round(5, 512);
  const auto c = schur::curvature(p);
  const auto f = cos_field(p);
  EXPECT_LE(sup(schur::rico_hess_inner(c, f, p)), 1e-12);
}

}  // namespace
