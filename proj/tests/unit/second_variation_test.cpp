#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "schur/metric_families.hpp"
#include "schur/second_variation.hpp"
#include "schur/zonal.hpp"

namespace {

using namespace schur;

// F''(0) in factored form, derived by hand independently of the term-wise
// assembly used by the library.
double factored_Fpp(int n, double C, double lambda) {
  return (n - 1.0) * (lambda - n) / (2.0 * n) *
         ((C - 1.0) * (n - 2.0) * (n - 2.0) * lambda - 4.0 * (n - 1.0) * (lambda - n));
}

double lambda_of(int n, int k) { return static_cast<double>(k) * (k + n - 1); }

TEST(VariationIntegrals, Examples) {
  EXPECT_DOUBLE_EQ(variation_integrals(3, 3.0).I_R, 0.0);
  EXPECT_DOUBLE_EQ(variation_integrals(5, 12.0).I_Ric2, 612.0);
  for (int n : {3, 4, 9}) {
    for (int k : {1, 2, 7}) {
      const double lambda = lambda_of(n, k);
      EXPECT_DOUBLE_EQ(variation_integrals(n, lambda).I_fRic / lambda, n - 1.0);
    }
  }
}

TEST(VariationIntegrals, RejectsNonEigenvalues) {
  EXPECT_THROW(variation_integrals(3, 10.0), std::invalid_argument);
  EXPECT_THROW(variation_integrals(3, 0.0), std::invalid_argument);
  EXPECT_THROW(variation_integrals(2, 2.0), std::invalid_argument);
}

TEST(SecondDerivative, MatchesFactoredForm) {
  for (int n : {3, 4, 5, 8, 17}) {
    for (double C : {0.5, 1.0, 2.75, 9.0, 30.0}) {
      for (int k : {1, 2, 3, 10, 40}) {
        const double lambda = lambda_of(n, k);
        const double expect = factored_Fpp(n, C, lambda);
        EXPECT_NEAR(F_second_derivative(n, C, lambda), expect, 1e-10 * std::max(1.0, std::abs(expect)));
      }
    }
  }
}

TEST(SecondDerivative, UnitConstantLeavesOnlyScalarTerm) {
  for (int n : {3, 6}) {
    for (int k : {2, 5}) {
      const double lambda = lambda_of(n, k);
      const double fpp = F_second_derivative(n, 1.0, lambda);
      EXPECT_NEAR(fpp, -(2.0 / n) * variation_integrals(n, lambda).I_R, 1e-9 * std::abs(fpp));
      EXPECT_LT(fpp, 0.0);
    }
  }
}

TEST(SecondDerivative, ExactPolynomialAgreesWithDoubles) {
  for (int n : {3, 4, 5, 11}) {
    for (const Rational& C : {Rational(9), Rational(25, 9), Rational(89, 10), Rational(4)}) {
      const auto q = second_derivative_polynomial(n, C);
      EXPECT_EQ(q.a2, leading_coefficient(n, C));
      EXPECT_EQ(q.a0, Rational(-2 * n * (n - 1) * (n - 1)));
      for (int k : {1, 3, 12}) {
        const std::int64_t lam = static_cast<std::int64_t>(k) * (k + n - 1);
        const double expect = factored_Fpp(n, C.to_double(), static_cast<double>(lam));
        EXPECT_NEAR(q(Rational(lam)).to_double(), expect, 1e-9 * std::max(1.0, std::abs(expect)));
      }
    }
  }
}

TEST(LeadingCoefficient, Examples) {
  EXPECT_EQ(leading_coefficient(3, Rational(9)), Rational(0));
  EXPECT_EQ(leading_coefficient(3, Rational(8)), Rational(-1, 3));
  EXPECT_NEAR(leading_coefficient(3, 8.0), -1.0 / 3.0, 1e-15);
  const double eps = 0.05;
  for (int n : {3, 5, 12}) {
    const double sharp = static_cast<double>(n * n) / ((n - 2.0) * (n - 2.0));
    EXPECT_NEAR(leading_coefficient(n, sharp - eps), -(n - 1.0) * (n - 2.0) * (n - 2.0) / (2.0 * n) * eps, 1e-12);
  }
}

TEST(LeadingCoefficient, VanishesExactlyAtSharpConstant) {
  for (int n = 3; n <= 64; ++n) {
    const std::int64_t m = n;
    EXPECT_TRUE(leading_coefficient(n, Rational(m * m, (m - 2) * (m - 2))).is_zero()) << "n = " << n;
  }
}

TEST(ViolatingFrequency, ThresholdsBelowSharp) {
  // F'' < 0 iff lambda > 4n(n-1) / (delta (n-2)^2) for C = sharp - delta
  EXPECT_EQ(find_violating_frequency(3, 9.0 - 0.05).k, 21);
  EXPECT_EQ(find_violating_frequency(4, 4.0 - 0.05).k, 15);
  EXPECT_EQ(find_violating_frequency(5, 25.0 / 9.0 - 0.05).k, 12);
  const auto s = find_violating_frequency(3, 8.9);
  ASSERT_TRUE(s.k.has_value());
  EXPECT_EQ(*s.k, 15);
  EXPECT_TRUE(s.below_sharp);
  EXPECT_LT(F_second_derivative(3, 8.9, lambda_of(3, 15)), 0.0);
  EXPECT_GT(F_second_derivative(3, 8.9, lambda_of(3, 14)), 0.0);
}

TEST(ViolatingFrequency, NoneAtSharpConstant) {
  for (int n : {3, 4, 5}) {
    const double sharp = static_cast<double>(n * n) / ((n - 2.0) * (n - 2.0));
    const auto s = find_violating_frequency(n, sharp);
    EXPECT_FALSE(s.k.has_value());
    EXPECT_FALSE(s.below_sharp);
  }
}

TEST(ViolatingFrequency, CapCanBeHit) {
  const auto s = find_violating_frequency(3, 9.0 - 1e-4, 16);
  EXPECT_FALSE(s.k.has_value());
  EXPECT_TRUE(s.below_sharp);
  EXPECT_EQ(s.k_max, 16);
}

TEST(FirstVariations, HarmonicScalarVariation) {
  const int n = 4, k = 3;
  const auto round = round_profile(n, 1.0, 1024);
  const auto [f, spec] = zonal_harmonic(round, k);
  const auto v = first_variations(round, f);
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_NEAR(v.dR[i], (n - 1) * (spec.lambda - n) * f.value[i], 1e-8 * spec.lambda * spec.lambda);
    EXPECT_DOUBLE_EQ(v.dvol_density[i], 0.5 * n * f.value[i]);
    EXPECT_DOUBLE_EQ(v.g_inverse[i], -f.value[i]);
  }
  EXPECT_NEAR(v.dV, 0.0, 1e-12);
  EXPECT_NEAR(v.dintR, 0.0, 1e-9);
}

TEST(FirstVariations, ZeroFieldGivesZero) {
  const auto round = round_profile(3, 1.0, 256);
  ZonalField zero;
  zero.value.assign(round.size(), 0.0);
  zero.d1 = zero.value;
  zero.d2 = zero.value;
  const auto v = first_variations(round, zero);
  for (std::size_t i = 0; i < round.size(); ++i) {
    EXPECT_EQ(v.dR[i], 0.0);
    EXPECT_EQ(v.dric_radial[i], 0.0);
    EXPECT_EQ(v.dric_tangential[i], 0.0);
  }
}

TEST(FirstVariations, RejectsNonRound) {
  const auto p = round_profile(3, 2.0, 256);
  ZonalField f;
  f.value.assign(p.size(), 0.0);
  f.d1 = f.value;
  f.d2 = f.value;
  EXPECT_THROW(first_variations(p, f), std::invalid_argument);
}

TEST(FirstVariations, MatchEngineFiniteDifferences) {
  for (int n : {3, 5}) {
    const auto c = first_variation_fd_check(n, 4, 1e-3, 2048);
    EXPECT_LT(c.dR, 1e-4);
    EXPECT_LT(c.dvol, 1e-4);
    EXPECT_LT(c.dric_radial, 1e-4);
    EXPECT_LT(c.dric_tangential, 1e-4);
    EXPECT_LT(c.dV, 1e-6);
    EXPECT_LT(c.dintR, 1e-6);
  }
}

TEST(FdCrossCheck, AgreesWithClosedForm) {
  const auto r = fd_cross_check(4, 6, 4.0, 1e-3, 4096);
  EXPECT_TRUE(r.fd_agrees());
  EXPECT_TRUE(r.step_halving_consistent());
  EXPECT_LT(r.fd_relative_error(), 1e-4);
  EXPECT_NEAR(r.Fpp_assembled, r.Fpp_analytic, 1e-9 * std::abs(r.Fpp_analytic));
  EXPECT_NEAR(r.Vpp_fd, volume_second_derivative(4), 1e-5);
  EXPECT_NEAR(r.F1pp_fd, r.F1pp, 1e-4 * std::abs(r.F1pp));
  EXPECT_NEAR(r.F2pp_fd, r.F2pp, 1e-4 * std::abs(r.F2pp));
  EXPECT_NEAR(r.F3pp_fd, r.F3pp, 1e-4 * std::abs(r.F3pp));
  EXPECT_NEAR(r.Fpp_richardson, r.Fpp_analytic, 1e-6 * std::abs(r.Fpp_analytic));
}

TEST(FdCrossCheck, FunctionalVanishesAtRoundSphere) {
  const auto st = fd_stencil(3, 2, 1e-3, 1024);
  EXPECT_NEAR(st.zero.F(9.0), 0.0, 1e-12);
  EXPECT_NEAR(st.zero.lhs_main, 0.0, 1e-12);
}

TEST(RatioLaw, ThreeDimensionalFourthHarmonic) {
  const auto law = ratio_law(3, 4, 1e-3, 1e-4, 2048);
  EXPECT_NEAR(law.predicted, 21.0, 1e-12);
  EXPECT_NEAR(law.extrapolated, 21.0, 0.1);
  EXPECT_LT(law.relative_error(), 5e-3);
}

TEST(RatioLaw, ExtrapolationIsLinear) {
  EXPECT_DOUBLE_EQ(extrapolate_to_zero(1.0, 3.0, 2.0, 5.0), 1.0);
  EXPECT_THROW(extrapolate_to_zero(1.0, 3.0, 1.0, 5.0), std::invalid_argument);
}

}  // namespace
