#pragma once

// Second variation of the almost-Schur deficit along conformal deformations
// g_t = (1 + t f) sigma of the unit round sphere, with f a zonal harmonic of
// unit L2 norm:
//
//   F(t) = C int |Ric°|^2 - int |Ric - (Rbar/n) g|^2
//        = (C - 1) F1 - (C/n) F2 + (1/n) F3,
//   F1 = int |Ric|^2,  F2 = int R^2,  F3 = (int R)^2 / V.

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "schur/radial_geometry.hpp"
#include "schur/rational.hpp"
#include "schur/zonal.hpp"

namespace schur {

/// First variations at t = 0 in the sigma-orthonormal frame.
struct FirstVariations {
  std::vector<double> dvol_density;  // (n/2) f
  std::vector<double> g_inverse;     // coefficient of sigma^{ij}: -f
  std::vector<double> dric_radial;   // -(lap f + (n-2) f'') / 2
  std::vector<double> dric_tangential;  // -(lap f + (n-2) (phi'/phi) f') / 2
  std::vector<double> dR;            // -(n-1) lap f - n(n-1) f
  double dV = 0.0;                   // int (n/2) f
  double dintR = 0.0;                // int (dR + R (n/2) f)
};

/// Throws std::invalid_argument unless the profile is the unit round sphere.
FirstVariations first_variations(const RadialProfile& round, const ZonalField& f);

/// Closed forms of int (dR)^2, int f dRic_ij sigma^ij and int |dRic|^2.
struct VariationIntegrals {
  double I_R = 0.0;
  double I_fRic = 0.0;
  double I_Ric2 = 0.0;
};

/// Throws std::invalid_argument unless lambda = k(k+n-1) for an integer k >= 1.
VariationIntegrals variation_integrals(int n, double lambda);

/// F''(0) from the closed forms.
double F_second_derivative(int n, double C, double lambda);

/// Pieces F1'', F2'', F3'' given the second derivatives of V and int R.
struct PieceSecondDerivatives {
  double F1pp = 0.0;
  double F2pp = 0.0;
  double F3pp = 0.0;
};

PieceSecondDerivatives piece_second_derivatives(int n, double lambda, double Vpp, double intRpp);

/// d^2 V / dt^2 at t = 0 for a unit-norm f: n(n-2)/4.
double volume_second_derivative(int n);

/// Coefficient of lambda^2 in F''(0): ((n-1)/(2n)) (C (n-2)^2 - n^2).
double leading_coefficient(int n, double C);
Rational leading_coefficient(int n, const Rational& C);

/// F''(0) = a2 lambda^2 + a1 lambda + a0, exactly.
struct QuadraticInLambda {
  Rational a2;
  Rational a1;
  Rational a0;

  Rational operator()(const Rational& lambda) const { return (a2 * lambda + a1) * lambda + a0; }
};

QuadraticInLambda second_derivative_polynomial(int n, const Rational& C);

/// The engine's functionals on one profile.
struct FunctionalSample {
  double t = 0.0;
  double V = 0.0;
  double intR = 0.0;
  double F1 = 0.0;      // int |Ric|^2
  double F2 = 0.0;      // int R^2
  double rico = 0.0;    // int |Ric°|^2
  double shifted = 0.0; // int |Ric - (Rbar/n) g|^2
  double lhs_main = 0.0;

  double F(double C) const { return C * rico - shifted; }
  double F3() const { return intR * intR / V; }
};

FunctionalSample functional_sample(const RadialProfile& profile, double t = 0.0);

/// Functionals at t = -h, -h/2, 0, h/2, h on the conformal family. Reusable for any C.
struct FdStencil {
  int n = 0;
  int k = 0;
  double h = 0.0;
  std::size_t intervals = 0;
  FunctionalSample minus;
  FunctionalSample minus_half;
  FunctionalSample zero;
  FunctionalSample plus_half;
  FunctionalSample plus;
};

FdStencil fd_stencil(int n, int k, double h, std::size_t intervals);

struct VariationReport {
  int n = 0;
  double C = 0.0;
  int k = 0;
  double lambda = 0.0;
  double h = 0.0;
  std::size_t intervals = 0;
  double F1pp = 0.0;  // from the closed forms with engine V'', (int R)''
  double F2pp = 0.0;
  double F3pp = 0.0;
  double F1pp_fd = 0.0;  // direct second differences of the pieces
  double F2pp_fd = 0.0;
  double F3pp_fd = 0.0;
  double Vpp_fd = 0.0;
  double intRpp_fd = 0.0;
  double Fpp_analytic = 0.0;
  double Fpp_assembled = 0.0;  // (C-1) F1pp - (C/n) F2pp + (1/n) F3pp
  double Fpp_fd = 0.0;
  double Fprime_fd = 0.0;
  double Fprime_richardson = 0.0;  // (4 F'(h/2) - F'(h)) / 3, cancels the F''' h^2/6 term
  double Fpp_fd_half = 0.0;    // same estimate with step h/2
  double Fpp_richardson = 0.0; // (4 Fpp_fd_half - Fpp_fd) / 3
  double leading_coeff = 0.0;
  double ratio_perturbative = 0.0;  // sharp_main (lambda-n)/lambda

  double fd_relative_error() const;
  /// |Fpp_fd - Fpp_analytic| <= max(1% |Fpp_analytic|, tol_abs).
  bool fd_agrees(double tol_abs = 1e-8) const;
  /// Halving the step moves the estimate by less than 1% of |Fpp_analytic|.
  bool step_halving_consistent() const;
};

VariationReport fd_cross_check(const FdStencil& stencil, double C);
VariationReport fd_cross_check(int n, int k, double C, double h = 1e-3,
                               std::size_t intervals = RadialProfile::kDefaultIntervals);

/// Audit ratio int (R-Rbar)^2 / int |Ric°|^2 of the conformal family at two
/// step sizes, extrapolated linearly in t to t = 0 and compared with
/// sharp_main (lambda - n)/lambda.
struct RatioLaw {
  int n = 0;
  int k = 0;
  double t_coarse = 0.0;
  double t_fine = 0.0;
  double ratio_coarse = 0.0;
  double ratio_fine = 0.0;
  double extrapolated = 0.0;
  double predicted = 0.0;

  double relative_error() const { return std::abs(extrapolated - predicted) / predicted; }
};

/// Linear extrapolation to t = 0 through (t1, r1) and (t2, r2).
double extrapolate_to_zero(double t1, double r1, double t2, double r2);

RatioLaw ratio_law(int n, int k, double t_coarse = 1e-3, double t_fine = 1e-4,
                   std::size_t intervals = RadialProfile::kDefaultIntervals);

/// Smallest k in [1, k_max] with F''(0) < 0.
struct FrequencySearch {
  std::optional<int> k;
  int k_max = 128;
  bool below_sharp = false;  // C < n^2/(n-2)^2; a miss is then a diagnostic
};

/// Smallest k in [2, k_max] with F'' < 0. k = 1 (lambda = n) is a conformal motion where F'' vanishes.
FrequencySearch find_violating_frequency(int n, double C, int k_max = 128);

/// Finite-difference check of the first-variation formulas on the conformal
/// family, comparing at fixed polar angle. Errors are max-norm, relative to
/// the max of each analytic field.
struct FirstVariationCheck {
  double dR = 0.0;
  double dvol = 0.0;
  double dric_radial = 0.0;
  double dric_tangential = 0.0;
  double dV = 0.0;     // |dV/dt| / V
  double dintR = 0.0;  // |d(int R)/dt| / int R
};

FirstVariationCheck first_variation_fd_check(int n, int k, double h, std::size_t intervals);

}  // namespace schur
