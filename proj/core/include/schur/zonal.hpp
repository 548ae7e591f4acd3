#pragma once

#include <span>
#include <utility>
#include <vector>

#include "schur/radial_geometry.hpp"

namespace schur {

/// A rotationally symmetric scalar function sampled on a profile grid,
/// together with its first two arclength derivatives.
struct ZonalField {
  std::vector<double> value;
  std::vector<double> d1;
  std::vector<double> d2;
  bool mean_removed = false;

  std::size_t size() const noexcept { return value.size(); }
};

/// Zonal frequency k and its Laplace eigenvalue k(k+n-1) on the unit sphere.
struct HarmonicSpec {
  int k = 0;
  double lambda = 0.0;
};

HarmonicSpec harmonic_spec(int n, int k);

/// Gegenbauer polynomial C_k^{(alpha)} via the three-term recurrence.
class Gegenbauer {
 public:
  Gegenbauer(double alpha, int degree);

  struct Jet {
    double value;
    double d1;
    double d2;
  };

  double value(double x) const { return eval(alpha_, degree_, x); }
  Jet jet(double x) const;

 private:
  static double eval(double alpha, int degree, double x);
  double alpha_;
  int degree_;
};

/// k-th zonal eigenfunction of the unit S^n as a function of polar angle,
/// normalized so that its square integrates to 1 over the sphere.
class ZonalHarmonic {
 public:
  ZonalHarmonic(int n, int k);

  int dimension() const noexcept { return n_; }
  int degree() const noexcept { return k_; }
  double eigenvalue() const noexcept { return static_cast<double>(k_) * (k_ + n_ - 1); }

  /// Value and theta-derivatives at polar angle theta.
  Gegenbauer::Jet operator()(double theta) const;

  /// max |f|, attained at the poles.
  double peak() const;

 private:
  int n_;
  int k_;
  Gegenbauer poly_;
  double scale_ = 1.0;
};

/// The k-th zonal harmonic sampled on a unit round profile, renormalized by
/// the profile's own quadrature so that int f^2 dvol = 1.
std::pair<ZonalField, HarmonicSpec> zonal_harmonic(const RadialProfile& round_profile, int k);

/// A smooth zonal test function on any profile: C_k(cos(pi s / L)) scaled to
/// unit peak. Even about both poles, so it is smooth on S^n.
ZonalField zonal_test_function(const RadialProfile& profile, int k);

/// Wrap samples of f, deriving f' and f'' with even-reflected stencils.
ZonalField zonal_from_samples(const RadialProfile& profile, std::vector<double> values);

/// True when the profile is the unit round sphere to sampling accuracy.
bool is_unit_round(const RadialProfile& profile, double tol = 1e-10);

}  // namespace schur
