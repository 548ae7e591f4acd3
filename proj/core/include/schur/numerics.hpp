#pragma once

// Uniform-grid numerical kernels shared by the geometry and calculus layers.
//
// Grids are described by their spacing and sample count; a grid with N
// intervals carries N + 1 samples s_i = i * h.

#include <cstddef>
#include <span>
#include <vector>

namespace schur::numerics {

/// Finite-difference weights (Fornberg) for derivatives 0..max_order at x0
/// on arbitrary nodes. Result is indexed [order][node].
std::vector<std::vector<double>> fornberg_weights(double x0, std::span<const double> nodes,
                                                  int max_order);

/// Symmetry of a sampled function about both ends of its grid. Profiles are
/// odd about a smooth pole, radial scalar fields are even.
enum class Parity { none, even, odd };

/// First derivative by 8th-order central differences. With a known parity the
/// stencil runs past the ends on reflected samples; with Parity::none the four
/// nodes nearest each end use 10-point one-sided stencils.
std::vector<double> derivative1(std::span<const double> values, double h,
                                Parity parity = Parity::none);

/// Second derivative, same stencil layout as derivative1.
std::vector<double> derivative2(std::span<const double> values, double h,
                                Parity parity = Parity::none);

/// Composite Simpson weights for N intervals (N even).
std::vector<double> simpson_weights(std::size_t intervals, double h);

/// Running integral G_i = int_0^{s_i} v(s) ds. The integrand is reconstructed
/// by local degree-7 Lagrange interpolation and each cell integrated with
/// 8-point Gauss-Legendre.
std::vector<double> cumulative_integral(std::span<const double> values, double h);

/// Running integral G_i = int_0^{s_i} v(s) * phi(s)^power ds. phi is
/// interpolated first and raised to the power at the quadrature points, so
/// integrands vanishing like s^power at s = 0 keep full relative accuracy.
std::vector<double> cumulative_weighted_integral(std::span<const double> values,
                                                 std::span<const double> phi, int power,
                                                 double h);

/// Same as cumulative_weighted_integral but accumulated from the far end:
/// G_i = int_{s_i}^{L} v * phi^power ds.
std::vector<double> reverse_cumulative_weighted_integral(std::span<const double> values,
                                                         std::span<const double> phi, int power,
                                                         double h);

/// Degree-7 Lagrange interpolation of grid samples at an arbitrary abscissa.
double interpolate(std::span<const double> values, double h, double s);

/// Gauss-Legendre rule on [-1, 1].
/// Least-squares slope of log y against log x over the points with x, y > 0
/// and y finite; NaN with fewer than two such points.
double loglog_slope(std::span<const double> x, std::span<const double> y);

struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussLegendre& gauss_legendre_8();

/// Monotone piecewise-cubic Hermite interpolant (Fritsch-Carlson slopes).
class MonotoneCubic {
 public:
  MonotoneCubic(std::vector<double> x, std::vector<double> y);
  double operator()(double x) const;

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> slope_;
};

}  // namespace schur::numerics
