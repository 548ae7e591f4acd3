#pragma once

// Rotationally symmetric metrics g = ds^2 + phi(s)^2 g_{S^{n-1}} on S^n,
// sampled on a uniform arclength grid, and the curvature they carry.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace schur {

/// Raised when a profile fails validation. `issues()` lists every violated
/// invariant, one human-readable line each.
class ProfileError : public std::runtime_error {
 public:
  explicit ProfileError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  std::vector<std::string> issues_;
};

/// Odd Taylor model of phi near a pole in the distance u to that pole:
/// phi = slope*u + c3 u^3 + c5 u^5 + c7 u^7.
struct PoleSeries {
  double slope = 1.0;  // fitted freely, used for the closure check
  double c3 = 0.0;     // c3..c7 refitted with slope pinned to 1
  double c5 = 0.0;
  double c7 = 0.0;

  /// phi''/phi evaluated without cancellation.
  double phi_d2_over_phi(double u) const;
  /// (1 - phi'^2)/phi^2 evaluated without cancellation.
  double defect_over_phi_sq(double u) const;
};

class RadialProfile {
 public:
  static constexpr std::size_t kMinIntervals = 64;
  static constexpr std::size_t kDefaultIntervals = 4096;

  /// Profile from samples of phi only; phi' and phi'' come from stencils,
  /// extended across the poles by odd reflection.
  static RadialProfile from_samples(int n, double length, std::vector<double> phi);

  /// Profile with analytically supplied derivatives.
  static RadialProfile with_derivatives(int n, double length, std::vector<double> phi,
                                        std::vector<double> phi_d1, std::vector<double> phi_d2);

  int dimension() const noexcept { return n_; }
  double length() const noexcept { return length_; }
  std::size_t intervals() const noexcept { return phi_.size() - 1; }
  std::size_t size() const noexcept { return phi_.size(); }
  double spacing() const noexcept { return length_ / static_cast<double>(intervals()); }
  double s(std::size_t i) const noexcept { return static_cast<double>(i) * spacing(); }
  std::vector<double> grid() const;

  std::span<const double> phi() const noexcept { return phi_; }
  std::span<const double> phi_d1() const noexcept { return phi_d1_; }
  std::span<const double> phi_d2() const noexcept { return phi_d2_; }

  const PoleSeries& north_pole() const noexcept { return north_; }
  const PoleSeries& south_pole() const noexcept { return south_; }

  /// Nodes within this many grid points of a pole use the pole series.
  static constexpr std::size_t kPoleWindow = 10;

  /// Distance to the nearer pole when node i lies in a pole window, negative otherwise.
  double pole_distance(std::size_t i) const noexcept;
  const PoleSeries& pole_for(std::size_t i) const noexcept;

 private:
  RadialProfile(int n, double length, std::vector<double> phi, std::vector<double> d1,
                std::vector<double> d2);
  void validate_and_fit();

  int n_;
  double length_;
  std::vector<double> phi_;
  std::vector<double> phi_d1_;
  std::vector<double> phi_d2_;
  PoleSeries north_;
  PoleSeries south_;
};

/// Pointwise Ricci eigenvalues and derived scalars.
struct CurvatureField {
  int n = 0;
  std::vector<double> rho_r;    // Ric(d_s, d_s)
  std::vector<double> rho_t;    // Ric on unit tangential directions
  std::vector<double> R;        // scalar curvature
  std::vector<double> rico_sq;  // |Ric - (R/n) g|^2
  std::vector<double> dR;       // dR/ds
};

CurvatureField curvature(const RadialProfile& profile);

/// Smallest Ricci eigenvalue over the grid.
double min_ricci_eigenvalue(const CurvatureField& curv);

/// Area of the unit sphere S^m.
double unit_sphere_area(int m);

/// Volume of the round sphere S^n of the given radius.
double sphere_volume(int n, double radius = 1.0);

/// Simpson weights folded with the warping density phi^{n-1}; integrals over
/// M are omega * sum_i weights_i * F_i.
struct Quadrature {
  std::vector<double> weights;
  double omega = 0.0;

  static Quadrature for_profile(const RadialProfile& profile);

  std::size_t size() const noexcept { return weights.size(); }
  double volume() const noexcept;
};

/// int_M F dvol for a sampled radial function F.
double integrate(std::span<const double> samples, const Quadrature& quad);

}  // namespace schur
