#pragma once

#include <span>
#include <vector>

#include "schur/radial_geometry.hpp"
#include "schur/zonal.hpp"

namespace schur {

/// Laplace-Beltrami: f'' + (n-1)(phi'/phi) f', with the limit n f'' at the poles.
std::vector<double> laplacian(const ZonalField& f, const RadialProfile& profile);

/// Hessian eigenvalues of a radial function: f'' on the radial direction and
/// (phi'/phi) f' on every tangential direction.
struct HessianComponents {
  std::vector<double> radial;
  std::vector<double> tangential;

  /// |Hess f|^2 at node i for an n-manifold.
  double norm_sq(std::size_t i, int n) const;
  /// |Hess f - (lap f / n) g|^2 at node i.
  double traceless_norm_sq(std::size_t i, int n) const;
};

HessianComponents hessian_components(const ZonalField& f, const RadialProfile& profile);

/// Options for the Poisson solve.
struct PoissonOptions {
  double mean_tol = 1e-9;   // |int h| relative to V max|h|
  double drift_tol = 1e-4;  // flux left over at the far pole, relative to int |h|
};

/// Raised when the Poisson data are incompatible with the closed manifold.
class PoissonError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unique mean-zero solution of lap f = h. The flux f' = phi^{1-n} int h phi^{n-1}
/// is accumulated from the nearer pole, then f is integrated and its mean removed.
/// Any flux left at the far pole by quadrature mismatch is removed as a constant
/// shift of h and must stay below drift_tol.
/// f'' is returned through the equation itself.
ZonalField solve_poisson(const RadialProfile& profile, std::span<const double> source,
                         const PoissonOptions& options = {});

/// <Ric°, Hess f> pointwise. Equal to <Ric°, Hess f - (lap f/n) g> since Ric° is traceless.
std::vector<double> rico_hess_inner(const CurvatureField& curv, const ZonalField& f,
                                    const RadialProfile& profile);

}  // namespace schur
