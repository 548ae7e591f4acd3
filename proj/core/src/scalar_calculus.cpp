#include "schur/scalar_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "schur/numerics.hpp"

namespace schur {

namespace {

void require_grid(const ZonalField& f, const RadialProfile& profile, const char* who) {
  if (f.value.size() != profile.size() || f.d1.size() != profile.size() ||
      f.d2.size() != profile.size()) {
    throw std::invalid_argument(std::string(who) + ": field does not match the profile grid");
  }
}

bool is_pole(std::size_t i, std::size_t m) { return i == 0 || i + 1 == m; }

}  // namespace

std::vector<double> laplacian(const ZonalField& f, const RadialProfile& profile) {
  require_grid(f, profile, "laplacian");
  const std::size_t m = profile.size();
  const int n = profile.dimension();
  const auto phi = profile.phi();
  const auto dphi = profile.phi_d1();
  std::vector<double> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    out[i] = is_pole(i, m) ? n * f.d2[i] : f.d2[i] + (n - 1) * dphi[i] / phi[i] * f.d1[i];
  }
  return out;
}

double HessianComponents::norm_sq(std::size_t i, int n) const {
  return radial[i] * radial[i] + (n - 1) * tangential[i] * tangential[i];
}

double HessianComponents::traceless_norm_sq(std::size_t i, int n) const {
  // Eigenvalue gap form of |H|^2 - (tr H)^2/n; stays nonnegative in floating point.
  const double gap = radial[i] - tangential[i];
  return static_cast<double>(n - 1) / n * gap * gap;
}

HessianComponents hessian_components(const ZonalField& f, const RadialProfile& profile) {
  require_grid(f, profile, "hessian_components");
  const std::size_t m = profile.size();
  const auto phi = profile.phi();
  const auto dphi = profile.phi_d1();
  HessianComponents h;
  h.radial = f.d2;
  h.tangential.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    h.tangential[i] = is_pole(i, m) ? f.d2[i] : dphi[i] / phi[i] * f.d1[i];
  }
  return h;
}

ZonalField solve_poisson(const RadialProfile& profile, std::span<const double> source,
                         const PoissonOptions& options) {
  const std::size_t m = profile.size();
  if (source.size() != m) {
    throw std::invalid_argument("solve_poisson: source does not match the profile grid");
  }
  const int n = profile.dimension();
  const auto quad = Quadrature::for_profile(profile);
  ZonalField f;
  f.value.assign(m, 0.0);
  f.d1.assign(m, 0.0);
  f.d2.assign(m, 0.0);
  f.mean_removed = true;

  double peak = 0.0;
  for (double v : source) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return f;

  const double volume = quad.volume();
  const double mean = integrate(source, quad);
  if (std::abs(mean) > options.mean_tol * volume * peak) {
    std::ostringstream os;
    os << "solve_poisson: source is not mean-zero (int h dvol = " << mean
       << ", tolerance " << options.mean_tol * volume * peak << ")";
    throw PoissonError(os.str());
  }

  const double h = profile.spacing();
  const auto phi = profile.phi();
  const auto flux_left = numerics::cumulative_weighted_integral(source, phi, n - 1, h);
  const auto flux_right = numerics::reverse_cumulative_weighted_integral(source, phi, n - 1, h);

  std::vector<double> abs_source(source.begin(), source.end());
  for (double& v : abs_source) v = std::abs(v);
  const double flux_scale = integrate(abs_source, quad) / quad.omega;
  const double drift = flux_left.back();
  if (std::abs(drift) > options.drift_tol * flux_scale) {
    std::ostringstream os;
    os << "solve_poisson: flux drift at s = L is " << drift << " against scale " << flux_scale
       << "; quadrature of the source is inconsistent";
    throw PoissonError(os.str());
  }

  // Remove the residual drift as a constant shift of the source, so both
  // one-sided fluxes vanish at the far pole with the same quadrature.
  const std::vector<double> ones(m, 1.0);
  const auto area_left = numerics::cumulative_weighted_integral(ones, phi, n - 1, h);
  const auto area_right = numerics::reverse_cumulative_weighted_integral(ones, phi, n - 1, h);
  const double shift_h = drift / area_left.back();

  // Accumulate the flux from whichever pole is nearer the widest point.
  const auto widest =
      static_cast<std::size_t>(std::max_element(phi.begin(), phi.end()) - phi.begin());
  for (std::size_t i = 1; i + 1 < m; ++i) {
    const double area = std::pow(phi[i], n - 1);
    f.d1[i] = i <= widest ? (flux_left[i] - shift_h * area_left[i]) / area
                          : -(flux_right[i] - shift_h * area_right[i]) / area;
  }

  f.value = numerics::cumulative_integral(f.d1, h);
  const double shift = integrate(f.value, quad) / volume;
  for (double& v : f.value) v -= shift;

  const auto dphi = profile.phi_d1();
  for (std::size_t i = 0; i < m; ++i) {
    const double hs = source[i] - shift_h;
    f.d2[i] = is_pole(i, m) ? hs / n : hs - (n - 1) * dphi[i] / phi[i] * f.d1[i];
  }
  return f;
}

std::vector<double> rico_hess_inner(const CurvatureField& curv, const ZonalField& f,
                                    const RadialProfile& profile) {
  if (curv.R.size() != profile.size()) {
    throw std::invalid_argument("rico_hess_inner: curvature does not match the profile grid");
  }
  const auto hess = hessian_components(f, profile);
  const int n = profile.dimension();
  std::vector<double> out(profile.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<double>(n - 1) / n * (curv.rho_r[i] - curv.rho_t[i]) *
             (hess.radial[i] - hess.tangential[i]);
  }
  return out;
}

}  // namespace schur
