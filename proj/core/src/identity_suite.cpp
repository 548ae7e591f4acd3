#include "schur/identity_suite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <variant>

#include "schur/scalar_calculus.hpp"
#include "schur/schur_audit.hpp"
#include "schur/zonal.hpp"

namespace schur {

namespace {

double sup_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double roundtrip_residual(const RadialProfile& profile, const Quadrature& quad, const ZonalField& u) {
  auto h = laplacian(u, profile);
  const double hbar = integrate(h, quad) / quad.volume();
  for (double& v : h) v -= hbar;
  const auto f = solve_poisson(profile, h);
  const double ubar = integrate(u.value, quad) / quad.volume();
  double value_err = 0.0, value_ref = 0.0, slope_err = 0.0, slope_ref = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    value_err = std::max(value_err, std::abs(f.value[i] - (u.value[i] - ubar)));
    value_ref = std::max(value_ref, std::abs(u.value[i] - ubar));
    slope_err = std::max(slope_err, std::abs(f.d1[i] - u.d1[i]));
    slope_ref = std::max(slope_ref, std::abs(u.d1[i]));
  }
  return std::max(value_ref > 0.0 ? value_err / value_ref : value_err,
                  slope_ref > 0.0 ? slope_err / slope_ref : slope_err);
}

double equation_residual(const RadialProfile& profile, const CurvatureField& curv, const Quadrature& quad) {
  const int n = profile.dimension();
  const double Rbar = integrate(curv.R, quad) / quad.volume();
  std::vector<double> h(curv.R.size());
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = curv.R[i] - Rbar;
  const double hmax = sup_abs(h);
  if (hmax <= 1e-9 * std::max(1.0, sup_abs(curv.R))) return 0.0;
  const auto solved = solve_poisson(profile, h);
  const auto f = zonal_from_samples(profile, solved.value);
  const auto lap = laplacian(f, profile);
  const auto hess = hessian_components(f, profile);
  double err = 0.0;
  double scale = hmax;
  for (std::size_t i = 0; i < h.size(); ++i) {
    err = std::max(err, std::abs(lap[i] - h[i]));
    scale = std::max({scale, std::abs(hess.radial[i]), (n - 1) * std::abs(hess.tangential[i])});
  }
  return err / scale;
}

}  // namespace

double IdentityResiduals::worst() const {
  return std::max({split, bochner, traceless_hessian, weak_bianchi, poisson_roundtrip, poisson_equation});
}

IdentityResiduals identity_residuals(const RadialProfile& profile, int max_k) {
  const auto curv = curvature(profile);
  const auto quad = Quadrature::for_profile(profile);
  IdentityResiduals r;
  r.split = verify_split(profile).residual;
  for (int k = 1; k <= max_k; ++k) {
    const auto u = zonal_test_function(profile, k);
    r.bochner = std::max(r.bochner, verify_bochner(profile, u).residual);
    r.traceless_hessian = std::max(r.traceless_hessian, verify_traceless_hessian(profile, u).residual);
    r.weak_bianchi = std::max(r.weak_bianchi, verify_weak_bianchi(profile, u).residual);
    r.poisson_roundtrip = std::max(r.poisson_roundtrip, roundtrip_residual(profile, quad, u));
  }
  const double Rbar = integrate(curv.R, quad) / quad.volume();
  std::vector<double> source(curv.R.size());
  for (std::size_t i = 0; i < source.size(); ++i) source[i] = curv.R[i] - Rbar;
  if (sup_abs(source) > 1e-9 * std::max(1.0, sup_abs(curv.R))) {
    const auto f = solve_poisson(profile, source);
    r.bochner = std::max(r.bochner, verify_bochner(profile, f).residual);
    r.traceless_hessian = std::max(r.traceless_hessian, verify_traceless_hessian(profile, f, source).residual);
    r.weak_bianchi = std::max(r.weak_bianchi, verify_weak_bianchi(profile, f).residual);
  }
  r.poisson_equation = equation_residual(profile, curv, quad);
  return r;
}

bool IdentitySuite::passed() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const IdentityEntry& e) { return e.converged && e.within_tol; });
}

IdentitySuite identity_suite(const FamilySpec& spec, std::size_t intervals,
                             const IdentitySuiteOptions& options) {
  IdentitySuite suite;
  suite.family = family_name(spec);
  suite.n = family_dimension(spec);
  suite.intervals = intervals;
  const auto coarse_profile = build_profile(spec, intervals);
  suite.intervals = coarse_profile.intervals();
  const auto coarse = identity_residuals(coarse_profile, options.max_k);
  // sampled input has a fixed grid, so no doubling is possible
  const bool fixed_grid = std::holds_alternative<SamplesSpec>(spec);
  const auto fine = fixed_grid ? coarse : identity_residuals(build_profile(spec, 2 * intervals), options.max_k);
  const std::pair<const char*, double IdentityResiduals::*> fields[] = {
      {"split", &IdentityResiduals::split},
      {"bochner", &IdentityResiduals::bochner},
      {"traceless_hessian", &IdentityResiduals::traceless_hessian},
      {"weak_bianchi", &IdentityResiduals::weak_bianchi},
      {"poisson_roundtrip", &IdentityResiduals::poisson_roundtrip},
      {"poisson_equation", &IdentityResiduals::poisson_equation},
  };
  const double fine_n = 2.0 * static_cast<double>(intervals);
  const double floor = std::max(options.roundoff_floor, std::numeric_limits<double>::epsilon() * fine_n * fine_n);
  for (const auto& [name, field] : fields) {
    IdentityEntry e;
    e.name = name;
    e.coarse = coarse.*field;
    e.fine = fine.*field;
    if (fixed_grid) {
      e.order = std::numeric_limits<double>::quiet_NaN();
    } else if (e.fine > 0.0 && e.coarse > 0.0) {
      e.order = std::log2(e.coarse / e.fine);
    } else {
      e.order = e.coarse > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    e.converged = fixed_grid || e.order >= options.min_order || e.fine <= floor;
    e.within_tol = e.coarse <= options.tol;
    suite.entries.push_back(std::move(e));
  }
  return suite;
}

}  // namespace schur
