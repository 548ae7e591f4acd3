#include "schur/schur_audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "schur/scalar_calculus.hpp"

namespace schur {

namespace {

double sup_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

IdentityCheck make_check(double lhs, double rhs, double scale) {
  IdentityCheck c{lhs, rhs, scale, 0.0};
  const double diff = std::abs(lhs - rhs);
  c.residual = scale > 0.0 ? diff / scale : (diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  return c;
}

// int Ric(grad f, grad f) = int rho_r f'^2
double ricci_energy(const CurvatureField& curv, const ZonalField& f, const Quadrature& quad) {
  std::vector<double> e(f.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = curv.rho_r[i] * f.d1[i] * f.d1[i];
  return integrate(e, quad);
}

bool is_einstein(const CurvatureField& curv, const Quadrature& quad, double floor) {
  const double scale = sup_abs(curv.R);
  return integrate(curv.rico_sq, quad) < floor * scale * scale * quad.volume();
}

}  // namespace

SharpConstants sharp_constants(int n) {
  if (n < 3) throw std::invalid_argument("sharp constants need n >= 3");
  const std::int64_t m = n;
  return {Rational(4 * m * (m - 1), (m - 2) * (m - 2)), Rational(m * m, (m - 2) * (m - 2))};
}

AuditReport audit(const RadialProfile& profile, const AuditOptions& options) {
  return audit(profile, curvature(profile), options);
}

AuditReport audit(const RadialProfile& profile, const CurvatureField& curv,
                  const AuditOptions& options) {
  const int n = profile.dimension();
  const auto quad = Quadrature::for_profile(profile);
  const auto sharp = sharp_constants(n);
  AuditReport r;
  r.n = n;
  r.volume = quad.volume();
  r.Rbar = integrate(curv.R, quad) / r.volume;
  r.curvature_scale = sup_abs(curv.R);
  std::vector<double> dev(profile.size());
  std::vector<double> shifted(profile.size());
  const double c = r.Rbar / n;
  for (std::size_t i = 0; i < dev.size(); ++i) {
    dev[i] = (curv.R[i] - r.Rbar) * (curv.R[i] - r.Rbar);
    const double a = curv.rho_r[i] - c;
    const double b = curv.rho_t[i] - c;
    shifted[i] = a * a + (n - 1) * b * b;
  }
  r.lhs_main = integrate(dev, quad);
  r.rhs_main_raw = integrate(curv.rico_sq, quad);
  r.lhs_cor = integrate(shifted, quad);
  r.sharp_main = sharp.main.to_double();
  r.sharp_cor = sharp.corollary.to_double();

  const double floor = options.einstein_floor * r.curvature_scale * r.curvature_scale * r.volume;
  r.ratio_indeterminate = r.rhs_main_raw < floor;
  r.ratio = r.ratio_indeterminate ? std::numeric_limits<double>::quiet_NaN()
                                  : r.lhs_main / r.rhs_main_raw;
  r.ric_min = min_ricci_eigenvalue(curv);
  r.tol_hyp = options.hypothesis_tol * r.curvature_scale;
  r.hypothesis_holds = r.ric_min >= -r.tol_hyp;
  const double denom = std::max(r.rhs_main_raw, floor) * (1.0 + options.slack);
  r.main_satisfied = r.lhs_main <= r.sharp_main * denom;
  r.cor_satisfied = r.lhs_cor <= r.sharp_cor * denom;
  return r;
}

IdentityCheck verify_bochner(const RadialProfile& profile, const ZonalField& f) {
  const int n = profile.dimension();
  const auto curv = curvature(profile);
  const auto quad = Quadrature::for_profile(profile);
  const auto hess = hessian_components(f, profile);
  const auto lap = laplacian(f, profile);
  std::vector<double> hsq(f.size()), lsq(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    hsq[i] = hess.norm_sq(i, n);
    lsq[i] = lap[i] * lap[i];
  }
  const double lhs = integrate(hsq, quad);
  const double lap_sq = integrate(lsq, quad);
  const double ric = ricci_energy(curv, f, quad);
  return make_check(lhs, lap_sq - ric, std::max({std::abs(lhs), lap_sq, std::abs(ric)}));
}

IdentityCheck verify_traceless_hessian(const RadialProfile& profile, const ZonalField& f,
                                       std::span<const double> source) {
  const int n = profile.dimension();
  const auto curv = curvature(profile);
  const auto quad = Quadrature::for_profile(profile);
  const auto hess = hessian_components(f, profile);
  std::vector<double> trace_free(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) trace_free[i] = hess.traceless_norm_sq(i, n);
  std::vector<double> lap = source.empty() ? laplacian(f, profile)
                                           : std::vector<double>(source.begin(), source.end());
  if (lap.size() != f.size()) throw std::invalid_argument("verify_traceless_hessian: grid mismatch");
  for (double& v : lap) v *= v;
  const double lhs = integrate(trace_free, quad);
  const double lap_term = static_cast<double>(n - 1) / n * integrate(lap, quad);
  const double ric = ricci_energy(curv, f, quad);
  return make_check(lhs, lap_term - ric, std::max({std::abs(lhs), lap_term, std::abs(ric)}));
}

IdentityCheck verify_weak_bianchi(const RadialProfile& profile, const ZonalField& f) {
  const int n = profile.dimension();
  const auto curv = curvature(profile);
  const auto quad = Quadrature::for_profile(profile);
  const double V = quad.volume();
  const double Rbar = integrate(curv.R, quad) / V;
  const auto lap = laplacian(f, profile);
  const auto inner = rico_hess_inner(curv, f, profile);
  const auto hess = hessian_components(f, profile);
  std::vector<double> a(f.size()), dev_sq(f.size()), lap_sq(f.size()), lap_abs(f.size()),
      hess_free(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double dev = curv.R[i] - Rbar;
    a[i] = dev * lap[i];
    dev_sq[i] = dev * dev;
    lap_sq[i] = lap[i] * lap[i];
    lap_abs[i] = std::abs(lap[i]);
    hess_free[i] = hess.traceless_norm_sq(i, n);
  }
  const double factor = 2.0 * n / (n - 2.0);
  const double lhs = integrate(a, quad);
  const double rhs = factor * integrate(inner, quad);
  double scale = 0.0;
  if (is_einstein(curv, quad, AuditOptions{}.einstein_floor)) {
    scale = sup_abs(curv.R) * integrate(lap_abs, quad);
  } else {
    scale = std::max(std::sqrt(integrate(dev_sq, quad) * integrate(lap_sq, quad)),
                     factor * std::sqrt(integrate(curv.rico_sq, quad) * integrate(hess_free, quad)));
  }
  return make_check(lhs, rhs, scale);
}

IdentityCheck verify_split(const RadialProfile& profile) {
  const int n = profile.dimension();
  const auto curv = curvature(profile);
  const auto quad = Quadrature::for_profile(profile);
  const double Rbar = integrate(curv.R, quad) / quad.volume();
  const double c = Rbar / n;
  std::vector<double> direct(curv.R.size()), split(curv.R.size()), magnitude(curv.R.size());
  double pointwise = 0.0;
  for (std::size_t i = 0; i < direct.size(); ++i) {
    const double a = curv.rho_r[i] - c;
    const double b = curv.rho_t[i] - c;
    direct[i] = a * a + (n - 1) * b * b;
    split[i] = curv.rico_sq[i] + (curv.R[i] - Rbar) * (curv.R[i] - Rbar) / n;
    const double ar = std::abs(curv.rho_r[i]) + std::abs(c);
    const double at = std::abs(curv.rho_t[i]) + std::abs(c);
    magnitude[i] = ar * ar + (n - 1) * at * at;
    const double denom = std::max(magnitude[i], 1e-300);
    pointwise = std::max(pointwise, std::abs(direct[i] - split[i]) / denom);
  }
  const double lhs = integrate(direct, quad);
  const double rhs = integrate(split, quad);
  auto check = make_check(lhs, rhs, std::max({std::abs(lhs), std::abs(rhs), integrate(magnitude, quad)}));
  check.residual = std::max(check.residual, pointwise);
  return check;
}

ProofChain proof_chain_report(const RadialProfile& profile, const AuditOptions& options) {
  const int n = profile.dimension();
  const auto curv = curvature(profile);
  const auto quad = Quadrature::for_profile(profile);
  const auto report = audit(profile, curv, options);
  ProofChain chain;
  chain.hypothesis_holds = report.hypothesis_holds;
  chain.einstein = report.ratio_indeterminate;
  chain.theorem_bound = report.sharp_main * report.rhs_main_raw;

  std::vector<double> source(profile.size(), 0.0);
  if (!chain.einstein) {
    for (std::size_t i = 0; i < source.size(); ++i) source[i] = curv.R[i] - report.Rbar;
  }
  const auto f = solve_poisson(profile, source);
  const auto inner = rico_hess_inner(curv, f, profile);
  const auto hess = hessian_components(f, profile);
  std::vector<double> sq(source.size()), free(source.size());
  for (std::size_t i = 0; i < sq.size(); ++i) {
    sq[i] = source[i] * source[i];
    free[i] = hess.traceless_norm_sq(i, n);
  }
  const double factor = 2.0 * n / (n - 2.0);
  const double rico_norm = std::sqrt(chain.einstein ? 0.0 : report.rhs_main_raw);
  chain.A = integrate(sq, quad);
  chain.B = factor * integrate(inner, quad);
  chain.cauchy_schwarz = factor * rico_norm * std::sqrt(integrate(free, quad));
  chain.ricci_slack = ricci_energy(curv, f, quad);
  chain.final_bound = factor * rico_norm * std::sqrt(static_cast<double>(n - 1) / n * chain.A);

  const double big = std::max(std::abs(chain.A), std::abs(chain.B));
  chain.identity_holds = std::abs(chain.A - chain.B) <= 1e-5 * big;
  const double tol = 1e-6;
  chain.monotone = chain.B <= chain.cauchy_schwarz * (1.0 + tol) &&
                   chain.cauchy_schwarz <= chain.final_bound * (1.0 + tol);
  return chain;
}

}  // namespace schur
