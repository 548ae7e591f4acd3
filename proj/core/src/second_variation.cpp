#include "schur/second_variation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "schur/metric_families.hpp"
#include "schur/numerics.hpp"
#include "schur/scalar_calculus.hpp"
#include "schur/schur_audit.hpp"

namespace schur {

namespace {

void require_dimension(int n) {
  if (n < 3) throw std::invalid_argument("second variation needs n >= 3");
}

int frequency_of(int n, double lambda) {
  const double b = n - 1.0;
  const double k = std::round(0.5 * (-b + std::sqrt(b * b + 4.0 * lambda)));
  if (k < 1.0 || std::abs(k * (k + b) - lambda) > 1e-9 * std::max(1.0, lambda)) {
    throw std::invalid_argument("lambda = " + std::to_string(lambda) +
                                " is not k(k+n-1) for an integer k >= 1");
  }
  return static_cast<int>(k);
}

double sup_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double second_difference(double minus, double zero, double plus, double h) {
  return (plus - 2.0 * zero + minus) / (h * h);
}

// Arclength at which the conformal profile reaches polar angle theta.
double arclength_at(const ConformalProfile& c, double theta) {
  const double hs = c.profile.spacing();
  const double L = c.profile.length();
  double s = theta / std::numbers::pi * L;
  for (int it = 0; it < 20; ++it) {
    const double th = numerics::interpolate(c.theta, hs, s);
    const double dtheta = (numerics::interpolate(c.theta, hs, std::min(L, s + 0.5 * hs)) -
                           numerics::interpolate(c.theta, hs, std::max(0.0, s - 0.5 * hs))) /
                          (std::min(L, s + 0.5 * hs) - std::max(0.0, s - 0.5 * hs));
    const double step = (th - theta) / dtheta;
    s = std::clamp(s - step, 0.0, L);
    if (std::abs(step) <= 1e-15 * L) break;
  }
  return s;
}

}  // namespace

FirstVariations first_variations(const RadialProfile& round, const ZonalField& f) {
  if (!is_unit_round(round)) throw std::invalid_argument("first_variations: profile is not the unit round sphere");
  if (f.size() != round.size()) throw std::invalid_argument("first_variations: grid mismatch");
  const int n = round.dimension();
  const auto lap = laplacian(f, round);
  const auto hess = hessian_components(f, round);
  const auto quad = Quadrature::for_profile(round);
  const double R0 = n * (n - 1.0);
  FirstVariations v;
  const std::size_t m = f.size();
  v.dvol_density.resize(m);
  v.g_inverse.resize(m);
  v.dric_radial.resize(m);
  v.dric_tangential.resize(m);
  v.dR.resize(m);
  std::vector<double> dint(m);
  for (std::size_t i = 0; i < m; ++i) {
    v.dvol_density[i] = 0.5 * n * f.value[i];
    v.g_inverse[i] = -f.value[i];
    v.dric_radial[i] = -0.5 * (lap[i] + (n - 2) * hess.radial[i]);
    v.dric_tangential[i] = -0.5 * (lap[i] + (n - 2) * hess.tangential[i]);
    v.dR[i] = -(n - 1) * lap[i] - R0 * f.value[i];
    dint[i] = v.dR[i] + R0 * v.dvol_density[i];
  }
  v.dV = integrate(v.dvol_density, quad);
  v.dintR = integrate(dint, quad);
  return v;
}

VariationIntegrals variation_integrals(int n, double lambda) {
  require_dimension(n);
  frequency_of(n, lambda);
  const double m = n - 1.0;
  const double d = n - 2.0;
  VariationIntegrals I;
  I.I_R = m * m * (lambda - n) * (lambda - n);
  I.I_fRic = m * lambda;
  I.I_Ric2 = 0.25 * n * m * lambda * lambda - 0.25 * d * d * m * lambda;
  return I;
}

double F_second_derivative(int n, double C, double lambda) {
  const auto I = variation_integrals(n, lambda);
  const double m = n - 1.0;
  return -(2.0 * C / n) * I.I_R + 2.0 * (C - 1.0) * I.I_Ric2 - 4.0 * (C - 1.0) * m * I.I_fRic +
         2.0 * (C - 1.0) * n * m * m;
}

PieceSecondDerivatives piece_second_derivatives(int n, double lambda, double Vpp, double intRpp) {
  const auto I = variation_integrals(n, lambda);
  const double m = n - 1.0;
  const double nm = n * m;
  PieceSecondDerivatives p;
  p.F1pp = 2.0 * m * intRpp + 2.0 * I.I_Ric2 - 4.0 * m * I.I_fRic + 2.0 * n * m * m - n * m * m * Vpp;
  p.F2pp = 2.0 * nm * intRpp + 2.0 * I.I_R - nm * nm * Vpp;
  p.F3pp = -nm * nm * Vpp + 2.0 * nm * intRpp;
  return p;
}

double volume_second_derivative(int n) { return 0.25 * n * (n - 2.0); }

double leading_coefficient(int n, double C) {
  require_dimension(n);
  return (n - 1.0) / (2.0 * n) * (C * (n - 2.0) * (n - 2.0) - static_cast<double>(n) * n);
}

Rational leading_coefficient(int n, const Rational& C) {
  require_dimension(n);
  const std::int64_t m = n;
  return Rational(m - 1, 2 * m) * (C * Rational((m - 2) * (m - 2)) - Rational(m * m));
}

QuadraticInLambda second_derivative_polynomial(int n, const Rational& C) {
  require_dimension(n);
  const std::int64_t m = n;
  const Rational one(1);
  const Rational nm1(m - 1);
  const Rational d2((m - 2) * (m - 2));
  const Rational c1 = C - one;
  QuadraticInLambda q;
  // I_R = (n-1)^2 (lambda^2 - 2n lambda + n^2), I_Ric2 = n(n-1)/4 lambda^2 - (n-2)^2 (n-1)/4 lambda,
  // I_fRic = (n-1) lambda.
  const Rational cR = -Rational(2) * C / Rational(m) * nm1 * nm1;
  q.a2 = cR + Rational(2) * c1 * Rational(m * (m - 1), 4);
  q.a1 = cR * Rational(-2 * m) - Rational(2) * c1 * d2 * nm1 / Rational(4) -
         Rational(4) * c1 * nm1 * nm1;
  q.a0 = cR * Rational(m * m) + Rational(2) * c1 * Rational(m) * nm1 * nm1;
  return q;
}

FunctionalSample functional_sample(const RadialProfile& profile, double t) {
  const int n = profile.dimension();
  const auto curv = curvature(profile);
  const auto quad = Quadrature::for_profile(profile);
  FunctionalSample s;
  s.t = t;
  s.V = quad.volume();
  s.intR = integrate(curv.R, quad);
  const double Rbar = s.intR / s.V;
  const double c = Rbar / n;
  const std::size_t m = profile.size();
  std::vector<double> ric(m), rsq(m), shifted(m), dev(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double a = curv.rho_r[i];
    const double b = curv.rho_t[i];
    ric[i] = a * a + (n - 1) * b * b;
    rsq[i] = curv.R[i] * curv.R[i];
    shifted[i] = (a - c) * (a - c) + (n - 1) * (b - c) * (b - c);
    dev[i] = (curv.R[i] - Rbar) * (curv.R[i] - Rbar);
  }
  s.F1 = integrate(ric, quad);
  s.F2 = integrate(rsq, quad);
  s.rico = integrate(curv.rico_sq, quad);
  s.shifted = integrate(shifted, quad);
  s.lhs_main = integrate(dev, quad);
  return s;
}

FdStencil fd_stencil(int n, int k, double h, std::size_t intervals) {
  if (!(h > 0.0)) throw std::invalid_argument("fd_stencil: step must be positive");
  FdStencil st;
  st.n = n;
  st.k = k;
  st.h = h;
  st.intervals = intervals;
  auto sample = [&](double t) { return functional_sample(conformal_zonal(n, k, t, intervals).profile, t); };
  st.minus = sample(-h);
  st.minus_half = sample(-0.5 * h);
  st.zero = sample(0.0);
  st.plus_half = sample(0.5 * h);
  st.plus = sample(h);
  return st;
}

double VariationReport::fd_relative_error() const {
  const double scale = std::abs(Fpp_analytic);
  const double diff = std::abs(Fpp_fd - Fpp_analytic);
  return scale > 0.0 ? diff / scale : diff;
}

bool VariationReport::fd_agrees(double tol_abs) const {
  return std::abs(Fpp_fd - Fpp_analytic) <= std::max(0.01 * std::abs(Fpp_analytic), tol_abs);
}

bool VariationReport::step_halving_consistent() const {
  return std::abs(Fpp_fd_half - Fpp_fd) <= 0.01 * std::abs(Fpp_analytic);
}

VariationReport fd_cross_check(const FdStencil& st, double C) {
  const int n = st.n;
  const double h = st.h;
  VariationReport r;
  r.n = n;
  r.C = C;
  r.k = st.k;
  r.lambda = static_cast<double>(st.k) * (st.k + n - 1);
  r.h = h;
  r.intervals = st.intervals;
  r.Vpp_fd = second_difference(st.minus.V, st.zero.V, st.plus.V, h);
  r.intRpp_fd = second_difference(st.minus.intR, st.zero.intR, st.plus.intR, h);
  const auto pieces = piece_second_derivatives(n, r.lambda, r.Vpp_fd, r.intRpp_fd);
  r.F1pp = pieces.F1pp;
  r.F2pp = pieces.F2pp;
  r.F3pp = pieces.F3pp;
  r.F1pp_fd = second_difference(st.minus.F1, st.zero.F1, st.plus.F1, h);
  r.F2pp_fd = second_difference(st.minus.F2, st.zero.F2, st.plus.F2, h);
  r.F3pp_fd = second_difference(st.minus.F3(), st.zero.F3(), st.plus.F3(), h);
  r.Fpp_analytic = F_second_derivative(n, C, r.lambda);
  r.Fpp_assembled = (C - 1.0) * r.F1pp - (C / n) * r.F2pp + r.F3pp / n;
  r.Fpp_fd = second_difference(st.minus.F(C), st.zero.F(C), st.plus.F(C), h);
  r.Fprime_fd = (st.plus.F(C) - st.minus.F(C)) / (2.0 * h);
  const double fprime_half = (st.plus_half.F(C) - st.minus_half.F(C)) / h;
  r.Fprime_richardson = (4.0 * fprime_half - r.Fprime_fd) / 3.0;
  r.Fpp_fd_half = second_difference(st.minus_half.F(C), st.zero.F(C), st.plus_half.F(C), 0.5 * h);
  r.Fpp_richardson = (4.0 * r.Fpp_fd_half - r.Fpp_fd) / 3.0;
  r.leading_coeff = leading_coefficient(n, C);
  r.ratio_perturbative = sharp_constants(n).main.to_double() * (r.lambda - n) / r.lambda;
  return r;
}

VariationReport fd_cross_check(int n, int k, double C, double h, std::size_t intervals) {
  return fd_cross_check(fd_stencil(n, k, h, intervals), C);
}

double extrapolate_to_zero(double t1, double r1, double t2, double r2) {
  if (t1 == t2) throw std::invalid_argument("extrapolate_to_zero: distinct abscissae required");
  return (t1 * r2 - t2 * r1) / (t1 - t2);
}

RatioLaw ratio_law(int n, int k, double t_coarse, double t_fine, std::size_t intervals) {
  RatioLaw law;
  law.n = n;
  law.k = k;
  law.t_coarse = t_coarse;
  law.t_fine = t_fine;
  law.ratio_coarse = audit(conformal_zonal(n, k, t_coarse, intervals).profile).ratio;
  law.ratio_fine = audit(conformal_zonal(n, k, t_fine, intervals).profile).ratio;
  law.extrapolated = extrapolate_to_zero(t_coarse, law.ratio_coarse, t_fine, law.ratio_fine);
  const double lambda = static_cast<double>(k) * (k + n - 1);
  law.predicted = sharp_constants(n).main.to_double() * (lambda - n) / lambda;
  return law;
}

FrequencySearch find_violating_frequency(int n, double C, int k_max) {
  require_dimension(n);
  if (k_max < 1) throw std::invalid_argument("find_violating_frequency: k_max must be >= 1");
  FrequencySearch out;
  out.k_max = k_max;
  out.below_sharp = C < sharp_constants(n).corollary.to_double();
  for (int k = 2; k <= k_max; ++k) {
    const double lambda = static_cast<double>(k) * (k + n - 1);
    if (F_second_derivative(n, C, lambda) < 0.0) {
      out.k = k;
      break;
    }
  }
  return out;
}

FirstVariationCheck first_variation_fd_check(int n, int k, double h, std::size_t intervals) {
  const auto round = round_profile(n, 1.0, intervals);
  const ZonalHarmonic harmonic(n, k);
  ZonalField f;
  f.value.resize(round.size());
  f.d1.resize(round.size());
  f.d2.resize(round.size());
  for (std::size_t i = 0; i < round.size(); ++i) {
    const auto j = harmonic(round.s(i));
    f.value[i] = j.value;
    f.d1[i] = j.d1;
    f.d2[i] = j.d2;
  }
  const auto var = first_variations(round, f);

  const auto plus = conformal_zonal(n, k, h, intervals);
  const auto minus = conformal_zonal(n, k, -h, intervals);
  const auto cp = curvature(plus.profile);
  const auto cm = curvature(minus.profile);
  const auto sp = functional_sample(plus.profile, h);
  const auto sm = functional_sample(minus.profile, -h);
  const auto s0 = functional_sample(round, 0.0);

  // density of dvol_t relative to dvol_sigma at fixed theta: (phi/sin theta)^{n-1} ds/dtheta
  auto density = [n](const ConformalProfile& c, double s, double theta) {
    const double hs = c.profile.spacing();
    const double L = c.profile.length();
    const double a = std::max(0.0, s - 0.5 * hs);
    const double b = std::min(L, s + 0.5 * hs);
    const double dtheta = (numerics::interpolate(c.theta, hs, b) - numerics::interpolate(c.theta, hs, a)) / (b - a);
    const double phi = numerics::interpolate(c.profile.phi(), hs, s);
    return std::pow(phi / std::sin(theta), n - 1) / dtheta;
  };

  std::vector<double> eR, evol, er, et;
  // skip a few nodes at each pole, where the density quotient is 0/0
  const std::size_t skip = 8;
  for (std::size_t i = skip; i + skip < round.size(); ++i) {
    const double theta = round.s(i);
    const double s_plus = arclength_at(plus, theta);
    const double s_minus = arclength_at(minus, theta);
    const double hp = plus.profile.spacing();
    const double hm = minus.profile.spacing();
    auto at = [](const std::vector<double>& v, double hh, double s) { return numerics::interpolate(v, hh, s); };
    const double dR = (at(cp.R, hp, s_plus) - at(cm.R, hm, s_minus)) / (2.0 * h);
    const double rr = ((1.0 + h * f.value[i]) * at(cp.rho_r, hp, s_plus) -
                       (1.0 - h * f.value[i]) * at(cm.rho_r, hm, s_minus)) / (2.0 * h);
    const double rt = ((1.0 + h * f.value[i]) * at(cp.rho_t, hp, s_plus) -
                       (1.0 - h * f.value[i]) * at(cm.rho_t, hm, s_minus)) / (2.0 * h);
    const double dv = (density(plus, s_plus, theta) - density(minus, s_minus, theta)) / (2.0 * h);
    eR.push_back(std::abs(dR - var.dR[i]));
    evol.push_back(std::abs(dv - var.dvol_density[i]));
    er.push_back(std::abs(rr - var.dric_radial[i]));
    et.push_back(std::abs(rt - var.dric_tangential[i]));
  }
  auto rel = [](const std::vector<double>& err, const std::vector<double>& ref) {
    const double s = sup_abs(ref);
    return s > 0.0 ? sup_abs(err) / s : sup_abs(err);
  };
  FirstVariationCheck out;
  out.dR = rel(eR, var.dR);
  out.dvol = rel(evol, var.dvol_density);
  out.dric_radial = rel(er, var.dric_radial);
  out.dric_tangential = rel(et, var.dric_tangential);
  out.dV = std::abs((sp.V - sm.V) / (2.0 * h)) / s0.V;
  out.dintR = std::abs((sp.intR - sm.intR) / (2.0 * h)) / std::abs(s0.intR);
  return out;
}

}  // namespace schur
