#include "schur/zonal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "schur/numerics.hpp"

namespace schur {

namespace {

bool mean_is_zero(std::span<const double> f, const Quadrature& quad) {
  double peak = 0.0;
  for (double v : f) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return true;
  return std::abs(integrate(f, quad)) <= 1e-10 * quad.volume() * peak;
}

}  // namespace

HarmonicSpec harmonic_spec(int n, int k) {
  if (k < 1) throw std::invalid_argument("zonal frequency k must be >= 1");
  return {k, static_cast<double>(static_cast<long long>(k) * (k + n - 1))};
}

Gegenbauer::Gegenbauer(double alpha, int degree) : alpha_(alpha), degree_(degree) {
  if (degree < 0) throw std::invalid_argument("Gegenbauer: negative degree");
}

double Gegenbauer::eval(double alpha, int degree, double x) {
  if (degree < 0) return 0.0;
  double prev = 1.0;
  if (degree == 0) return prev;
  double cur = 2.0 * alpha * x;
  for (int j = 2; j <= degree; ++j) {
    const double next = (2.0 * x * (j + alpha - 1.0) * cur - (j + 2.0 * alpha - 2.0) * prev) / j;
    prev = cur;
    cur = next;
  }
  return cur;
}

Gegenbauer::Jet Gegenbauer::jet(double x) const {
  // d/dx C_k^a = 2a C_{k-1}^{a+1}
  return {eval(alpha_, degree_, x), 2.0 * alpha_ * eval(alpha_ + 1.0, degree_ - 1, x),
          4.0 * alpha_ * (alpha_ + 1.0) * eval(alpha_ + 2.0, degree_ - 2, x)};
}

ZonalHarmonic::ZonalHarmonic(int n, int k) : n_(n), k_(k), poly_(0.5 * (n - 1), k) {
  if (n < 2) throw std::invalid_argument("ZonalHarmonic: n must be >= 2");
  if (k < 0) throw std::invalid_argument("ZonalHarmonic: k must be >= 0");
  // Post-hoc normalization by panel Gauss-Legendre in the polar angle.
  const auto& gl = numerics::gauss_legendre_8();
  const int panels = 64 + 16 * k;
  const double width = std::numbers::pi / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * width;
    for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
      const double th = mid + 0.5 * width * gl.nodes[q];
      const double c = poly_.value(std::cos(th));
      acc += gl.weights[q] * c * c * std::pow(std::sin(th), n - 1);
    }
  }
  acc *= 0.5 * width * unit_sphere_area(n - 1);
  scale_ = 1.0 / std::sqrt(acc);
}

Gegenbauer::Jet ZonalHarmonic::operator()(double theta) const {
  const double x = std::cos(theta);
  const double sn = std::sin(theta);
  const auto c = poly_.jet(x);
  return {scale_ * c.value, -scale_ * sn * c.d1, scale_ * (sn * sn * c.d2 - x * c.d1)};
}

double ZonalHarmonic::peak() const { return std::abs(scale_ * poly_.value(1.0)); }

bool is_unit_round(const RadialProfile& profile, double tol) {
  if (std::abs(profile.length() - std::numbers::pi) > tol * std::numbers::pi) return false;
  const auto phi = profile.phi();
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (std::abs(phi[i] - std::sin(profile.s(i))) > tol) return false;
  }
  return true;
}

std::pair<ZonalField, HarmonicSpec> zonal_harmonic(const RadialProfile& round_profile, int k) {
  if (!is_unit_round(round_profile)) {
    throw std::invalid_argument("zonal_harmonic: profile is not the unit round sphere");
  }
  const int n = round_profile.dimension();
  const auto spec = harmonic_spec(n, k);
  const Gegenbauer poly(0.5 * (n - 1), k);
  const std::size_t m = round_profile.size();
  ZonalField f;
  f.value.resize(m);
  f.d1.resize(m);
  f.d2.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double th = round_profile.s(i);
    const double x = std::cos(th);
    const double sn = std::sin(th);
    const auto c = poly.jet(x);
    f.value[i] = c.value;
    f.d1[i] = -sn * c.d1;
    f.d2[i] = sn * sn * c.d2 - x * c.d1;
  }
  const auto quad = Quadrature::for_profile(round_profile);
  std::vector<double> sq(m);
  for (std::size_t i = 0; i < m; ++i) sq[i] = f.value[i] * f.value[i];
  const double scale = 1.0 / std::sqrt(integrate(sq, quad));
  for (std::size_t i = 0; i < m; ++i) {
    f.value[i] *= scale;
    f.d1[i] *= scale;
    f.d2[i] *= scale;
  }
  f.mean_removed = mean_is_zero(f.value, quad);
  return {std::move(f), spec};
}

ZonalField zonal_test_function(const RadialProfile& profile, int k) {
  if (k < 0) throw std::invalid_argument("zonal_test_function: k must be >= 0");
  const int n = profile.dimension();
  const Gegenbauer poly(0.5 * (n - 1), k);
  const double norm = 1.0 / poly.value(1.0);
  const double w = std::numbers::pi / profile.length();
  const std::size_t m = profile.size();
  ZonalField f;
  f.value.resize(m);
  f.d1.resize(m);
  f.d2.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double th = w * profile.s(i);
    const double x = std::cos(th);
    const double sn = std::sin(th);
    const auto c = poly.jet(x);
    f.value[i] = norm * c.value;
    f.d1[i] = -norm * w * sn * c.d1;
    f.d2[i] = norm * w * w * (sn * sn * c.d2 - x * c.d1);
  }
  f.mean_removed = mean_is_zero(f.value, Quadrature::for_profile(profile));
  return f;
}

ZonalField zonal_from_samples(const RadialProfile& profile, std::vector<double> values) {
  if (values.size() != profile.size()) {
    throw std::invalid_argument("zonal_from_samples: samples do not match the profile grid");
  }
  ZonalField f;
  f.d1 = numerics::derivative1(values, profile.spacing(), numerics::Parity::even);
  f.d2 = numerics::derivative2(values, profile.spacing(), numerics::Parity::even);
  f.value = std::move(values);
  f.mean_removed = mean_is_zero(f.value, Quadrature::for_profile(profile));
  return f;
}

}  // namespace schur
