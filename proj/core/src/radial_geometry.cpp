#include "schur/radial_geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "schur/numerics.hpp"

namespace schur {

namespace {

constexpr std::size_t kPoleFitNodes = 32;
constexpr double kClosureTol = 1e-10;  // |phi(pole)| relative to max phi
constexpr double kSlopeTol = 1e-6;     // |phi'(pole)| - 1
constexpr double kMaxSlope = 1e3;      // cusp guard on |phi'|

std::string join_issues(const std::vector<std::string>& issues) {
  std::ostringstream os;
  os << "invalid radial profile:";
  for (const auto& s : issues) os << "\n  - " << s;
  return os.str();
}

// Least-squares fit of the odd pole model on the first kPoleFitNodes samples,
// where `dist` are distances to the pole and `vals` the phi samples.
PoleSeries fit_pole(std::span<const double> dist, std::span<const double> vals) {
  const auto m = static_cast<Eigen::Index>(dist.size());
  const double scale = dist.back();
  Eigen::MatrixXd free_basis(m, 4);
  Eigen::MatrixXd pinned_basis(m, 3);
  Eigen::VectorXd y(m);
  Eigen::VectorXd y_pinned(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double x = dist[static_cast<std::size_t>(i)] / scale;
    const double x2 = x * x;
    free_basis(i, 0) = x;
    free_basis(i, 1) = x * x2;
    free_basis(i, 2) = x * x2 * x2;
    free_basis(i, 3) = x * x2 * x2 * x2;
    pinned_basis.row(i) = free_basis.row(i).tail<3>();
    y(i) = vals[static_cast<std::size_t>(i)];
    y_pinned(i) = vals[static_cast<std::size_t>(i)] - dist[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd b_free = free_basis.colPivHouseholderQr().solve(y);
  const Eigen::VectorXd b = pinned_basis.colPivHouseholderQr().solve(y_pinned);
  PoleSeries ps;
  ps.slope = b_free(0) / scale;
  ps.c3 = b(0) / std::pow(scale, 3);
  ps.c5 = b(1) / std::pow(scale, 5);
  ps.c7 = b(2) / std::pow(scale, 7);
  return ps;
}

}  // namespace

ProfileError::ProfileError(std::vector<std::string> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

double PoleSeries::phi_d2_over_phi(double u) const {
  const double u2 = u * u;
  const double q = 1.0 + u2 * (c3 + u2 * (c5 + u2 * c7));
  return (6.0 * c3 + u2 * (20.0 * c5 + u2 * 42.0 * c7)) / q;
}

double PoleSeries::defect_over_phi_sq(double u) const {
  const double u2 = u * u;
  const double q = 1.0 + u2 * (c3 + u2 * (c5 + u2 * c7));
  const double v_over_u2 = 3.0 * c3 + u2 * (5.0 * c5 + u2 * 7.0 * c7);
  const double v = v_over_u2 * u2;
  return -v_over_u2 * (2.0 + v) / (q * q);
}

RadialProfile::RadialProfile(int n, double length, std::vector<double> phi, std::vector<double> d1,
                             std::vector<double> d2)
    : n_(n),
      length_(length),
      phi_(std::move(phi)),
      phi_d1_(std::move(d1)),
      phi_d2_(std::move(d2)) {}

namespace {

std::vector<std::string> shape_issues(int n, double length, std::size_t samples) {
  std::vector<std::string> issues;
  if (n < 3) issues.push_back("dimension n = " + std::to_string(n) + " must be >= 3");
  if (!(length > 0.0) || !std::isfinite(length)) {
    issues.push_back("total length must be positive and finite");
  }
  if (samples < RadialProfile::kMinIntervals + 1) {
    issues.push_back("need at least " + std::to_string(RadialProfile::kMinIntervals) +
                     " intervals, got " + std::to_string(samples == 0 ? 0 : samples - 1));
  } else if ((samples - 1) % 2 != 0) {
    issues.push_back("interval count must be even for Simpson quadrature");
  }
  return issues;
}

}  // namespace

RadialProfile RadialProfile::from_samples(int n, double length, std::vector<double> phi) {
  auto issues = shape_issues(n, length, phi.size());
  if (!issues.empty()) throw ProfileError(std::move(issues));
  const double h = length / static_cast<double>(phi.size() - 1);
  auto d1 = numerics::derivative1(phi, h, numerics::Parity::odd);
  auto d2 = numerics::derivative2(phi, h, numerics::Parity::odd);
  RadialProfile p(n, length, std::move(phi), std::move(d1), std::move(d2));
  p.validate_and_fit();
  return p;
}

RadialProfile RadialProfile::with_derivatives(int n, double length, std::vector<double> phi,
                                              std::vector<double> phi_d1,
                                              std::vector<double> phi_d2) {
  auto issues = shape_issues(n, length, phi.size());
  if (phi_d1.size() != phi.size() || phi_d2.size() != phi.size()) {
    issues.push_back("derivative sample counts do not match phi");
  }
  if (!issues.empty()) throw ProfileError(std::move(issues));
  RadialProfile p(n, length, std::move(phi), std::move(phi_d1), std::move(phi_d2));
  p.validate_and_fit();
  return p;
}

void RadialProfile::validate_and_fit() {
  std::vector<std::string> issues;
  const std::size_t m = phi_.size();
  double phi_max = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!std::isfinite(phi_[i]) || !std::isfinite(phi_d1_[i]) || !std::isfinite(phi_d2_[i])) {
      issues.push_back("non-finite sample at node " + std::to_string(i));
      throw ProfileError(std::move(issues));
    }
    phi_max = std::max(phi_max, phi_[i]);
  }
  if (!(phi_max > 0.0)) {
    issues.push_back("phi is nowhere positive");
    throw ProfileError(std::move(issues));
  }
  if (std::abs(phi_.front()) > kClosureTol * phi_max) {
    std::ostringstream os;
    os << "pole closure: phi(0) = " << phi_.front() << " (must vanish)";
    issues.push_back(os.str());
  }
  if (std::abs(phi_.back()) > kClosureTol * phi_max) {
    std::ostringstream os;
    os << "pole closure: phi(L) = " << phi_.back() << " (must vanish)";
    issues.push_back(os.str());
  }
  std::size_t bad_sign = 0;
  std::size_t first_bad = 0;
  for (std::size_t i = 1; i + 1 < m; ++i) {
    if (!(phi_[i] > 0.0)) {
      if (bad_sign++ == 0) first_bad = i;
    }
  }
  if (bad_sign > 0) {
    issues.push_back("phi <= 0 at " + std::to_string(bad_sign) + " interior node(s), first at " +
                     std::to_string(first_bad));
  }
  double max_slope = 0.0;
  for (double d : phi_d1_) max_slope = std::max(max_slope, std::abs(d));
  if (max_slope > kMaxSlope) {
    std::ostringstream os;
    os << "cusp: max |phi'| = " << max_slope;
    issues.push_back(os.str());
  }
  if (!issues.empty()) throw ProfileError(std::move(issues));

  // Pole series from the samples nearest each pole. The pole node itself is
  // excluded; phi(0) = 0 is built into the odd model.
  const double h = spacing();
  std::vector<double> dist(kPoleFitNodes);
  std::vector<double> north(kPoleFitNodes);
  std::vector<double> south(kPoleFitNodes);
  for (std::size_t j = 0; j < kPoleFitNodes; ++j) {
    dist[j] = static_cast<double>(j + 1) * h;
    north[j] = phi_[j + 1];
    south[j] = phi_[m - 2 - j];
  }
  north_ = fit_pole(dist, north);
  south_ = fit_pole(dist, south);
  if (std::abs(north_.slope - 1.0) > kSlopeTol) {
    std::ostringstream os;
    os << "pole regularity: phi'(0) = " << north_.slope << " (must be 1)";
    issues.push_back(os.str());
  }
  if (std::abs(south_.slope - 1.0) > kSlopeTol) {
    std::ostringstream os;
    os << "pole regularity: phi'(L) = " << -south_.slope << " (must be -1)";
    issues.push_back(os.str());
  }
  if (!issues.empty()) throw ProfileError(std::move(issues));
}

std::vector<double> RadialProfile::grid() const {
  std::vector<double> g(size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = s(i);
  return g;
}

double RadialProfile::pole_distance(std::size_t i) const noexcept {
  const std::size_t last = size() - 1;
  if (i < kPoleWindow) return s(i);
  if (last - i < kPoleWindow) return static_cast<double>(last - i) * spacing();
  return -1.0;
}

const PoleSeries& RadialProfile::pole_for(std::size_t i) const noexcept {
  return i < size() / 2 ? north_ : south_;
}

CurvatureField curvature(const RadialProfile& profile) {
  const std::size_t m = profile.size();
  const int n = profile.dimension();
  const double nm1 = n - 1;
  CurvatureField c;
  c.n = n;
  c.rho_r.resize(m);
  c.rho_t.resize(m);
  c.R.resize(m);
  c.rico_sq.resize(m);
  const auto phi = profile.phi();
  const auto d1 = profile.phi_d1();
  const auto d2 = profile.phi_d2();
  for (std::size_t i = 0; i < m; ++i) {
    double accel = 0.0;   // phi''/phi
    double defect = 0.0;  // (1 - phi'^2)/phi^2
    const double u = profile.pole_distance(i);
    if (u >= 0.0) {
      const auto& ps = profile.pole_for(i);
      accel = ps.phi_d2_over_phi(u);
      defect = ps.defect_over_phi_sq(u);
    } else {
      accel = d2[i] / phi[i];
      defect = (1.0 - d1[i] * d1[i]) / (phi[i] * phi[i]);
    }
    c.rho_r[i] = -nm1 * accel;
    c.rho_t[i] = -accel + (n - 2) * defect;
    c.R[i] = c.rho_r[i] + nm1 * c.rho_t[i];
    const double gap = c.rho_r[i] - c.rho_t[i];
    c.rico_sq[i] = nm1 / n * gap * gap;
  }
  c.dR = numerics::derivative1(c.R, profile.spacing(), numerics::Parity::even);
  return c;
}

double min_ricci_eigenvalue(const CurvatureField& curv) {
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < curv.rho_r.size(); ++i) {
    lo = std::min({lo, curv.rho_r[i], curv.rho_t[i]});
  }
  return lo;
}

double unit_sphere_area(int m) {
  const double half = 0.5 * (m + 1);
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

double sphere_volume(int n, double radius) {
  return unit_sphere_area(n) * std::pow(radius, n);
}

Quadrature Quadrature::for_profile(const RadialProfile& profile) {
  Quadrature q;
  q.weights = numerics::simpson_weights(profile.intervals(), profile.spacing());
  const auto phi = profile.phi();
  const int power = profile.dimension() - 1;
  for (std::size_t i = 0; i < q.weights.size(); ++i) q.weights[i] *= std::pow(phi[i], power);
  q.omega = unit_sphere_area(profile.dimension() - 1);
  return q;
}

double Quadrature::volume() const noexcept {
  double acc = 0.0;
  for (double w : weights) acc += w;
  return omega * acc;
}

double integrate(std::span<const double> samples, const Quadrature& quad) {
  if (samples.size() != quad.size()) {
    throw std::invalid_argument("integrate: samples (" + std::to_string(samples.size()) +
                                ") do not match quadrature grid (" + std::to_string(quad.size()) +
                                ")");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) acc += quad.weights[i] * samples[i];
  return quad.omega * acc;
}

}  // namespace schur
