#include "schur/metric_families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "schur/numerics.hpp"
#include "schur/zonal.hpp"

namespace schur {

namespace {

constexpr double kPi = std::numbers::pi;

void require_grid(std::size_t intervals) {
  if (intervals < RadialProfile::kMinIntervals || intervals % 2 != 0) {
    throw std::invalid_argument("grid needs an even interval count >= " +
                                std::to_string(RadialProfile::kMinIntervals));
  }
}

// Arclength measured from one pole of the conformal sphere as a function of
// the angle u from that pole, tabulated on panels and refined by Gauss-Legendre.
class HalfArc {
 public:
  HalfArc(const ZonalHarmonic& f, double t, bool from_south, std::size_t panels)
      : f_(f), t_(t), south_(from_south), width_(kPi / static_cast<double>(panels)) {
    knots_.assign(panels + 1, 0.0);
    for (std::size_t j = 0; j < panels; ++j) {
      const double a = static_cast<double>(j) * width_;
      knots_[j + 1] = knots_[j] + segment(a, a + width_);
    }
  }

  double total() const { return knots_.back(); }

  double speed(double u) const {
    const double theta = south_ ? kPi - u : u;
    return std::sqrt(1.0 + t_ * f_(theta).value);
  }

  double arc(double u) const {
    const auto panels = knots_.size() - 1;
    const auto j = std::min(static_cast<std::size_t>(u / width_), panels - 1);
    const double a = static_cast<double>(j) * width_;
    return knots_[j] + segment(a, u);
  }

  // Angle at which the arclength from this pole equals sigma.
  std::vector<double> invert(const std::vector<double>& sigma) const {
    std::vector<double> u_knots(knots_.size());
    for (std::size_t j = 0; j < u_knots.size(); ++j) u_knots[j] = static_cast<double>(j) * width_;
    const numerics::MonotoneCubic guess(knots_, u_knots);
    std::vector<double> out(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      double u = std::clamp(guess(sigma[i]), 0.0, kPi);
      for (int it = 0; it < 8; ++it) {
        const double step = (arc(u) - sigma[i]) / speed(u);
        u = std::clamp(u - step, 0.0, kPi);
        if (std::abs(step) <= 1e-15 * (1.0 + u)) break;
      }
      out[i] = u;
    }
    return out;
  }

 private:
  double segment(double a, double b) const {
    if (b <= a) return 0.0;
    const auto& gl = numerics::gauss_legendre_8();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t q = 0; q < gl.nodes.size(); ++q) acc += gl.weights[q] * speed(mid + half * gl.nodes[q]);
    return acc * half;
  }

  const ZonalHarmonic& f_;
  double t_;
  bool south_;
  double width_;
  std::vector<double> knots_;
};

struct Jet {
  double v;
  double d1;
  double d2;
};

Jet round_cap(double radius, double u) {
  // phi = r sin(u / r) in the distance u from the cap's own pole.
  return {radius * std::sin(u / radius), std::cos(u / radius), -std::sin(u / radius) / radius};
}

Jet transition(BlendKind kind, double x) {
  if (x <= 0.0) return {0.0, 0.0, 0.0};
  if (x >= 1.0) return {1.0, 0.0, 0.0};
  if (kind == BlendKind::quintic) {
    const double x2 = x * x;
    return {x2 * x * (10.0 + x * (-15.0 + 6.0 * x)), 30.0 * x2 * (1.0 - x) * (1.0 - x),
            60.0 * x * (1.0 - x) * (1.0 - 2.0 * x)};
  }
  // S = e(x) / (e(x) + e(1-x)) with e(x) = exp(-1/x), written as a logistic in
  // z = 1/(1-x) - 1/x to stay finite near the ends.
  const double y = 1.0 - x;
  const double z = 1.0 / y - 1.0 / x;
  const double z1 = 1.0 / (y * y) + 1.0 / (x * x);
  const double z2 = 2.0 / (y * y * y) - 2.0 / (x * x * x);
  const double s = 1.0 / (1.0 + std::exp(-z));
  const double ds = s * (1.0 - s);
  return {s, ds * z1, ds * z2 + ds * (1.0 - 2.0 * s) * z1 * z1};
}

Jet blend(const Jet& a, const Jet& b, const Jet& S) {
  const double gap = b.v - a.v;
  const double gap1 = b.d1 - a.d1;
  const double gap2 = b.d2 - a.d2;
  return {a.v + S.v * gap, a.d1 + S.v * gap1 + S.d1 * gap,
          a.d2 + S.v * gap2 + 2.0 * S.d1 * gap1 + S.d2 * gap};
}

// Polar angle in (pi/2, pi) where a cap of radius r meets eps cosh tangentially.
double tangency_angle(double eps, double r) {
  const double q2 = (eps / r) * (eps / r);
  return kPi - std::acos(std::sqrt((1.0 - q2) / (1.0 + q2)));
}

}  // namespace

RadialProfile round_profile(int n, double radius, std::size_t intervals) {
  require_grid(intervals);
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("round: radius must be positive and finite");
  }
  const double L = kPi * radius;
  std::vector<double> phi(intervals + 1), d1(intervals + 1), d2(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    // Angle from the nearer pole keeps full relative accuracy at both ends.
    const std::size_t j = std::min(i, intervals - i);
    const double a = kPi * static_cast<double>(j) / static_cast<double>(intervals);
    phi[i] = radius * std::sin(a);
    d1[i] = i == j ? std::cos(a) : -std::cos(a);
    d2[i] = -std::sin(a) / radius;
  }
  return RadialProfile::with_derivatives(n, L, std::move(phi), std::move(d1), std::move(d2));
}

ConformalProfile conformal_zonal(int n, int k, double t, std::size_t intervals) {
  require_grid(intervals);
  if (n < 3) throw std::invalid_argument("conformal_zonal: n must be >= 3");
  if (k < 1) throw std::invalid_argument("conformal_zonal: k must be >= 1");
  const ZonalHarmonic f(n, k);
  if (!(std::abs(t) * f.peak() < 0.5)) {
    std::ostringstream os;
    os << "conformal_zonal: |t| max|f| = " << std::abs(t) * f.peak()
       << " must stay below 0.5 (conformal factor too close to zero)";
    throw std::invalid_argument(os.str());
  }

  const HalfArc north(f, t, false, intervals);
  const HalfArc south(f, t, true, intervals);
  const double L = north.total();
  const std::size_t half = intervals / 2;
  std::vector<double> sigma_n(half + 1), sigma_s(intervals - half);
  for (std::size_t i = 0; i <= half; ++i) sigma_n[i] = L * static_cast<double>(i) / intervals;
  for (std::size_t i = half + 1; i <= intervals; ++i) {
    sigma_s[i - half - 1] = L * static_cast<double>(intervals - i) / intervals;
  }
  const auto u_n = north.invert(sigma_n);
  const auto u_s = south.invert(sigma_s);

  std::vector<double> phi(intervals + 1), d1(intervals + 1), d2(intervals + 1), theta(intervals + 1);
  double factor_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= intervals; ++i) {
    const bool is_south = i > half;
    const double u = is_south ? u_s[i - half - 1] : u_n[i];
    const double th = is_south ? kPi - u : u;
    const double sn = std::sin(u);
    const double cs = is_south ? -std::cos(u) : std::cos(u);
    const auto fj = f(th);
    const double factor = 1.0 + t * fj.value;
    factor_min = std::min(factor_min, factor);
    const double w = std::sqrt(factor);
    const double w1 = 0.5 * t * fj.d1 / w;
    const double w2 = 0.5 * t * fj.d2 / w - w1 * w1 / w;
    const double p = w1 * sn + w * cs;
    const double p1 = w2 * sn + 2.0 * w1 * cs - w * sn;
    theta[i] = th;
    phi[i] = w * sn;
    d1[i] = p / w;
    d2[i] = (p1 * w - p * w1) / (w * w * w);
  }
  return {RadialProfile::with_derivatives(n, L, std::move(phi), std::move(d1), std::move(d2)), k, t,
          factor_min, std::move(theta)};
}

NeckLayout neck_layout(const NeckSpec& spec) {
  std::vector<std::string> issues;
  if (spec.n < 3) issues.push_back("n must be >= 3");
  if (!(spec.r1 > 0.0) || !(spec.r2 > 0.0)) issues.push_back("cap radii must be positive");
  if (!(spec.eps > 0.0) || !(spec.eps < 0.25 * std::min(spec.r1, spec.r2))) {
    issues.push_back("eps must lie in (0, min(r1, r2)/4)");
  }
  const double width = spec.blend_width == 0.0 ? 1.5 * spec.eps : spec.blend_width;
  if (!(width > 0.5 * spec.eps && width < 4.0 * spec.eps)) {
    issues.push_back("blend_width must lie in (eps/2, 4 eps)");
  }
  if (!issues.empty()) {
    std::ostringstream os;
    os << "invalid neck spec:";
    for (const auto& s : issues) os << "\n  - " << s;
    throw std::invalid_argument(os.str());
  }
  NeckLayout lay;
  lay.blend_width = width;
  lay.cap1_angle = tangency_angle(spec.eps, spec.r1);
  lay.cap2_angle = tangency_angle(spec.eps, spec.r2);
  const double x1 = std::asinh(std::cos(lay.cap1_angle));   // < 0
  const double x2 = -std::asinh(std::cos(lay.cap2_angle));  // > 0
  lay.joint1_s = lay.cap1_angle * spec.r1;
  lay.waist_s = lay.joint1_s - spec.eps * x1;
  lay.joint2_s = lay.waist_s + spec.eps * x2;
  lay.length = lay.joint2_s + lay.cap2_angle * spec.r2;

  // Each blend window must stay clear of the waist and of the cap's far pole.
  const double reach1 = std::min(-x1 * spec.eps, spec.r1 * (kPi - lay.cap1_angle));
  const double reach2 = std::min(x2 * spec.eps, spec.r2 * (kPi - lay.cap2_angle));
  if (0.5 * width >= reach1 || 0.5 * width >= reach2) {
    std::ostringstream os;
    os << "invalid neck spec:\n  - blend window half-width " << 0.5 * width
       << " reaches past the waist or the cap (limits " << reach1 << ", " << reach2 << ")";
    throw std::invalid_argument(os.str());
  }
  return lay;
}

NeckProfile neck(const NeckSpec& spec, std::size_t intervals) {
  require_grid(intervals);
  const auto lay = neck_layout(spec);
  const double eps = spec.eps;
  const double L = lay.length;
  const double half_w = 0.5 * lay.blend_width;

  auto cap1 = [&](double s) { return round_cap(spec.r1, s); };
  auto cap2 = [&](double s) {
    auto j = round_cap(spec.r2, L - s);
    j.d1 = -j.d1;
    return j;
  };
  auto waist = [&](double s) {
    const double x = (s - lay.waist_s) / eps;
    return Jet{eps * std::cosh(x), std::sinh(x), std::cosh(x) / eps};
  };

  std::vector<double> phi(intervals + 1), d1(intervals + 1), d2(intervals + 1);
  const double h = L / static_cast<double>(intervals);
  double waist_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= intervals; ++i) {
    Jet j{};
    if (i == 0) {
      j = {0.0, 1.0, 0.0};
    } else if (i == intervals) {
      j = {0.0, -1.0, 0.0};
    } else {
      const double s = static_cast<double>(i) * h;
      if (s <= lay.joint1_s - half_w) {
        j = cap1(s);
      } else if (s < lay.joint1_s + half_w) {
        auto S = transition(spec.blend, (s - lay.joint1_s + half_w) / lay.blend_width);
        S.d1 /= lay.blend_width;
        S.d2 /= lay.blend_width * lay.blend_width;
        j = blend(cap1(s), waist(s), S);
      } else if (s <= lay.joint2_s - half_w) {
        j = waist(s);
      } else if (s < lay.joint2_s + half_w) {
        auto S = transition(spec.blend, (s - lay.joint2_s + half_w) / lay.blend_width);
        S.d1 /= lay.blend_width;
        S.d2 /= lay.blend_width * lay.blend_width;
        j = blend(waist(s), cap2(s), S);
      } else {
        // Distance from the south pole counted in whole cells keeps phi exact there.
        j = cap2(s);
        j.v = spec.r2 * std::sin(static_cast<double>(intervals - i) * h / spec.r2);
      }
      if (s > lay.neck_begin() && s < lay.neck_end()) waist_min = std::min(waist_min, j.v);
    }
    phi[i] = j.v;
    d1[i] = j.d1;
    d2[i] = j.d2;
  }
  NeckProfile out{RadialProfile::with_derivatives(spec.n, L, std::move(phi), std::move(d1), std::move(d2)),
                  spec, lay, waist_min};
  if (!(out.waist >= 0.9 * eps && out.waist <= 1.5 * eps)) {
    std::ostringstream os;
    os << "neck: waist " << out.waist << " outside [0.9 eps, 1.5 eps]";
    throw ProfileError({os.str()});
  }
  return out;
}

double neck_rico_integral(const NeckProfile& neck) {
  const auto& p = neck.profile;
  const auto curv = curvature(p);
  const auto quad = Quadrature::for_profile(p);
  std::vector<double> masked(p.size(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double s = p.s(i);
    if (s >= neck.layout.neck_begin() && s <= neck.layout.neck_end()) masked[i] = curv.rico_sq[i];
  }
  return integrate(masked, quad);
}

std::string family_name(const FamilySpec& spec) {
  struct {
    std::string operator()(const RoundSpec&) const { return "round"; }
    std::string operator()(const ConformalSpec&) const { return "conformal_zonal"; }
    std::string operator()(const NeckSpec&) const { return "neck"; }
    std::string operator()(const SamplesSpec&) const { return "samples"; }
  } v;
  return std::visit(v, spec);
}

int family_dimension(const FamilySpec& spec) {
  return std::visit([](const auto& s) { return s.n; }, spec);
}

RadialProfile build_profile(const FamilySpec& spec, std::size_t intervals) {
  struct {
    std::size_t intervals;
    RadialProfile operator()(const RoundSpec& s) const { return round_profile(s.n, s.radius, intervals); }
    RadialProfile operator()(const ConformalSpec& s) const {
      return conformal_zonal(s.n, s.k, s.t, intervals).profile;
    }
    RadialProfile operator()(const NeckSpec& s) const { return neck(s, intervals).profile; }
    RadialProfile operator()(const SamplesSpec& s) const {
      return RadialProfile::from_samples(s.n, s.length, s.phi);
    }
  } v{intervals};
  return std::visit(v, spec);
}

}  // namespace schur
