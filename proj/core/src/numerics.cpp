#include "schur/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace schur::numerics {

std::vector<std::vector<double>> fornberg_weights(double x0, std::span<const double> nodes,
                                                  int max_order) {
  const std::size_t n = nodes.size();
  if (n == 0 || max_order < 0) throw std::invalid_argument("fornberg_weights: empty stencil");
  const auto m = static_cast<std::size_t>(max_order);
  std::vector<std::vector<double>> c(m + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k) {
          c[k][i] = c1 * (static_cast<double>(k) * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        }
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) {
        c[k][j] = (c4 * c[k][j] - static_cast<double>(k) * c[k - 1][j]) / c3;
      }
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

namespace {

constexpr std::size_t kHalfWidth = 4;  // central stencils span 2*kHalfWidth+1 nodes
constexpr std::size_t kEdgeWindow = 10;  // one-sided window for Parity::none
constexpr std::size_t kInterpWidth = 8;

// Weights of the central 9-point stencil for derivative `order`.
const std::array<double, 2 * kHalfWidth + 1>& central_weights(int order) {
  static const auto table = [] {
    std::array<std::array<double, 2 * kHalfWidth + 1>, 2> t{};
    std::array<double, 2 * kHalfWidth + 1> nodes{};
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      nodes[j] = static_cast<double>(j) - static_cast<double>(kHalfWidth);
    }
    const auto c = fornberg_weights(0.0, nodes, 2);
    std::copy(c[1].begin(), c[1].end(), t[0].begin());
    std::copy(c[2].begin(), c[2].end(), t[1].begin());
    return t;
  }();
  return table[order - 1];
}

std::vector<double> differentiate(std::span<const double> v, double h, int order, Parity parity) {
  const std::size_t m = v.size();
  if (m < 2 * kEdgeWindow) throw std::invalid_argument("derivative: grid too small");
  std::vector<double> out(m, 0.0);
  const double scale = order == 1 ? 1.0 / h : 1.0 / (h * h);
  const auto& cw = central_weights(order);
  const auto r = static_cast<std::ptrdiff_t>(kHalfWidth);
  const auto last = static_cast<std::ptrdiff_t>(m) - 1;
  const double sign = parity == Parity::odd ? -1.0 : 1.0;

  // Sample at any index, continuing past either end by reflection.
  auto at = [&](std::ptrdiff_t j) {
    if (j < 0) return sign * v[static_cast<std::size_t>(-j)];
    if (j > last) return sign * v[static_cast<std::size_t>(2 * last - j)];
    return v[static_cast<std::size_t>(j)];
  };

  for (std::ptrdiff_t i = 0; i <= last; ++i) {
    const bool edge = i < r || last - i < r;
    if (edge && parity == Parity::none) continue;
    double acc = 0.0;
    for (std::ptrdiff_t j = -r; j <= r; ++j) acc += cw[static_cast<std::size_t>(j + r)] * at(i + j);
    out[static_cast<std::size_t>(i)] = acc * scale;
  }
  if (parity != Parity::none) return out;

  std::array<double, kEdgeWindow> offsets{};
  for (std::size_t j = 0; j < kEdgeWindow; ++j) offsets[j] = static_cast<double>(j);
  for (std::size_t i = 0; i < kHalfWidth; ++i) {
    const auto w = fornberg_weights(static_cast<double>(i), offsets, order)[order];
    double left = 0.0;
    double right = 0.0;
    for (std::size_t j = 0; j < kEdgeWindow; ++j) {
      left += w[j] * v[j];
      // Mirror image: node m-1-i uses the reflected window, odd derivatives flip sign.
      right += w[j] * v[m - 1 - j];
    }
    out[i] = left * scale;
    out[m - 1 - i] = (order == 1 ? -right : right) * scale;
  }
  return out;
}

std::size_t window_start(std::size_t cell, std::size_t samples) {
  const std::size_t half = kInterpWidth / 2 - 1;
  const std::size_t start = cell > half ? cell - half : 0;
  return std::min(start, samples - kInterpWidth);
}

// Lagrange weights for the 8 Gauss points of a cell, keyed by the cell's
// offset inside its interpolation window.
struct CellWeights {
  std::array<std::array<std::array<double, kInterpWidth>, 8>, kInterpWidth - 1> w{};
};

const CellWeights& cell_weights() {
  static const CellWeights table = [] {
    CellWeights t;
    std::array<double, kInterpWidth> nodes{};
    for (std::size_t j = 0; j < kInterpWidth; ++j) nodes[j] = static_cast<double>(j);
    const auto& gl = gauss_legendre_8();
    for (std::size_t off = 0; off + 1 < kInterpWidth; ++off) {
      for (std::size_t q = 0; q < 8; ++q) {
        const double x = static_cast<double>(off) + 0.5 * (1.0 + gl.nodes[q]);
        const auto c = fornberg_weights(x, nodes, 0)[0];
        std::copy(c.begin(), c.end(), t.w[off][q].begin());
      }
    }
    return t;
  }();
  return table;
}

}  // namespace

std::vector<double> derivative1(std::span<const double> values, double h, Parity parity) {
  return differentiate(values, h, 1, parity);
}

std::vector<double> derivative2(std::span<const double> values, double h, Parity parity) {
  return differentiate(values, h, 2, parity);
}

std::vector<double> simpson_weights(std::size_t intervals, double h) {
  if (intervals < 2 || intervals % 2 != 0) {
    throw std::invalid_argument("simpson_weights: interval count must be even and >= 2");
  }
  std::vector<double> w(intervals + 1, 0.0);
  for (std::size_t i = 0; i <= intervals; ++i) {
    const double c = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    w[i] = c * h / 3.0;
  }
  return w;
}

const GaussLegendre& gauss_legendre_8() {
  static const GaussLegendre rule{
      {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
       0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363},
      {0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
       0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763}};
  return rule;
}

std::vector<double> cumulative_weighted_integral(std::span<const double> values,
                                                 std::span<const double> phi, int power,
                                                 double h) {
  const std::size_t m = values.size();
  if (m < kInterpWidth) throw std::invalid_argument("cumulative integral: grid too small");
  if (power != 0 && phi.size() != m) {
    throw std::invalid_argument("cumulative integral: weight samples do not match grid");
  }
  const auto& gl = gauss_legendre_8();
  const auto& table = cell_weights();
  std::vector<double> out(m, 0.0);
  for (std::size_t cell = 0; cell + 1 < m; ++cell) {
    const std::size_t j0 = window_start(cell, m);
    const auto& w = table.w[cell - j0];
    double acc = 0.0;
    for (std::size_t q = 0; q < 8; ++q) {
      double v = 0.0;
      double p = 0.0;
      for (std::size_t j = 0; j < kInterpWidth; ++j) {
        v += w[q][j] * values[j0 + j];
        if (power != 0) p += w[q][j] * phi[j0 + j];
      }
      acc += gl.weights[q] * (power == 0 ? v : v * std::pow(p, power));
    }
    out[cell + 1] = out[cell] + 0.5 * h * acc;
  }
  return out;
}

std::vector<double> cumulative_integral(std::span<const double> values, double h) {
  return cumulative_weighted_integral(values, {}, 0, h);
}

std::vector<double> reverse_cumulative_weighted_integral(std::span<const double> values,
                                                         std::span<const double> phi, int power,
                                                         double h) {
  std::vector<double> rv(values.rbegin(), values.rend());
  std::vector<double> rp(phi.rbegin(), phi.rend());
  auto out = cumulative_weighted_integral(rv, rp, power, h);
  std::reverse(out.begin(), out.end());
  return out;
}

double interpolate(std::span<const double> values, double h, double s) {
  const std::size_t m = values.size();
  if (m < kInterpWidth) throw std::invalid_argument("interpolate: grid too small");
  const double x = s / h;
  const double last_cell = static_cast<double>(m - 2);
  const auto cell = static_cast<std::size_t>(std::clamp(std::floor(x), 0.0, last_cell));
  const std::size_t j0 = window_start(cell, m);
  std::array<double, kInterpWidth> nodes{};
  for (std::size_t j = 0; j < kInterpWidth; ++j) nodes[j] = static_cast<double>(j0 + j);
  const auto w = fornberg_weights(x, nodes, 0)[0];
  double acc = 0.0;
  for (std::size_t j = 0; j < kInterpWidth; ++j) acc += w[j] * values[j0 + j];
  return acc;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("loglog_slope: size mismatch");
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0 && y[i] > 0.0 && std::isfinite(y[i])) pts.emplace_back(std::log(x[i]), std::log(y[i]));
  }
  if (pts.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0, my = 0.0;
  for (const auto& [a, b] : pts) {
    mx += a;
    my += b;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [a, b] : pts) {
    sxy += (a - mx) * (b - my);
    sxx += (a - mx) * (a - mx);
  }
  return sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
}

MonotoneCubic::MonotoneCubic(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)), slope_(x_.size(), 0.0) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw std::invalid_argument("MonotoneCubic: bad input");
  std::vector<double> secant(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double dx = x_[i + 1] - x_[i];
    if (!(dx > 0.0)) throw std::invalid_argument("MonotoneCubic: abscissae must increase");
    secant[i] = (y_[i + 1] - y_[i]) / dx;
  }
  slope_[0] = secant[0];
  slope_[n - 1] = secant[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double d0 = secant[i - 1];
    const double d1 = secant[i];
    if (d0 * d1 <= 0.0) {
      slope_[i] = 0.0;
      continue;
    }
    const double h0 = x_[i] - x_[i - 1];
    const double h1 = x_[i + 1] - x_[i];
    slope_[i] = 3.0 * (h0 + h1) / ((2.0 * h1 + h0) / d0 + (h1 + 2.0 * h0) / d1);
  }
}

double MonotoneCubic::operator()(double x) const {
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  i = std::min(i, x_.size() - 2);
  const double dx = x_[i + 1] - x_[i];
  const double u = (x - x_[i]) / dx;
  const double u2 = u * u;
  const double u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * y_[i] + (u3 - 2 * u2 + u) * dx * slope_[i] +
         (-2 * u3 + 3 * u2) * y_[i + 1] + (u3 - u2) * dx * slope_[i + 1];
}

}  // namespace schur::numerics
