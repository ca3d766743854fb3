#include "spintomo/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace spintomo {

namespace {

// Legendre P_n(x) and its derivative.
std::pair<double, double> legendre_with_derivative(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw GridError("Gauss-Legendre rule needs at least one node");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre_with_derivative(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre_with_derivative(n, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = w;
  }
}

std::size_t QuadratureGrid::size() const {
  return spheres_ == 1 ? nodes_.size() : nodes_.size() * nodes_.size();
}

void QuadratureGrid::require_exact(int spheres) const {
  if (!meets_minimum()) {
    throw GridError("quadrature grid " + std::to_string(n_azimuth_) + "x" +
                    std::to_string(n_polar_) + " is below the exactness minimum " +
                    std::to_string(kMinAzimuthNodes) + "x" + std::to_string(kMinPolarNodes));
  }
  if (spheres_ != spheres) {
    throw GridError("expected a " + std::to_string(spheres) + "-sphere grid, got " +
                    std::to_string(spheres_));
  }
}

QuadratureGrid make_grid_unchecked(int n_azimuth, int n_polar, int spheres) {
  if (n_azimuth < 1 || n_polar < 1) throw GridError("grid counts must be positive");
  if (spheres != 1 && spheres != 2) throw GridError("spheres must be 1 or 2");
  QuadratureGrid g;
  g.n_azimuth_ = n_azimuth;
  g.n_polar_ = n_polar;
  g.spheres_ = spheres;

  std::vector<double> x, w;
  gauss_legendre(n_polar, x, w);
  const double two_pi = 2.0 * std::numbers::pi;
  const double azimuth_weight = two_pi / n_azimuth;
  g.nodes_.reserve(static_cast<std::size_t>(n_azimuth) * n_polar);
  for (int a = 0; a < n_azimuth; ++a) {
    for (int p = 0; p < n_polar; ++p) {
      GridNode node;
      node.angles.azimuth = two_pi * a / n_azimuth;
      node.angles.polar = std::acos(x[p]);
      node.angles.twist = 0.0;
      node.weight = azimuth_weight * w[p] * two_pi;
      g.nodes_.push_back(node);
    }
  }
  return g;
}

QuadratureGrid make_grid(int n_azimuth, int n_polar, int spheres) {
  if (n_azimuth < kMinAzimuthNodes || n_polar < kMinPolarNodes) {
    throw GridError("grid counts must be at least " + std::to_string(kMinAzimuthNodes) + " (azimuth) and " +
                    std::to_string(kMinPolarNodes) + " (polar)");
  }
  return make_grid_unchecked(n_azimuth, n_polar, spheres);
}

}  // namespace spintomo
