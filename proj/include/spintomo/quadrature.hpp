#pragma once

#include <stdexcept>
#include <vector>

#include "spintomo/su2.hpp"

namespace spintomo {

class GridError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Smallest node counts for which every frame integrand is integrated exactly:
/// trigonometric degree <= 7 in the azimuth and polynomial degree <= 15 in cos(polar).
inline constexpr int kMinAzimuthNodes = 8;
inline constexpr int kMinPolarNodes = 8;

/// Gauss-Legendre nodes and weights on [-1, 1], nodes ascending.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

struct GridNode {
  EulerAngles angles;  // twist is always 0; its integral is folded into weight
  double weight = 0.0;
};

/// Product quadrature for the measure  d phi  sin(theta) d theta  d psi  on one
/// or two spheres. The per-sphere weights add up to 8 pi^2.
class QuadratureGrid {
 public:
  int n_azimuth() const { return n_azimuth_; }
  int n_polar() const { return n_polar_; }
  int spheres() const { return spheres_; }

  /// Nodes of a single sphere factor.
  const std::vector<GridNode>& sphere_nodes() const { return nodes_; }
  /// Number of angle nodes of the full (possibly product) grid.
  std::size_t size() const;

  bool meets_minimum() const {
    return n_azimuth_ >= kMinAzimuthNodes && n_polar_ >= kMinPolarNodes;
  }
  /// Throws GridError unless meets_minimum() and spheres() == spheres.
  void require_exact(int spheres) const;

  friend QuadratureGrid make_grid(int, int, int);
  friend QuadratureGrid make_grid_unchecked(int, int, int);

 private:
  int n_azimuth_ = 0;
  int n_polar_ = 0;
  int spheres_ = 1;
  std::vector<GridNode> nodes_;
};

/// Throws GridError for counts below the exactness minimum or spheres not in {1, 2}.
QuadratureGrid make_grid(int n_azimuth, int n_polar, int spheres);

/// Same construction without the minimum check (for deliberately coarse runs).
/// Consumers still reject such grids.
QuadratureGrid make_grid_unchecked(int n_azimuth, int n_polar, int spheres);

}  // namespace spintomo
