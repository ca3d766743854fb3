#pragma once

#include <array>

#include "spintomo/matcore.hpp"

namespace spintomo {

/// Half-integer stored as its doubled value, so 3/2 is {3}.
struct HalfInt {
  int twice = 0;

  constexpr double value() const { return 0.5 * twice; }
  friend constexpr bool operator==(HalfInt a, HalfInt b) { return a.twice == b.twice; }
  friend constexpr HalfInt operator-(HalfInt a) { return {-a.twice}; }
};

inline constexpr HalfInt kHalf{1};
inline constexpr HalfInt kThreeHalves{3};

/// Projections j, j-1, ..., -j; index 0 is the largest projection.
std::vector<HalfInt> projections(HalfInt j);
/// Row/column index of projection m in the descending ordering.
int projection_index(HalfInt j, HalfInt m);

/// Euler angles. For a qubit direction these are (phi, theta, psi); for the
/// qudit (alpha, beta, gamma). Only the first two fix a measurement axis.
struct EulerAngles {
  double azimuth = 0.0;  // phi or alpha, [0, 2pi)
  double polar = 0.0;    // theta or beta, [0, pi]
  double twist = 0.0;    // psi or gamma, [0, 2pi)
};

/// Unit 3-vector.
class Direction {
 public:
  /// Throws DomainError when |(x,y,z)| differs from 1 by more than tol.
  static Direction checked(double x, double y, double z, double tol = 1e-9);
  /// Rescales to unit length; throws on the zero vector.
  static Direction normalized(double x, double y, double z);
  static Direction from_angles(double theta, double phi);

  static Direction x_axis() { return Direction(1, 0, 0); }
  static Direction y_axis() { return Direction(0, 1, 0); }
  static Direction z_axis() { return Direction(0, 0, 1); }

  double x() const { return v_[0]; }
  double y() const { return v_[1]; }
  double z() const { return v_[2]; }
  double operator[](int i) const { return v_[i]; }
  const std::array<double, 3>& components() const { return v_; }

 private:
  Direction(double x, double y, double z) : v_{x, y, z} {}
  std::array<double, 3> v_;
};

/// The 2x2 SU(2) matrix with entries cos(t/2)e^{i(f+p)/2}, sin(t/2)e^{i(f-p)/2},
/// -sin(t/2)e^{i(p-f)/2}, cos(t/2)e^{-i(f+p)/2} for angles (f, t, p) = (phi, theta, psi).
ComplexMatrix qubit_rotation(const EulerAngles& angles);

/// Jacobi polynomial P_n^{(a,b)}(x) by the three-term recurrence.
double jacobi_poly(int n, double a, double b, double x);

/// Largest spin accepted by wigner_d.
inline constexpr HalfInt kMaxSpin{4};

/// Small Wigner d-function from the Jacobi-polynomial closed form
///   d_{m',m}(b) = sqrt((j+m')!(j-m')!/((j+m)!(j-m)!)) cos(b/2)^{m'+m} sin(b/2)^{m'-m}
///                 P_{j-m'}^{(m'-m, m'+m)}(cos b),
/// valid as written for m' >= |m|. Other index pairs are reduced with
/// d_{m',m} = (-1)^{m-m'} d_{m,m'} = d_{-m,-m'}.
double wigner_d(HalfInt j, HalfInt mp, HalfInt m, double beta);

/// Where the Euler phases sit in D_{m',m} = e^{i m' gamma} d_{m',m}(beta) e^{i m alpha}.
/// The alpha phase carries the column projection m, not m'.
enum class DPhaseConvention { row_gamma_column_alpha };
inline constexpr DPhaseConvention kDPhaseConvention = DPhaseConvention::row_gamma_column_alpha;

/// (2j+1)x(2j+1) Wigner D-matrix for j in {1/2, 3/2}; rows and columns
/// are indexed by descending projection. Angles are (alpha, beta, gamma).
ComplexMatrix wigner_D(HalfInt j, const EulerAngles& angles);

}  // namespace spintomo
