#pragma once

#include <array>
#include <string>
#include <vector>

#include "spintomo/context.hpp"
#include "spintomo/frames.hpp"
#include "spintomo/su2.hpp"

namespace spintomo {

/// k . sigma
ComplexMatrix spin_observable(const Direction& k);

/// k1.sigma (x) 1
ComplexMatrix observable_o1(const Direction& k1);
/// 1 (x) k2.sigma
ComplexMatrix observable_o2(const Direction& k2);

struct ObservableTriple {
  ComplexMatrix o1;
  ComplexMatrix o2;
  ComplexMatrix o;  // o1 * o2 = k1.sigma (x) k2.sigma
  Direction k1;
  Direction k2;
};

/// Throws DomainError if the commuting-product invariants fail.
ObservableTriple observable_o(const Direction& k1, const Direction& k2);

/// E(k1, k2) = Tr(k1.sigma (x) k2.sigma rho).
double correlation_direct(const DensityMatrix& rho, const Direction& k1, const Direction& k2);

enum class PairingVariant {
  symbol_dual,  // sum omega_B(x) omega^d_rho(x)
  dual_symbol,  // sum omega_rho(x) omega^d_B(x)
};

/// E through the two-qubit tomographic pairing on a two-sphere grid.
double correlation_tomographic_2q(const DensityMatrix& rho, const Direction& k1,
                                  const Direction& k2, const QuadratureGrid& grid,
                                  PairingVariant variant);

/// E through the qudit pairing sum W_B(y) W^d_rho(y) on a one-sphere grid. rho
/// is read in the qudit basis whatever its tag.
double correlation_tomographic_qudit(const DensityMatrix& rho, const Direction& k1,
                                     const Direction& k2, const QuditFrame& frame,
                                     const QuadratureGrid& grid);

struct CorrelationTensor {
  std::array<std::array<double, 3>, 3> t{};

  double operator()(int i, int j) const { return t[i][j]; }
  /// k1^T T k2
  double bilinear(const Direction& k1, const Direction& k2) const;
  double sum_all() const;
  double sum_diagonal() const;
  CorrelationTensor scaled(double s) const;
};

/// T_ij = Tr(rho sigma_i (x) sigma_j).
CorrelationTensor correlation_tensor(const DensityMatrix& rho);

struct DirectionPair {
  double value = 0.0;
  Direction k1 = Direction::z_axis();
  Direction k2 = Direction::z_axis();
};

/// Largest singular value of T with its singular vectors (value >= 0). In a
/// degenerate top spectrum the lexicographically largest k1 wins.
DirectionPair max_correlation(const CorrelationTensor& t);

/// Independent check: k1 over an n_polar x n_azimuth angle grid with the
/// optimal k2 = T^T k1 / |T^T k1|, then local pattern-search refinement.
DirectionPair max_correlation_search(const CorrelationTensor& t, int n_polar = 64,
                                     int n_azimuth = 64);

struct ChshSettings {
  Direction a = Direction::z_axis();
  Direction b = Direction::z_axis();
  Direction c = Direction::z_axis();
  Direction d = Direction::z_axis();
  double value = 0.0;
};

/// |E(a,b) + E(a,c) + E(d,b) - E(d,c)| from direct traces.
double chsh_value(const DensityMatrix& rho, const Direction& a, const Direction& b,
                  const Direction& c, const Direction& d);

/// 2 sqrt(s1^2 + s2^2) from the two largest singular values of T.
double chsh_max_analytic(const CorrelationTensor& t);

/// Grid search over (a, d) on a sphere grid with about `points_per_sphere`
/// points, b and c chosen optimally for each pair, then local refinement.
ChshSettings chsh_max_search(const CorrelationTensor& t, int points_per_sphere = 64);

struct SteeringReport {
  CorrelationTensor tensor;
  double lhs = 0.0;                 // max E over direction pairs (SVD)
  double lhs_search = 0.0;          // grid-search confirmation
  double rhs_all_entries = 0.0;     // (2/3) sum_ij T_ij
  double rhs_diagonal = 0.0;        // (2/3) sum_i T_ii
  bool inequality_holds = false;    // lhs >= rhs_all_entries
  double chsh_max = 0.0;            // analytic
  double chsh_max_search = 0.0;
  bool bell_classical_violated = false;  // chsh_max > 2
  Direction k1 = Direction::z_axis();
  Direction k2 = Direction::z_axis();
};

SteeringReport steering_check(const DensityMatrix& rho);

/// Smallest eigenvalue of the partial transpose over the second qubit.
double partial_transpose_min_eigenvalue(const ComplexMatrix& rho);

struct CorrelationForms {
  double direct = 0.0;
  double tomo_2q_a = 0.0;  // symbol_dual pairing
  double tomo_2q_b = 0.0;  // dual_symbol pairing
  double tomo_qudit = 0.0;
  double max_pairwise_deviation() const;
};

CorrelationForms correlation_forms(const DensityMatrix& rho, const Direction& k1,
                                   const Direction& k2, const TomographyContext& ctx);

struct WernerReport {
  double p = 0.0;
  double e_zz = 0.0;           // direct E(z, z)
  double e_zz_only = 0.0;      // k1z k2z p, the z-z restriction
  CorrelationForms forms;      // at (k1, k2)
  Direction k1 = Direction::z_axis();
  Direction k2 = Direction::z_axis();
  SteeringReport steering;
  double ppt_min_eigenvalue = 0.0;
  bool entangled = false;      // p > 1/3
  double qudit_closed_form_max_deviation = 0.0;
  double two_qubit_closed_form_max_deviation = 0.0;
  double kernel_mapping_residual = 0.0;
  std::vector<std::string> notes;
};

/// Werner closed forms used for the spot checks.
double werner_qudit_tomogram_closed(double p, HalfInt m, double alpha, double beta);
double werner_two_qubit_tomogram_closed(double p, const FramePoint2Q& x);

WernerReport werner_report(double p, const TomographyContext& ctx,
                           const Direction& k1 = Direction::z_axis(),
                           const Direction& k2 = Direction::z_axis());

}  // namespace spintomo
