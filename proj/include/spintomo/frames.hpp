#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "spintomo/matcore.hpp"
#include "spintomo/quadrature.hpp"
#include "spintomo/su2.hpp"

namespace spintomo {

/// Two-qubit tomogram argument: projections m1, m2 in {+-1/2} and one
/// Euler triple (phi, theta, psi) per qubit.
struct FramePoint2Q {
  HalfInt m1{1};
  HalfInt m2{1};
  EulerAngles n1;
  EulerAngles n2;
};

/// Qudit tomogram argument: projection m in {+-1/2, +-3/2} and (alpha, beta, gamma).
struct FramePointQudit {
  HalfInt m{3};
  EulerAngles n;
};

void require_valid(const FramePoint2Q& p);
void require_valid(const FramePointQudit& p);

/// F(phi, theta) = [[cos t, -e^{i phi} sin t], [-e^{-i phi} sin t, -cos t]]; F^2 = I.
ComplexMatrix spin_axis_operator(double phi, double theta);

/// Single-qubit dequantizer 1/2 I + m F(phi, theta).
ComplexMatrix qubit_dequantizer(HalfInt m, const EulerAngles& n);
/// Single-qubit quantizer (1/(8 pi^2)) (1/2 I + 3 m F(phi, theta)).
ComplexMatrix qubit_quantizer(HalfInt m, const EulerAngles& n);

ComplexMatrix dequantizer_2q(const FramePoint2Q& p);
ComplexMatrix quantizer_2q(const FramePoint2Q& p);

/// U^dagger |m><m| U with U the spin-3/2 Wigner D-matrix. Independent of gamma.
ComplexMatrix dequantizer_qudit(const FramePointQudit& p);

/// Reading of the half-integer sign factor (-1)^m in the explicit qudit quantizer.
enum class SignReading {
  exponential,    // e^{i pi m}
  integer_shift,  // (-1)^{m + 3/2}
};
std::string to_string(SignReading r);

/// The explicit spin-3/2 quantizer blocks. Entries are kept exactly as given,
/// including the entries that break Hermiticity.
ComplexMatrix explicit_b1(double m, double alpha, double beta);
ComplexMatrix explicit_b2(double alpha, double beta);
/// sin(beta) * B3 with the cos/sin diagonal multiplied out.
ComplexMatrix explicit_sin_b3(double alpha, double beta);
/// B^{3/2}_m = B1 + i s(m) / (2 (m+3/2)! (3/2-m)!) (5 m B2 + 21/2 sin(beta) B3).
ComplexMatrix explicit_b_matrix(HalfInt m, double alpha, double beta, SignReading reading);
/// The explicit quantizer B^{3/2}_m / (8 pi^2).
ComplexMatrix quantizer_qudit_explicit(const FramePointQudit& p, SignReading reading);

/// Rejects a density matrix whose basis tag does not match the point type.
double tomogram(const DensityMatrix& rho, const FramePoint2Q& p);
double tomogram(const DensityMatrix& rho, const FramePointQudit& p);

/// Tr(A U(x)) for an arbitrary operator A.
cplx symbol(const ComplexMatrix& a, const FramePoint2Q& p);
cplx symbol(const ComplexMatrix& a, const FramePointQudit& p);

/// Tr(A D(x)) using the two-qubit quantizer.
cplx dual_symbol(const ComplexMatrix& a, const FramePoint2Q& p);

using Tomogram2QFn = std::function<double(const FramePoint2Q&)>;
using TomogramQuditFn = std::function<double(const FramePointQudit&)>;
using Operator2QFn = std::function<ComplexMatrix(const FramePoint2Q&)>;
using OperatorQuditFn = std::function<ComplexMatrix(const FramePointQudit&)>;

/// Visits every (m1, m2, node1, node2) of a two-sphere grid in a fixed order.
void for_each_point_2q(const QuadratureGrid& grid,
                       const std::function<void(const FramePoint2Q&, double)>& visit);
/// Visits every (m, node) of a one-sphere grid in a fixed order.
void for_each_point_qudit(const QuadratureGrid& grid,
                          const std::function<void(const FramePointQudit&, double)>& visit);

/// Sum over projections and grid nodes of tomogram * quantizer. The result is
/// returned unvalidated. Throws GridError on a coarse or mismatched grid.
ComplexMatrix reconstruct_2q(const Tomogram2QFn& tomo, const Operator2QFn& quantizer,
                             const QuadratureGrid& grid);
ComplexMatrix reconstruct_qudit(const TomogramQuditFn& tomo, const OperatorQuditFn& quantizer,
                                const QuadratureGrid& grid);

struct TomogramRow {
  std::vector<HalfInt> projections;  // (m1, m2) or (m)
  std::vector<EulerAngles> angles;   // one triple per sphere
  double value = 0.0;
};

struct TomogramTable {
  Basis representation = Basis::two_qubit;
  std::vector<TomogramRow> rows;
};

/// Tomogram of rho on every (projection, node) of the grid; the grid sphere
/// count must match the representation (2 for two_qubit, 1 for qudit).
TomogramTable tomogram_table(const DensityMatrix& rho, const QuadratureGrid& grid);

/// CSV with header; negative roundoff down to -1e-12 is written as 0.
void write_csv(std::ostream& os, const TomogramTable& table);

}  // namespace spintomo
