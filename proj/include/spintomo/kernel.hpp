#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "spintomo/frames.hpp"
#include "spintomo/qudit_frame.hpp"

namespace spintomo {

/// Arguments of the intertwining kernels: qudit projection and angles, and
/// the two qubit projections and angles.
struct KernelPoint {
  HalfInt m{3};
  HalfInt m1{1};
  HalfInt m2{1};
  EulerAngles qudit;   // (alpha, beta, gamma)
  EulerAngles qubit1;  // (phi1, theta1, psi1)
  EulerAngles qubit2;  // (phi2, theta2, psi2)

  FramePointQudit qudit_point() const { return {m, qudit}; }
  FramePoint2Q qubit_point() const { return {m1, m2, qubit1, qubit2}; }
};

/// K12 = Tr(D_qudit(m, n) U_2q(m1, m2, n1, n2)) with the frame's selected quantizer.
cplx kernel_k12(const QuditFrame& frame, const KernelPoint& p);

/// K21 = Tr(D_2q(m1, m2, n1, n2) U_qudit(m, n)).
cplx kernel_k21(const KernelPoint& p);

/// (K^d_12, K^d_21) = (K21, K12): the kernels that carry dual symbols.
std::pair<cplx, cplx> dual_kernels(const QuditFrame& frame, const KernelPoint& p);

/// The closed-form kernel, split by its dependence on the qubit projections:
/// value = constant + m1 * c_m1 + m2 * c_m2 + m1 * m2 * c_m1m2. Each part already
/// carries its own m1/m2 factors when summed by total(); the explicit expression is
/// normalised like Tr(B U), so every part is divided by 8 pi^2 here to be comparable
/// with kernel_k12.
struct KernelTerms {
  cplx constant = 0.0;
  cplx linear_m1 = 0.0;
  cplx linear_m2 = 0.0;
  cplx bilinear = 0.0;

  cplx total() const { return constant + linear_m1 + linear_m2 + bilinear; }
};

/// Literal evaluation of the explicit closed form (its half-integer sign factor read as `reading`).
KernelTerms kernel_k12_closed_terms(const KernelPoint& p,
                                    SignReading reading = SignReading::exponential);
cplx kernel_k12_closed(const KernelPoint& p, SignReading reading = SignReading::exponential);

/// The same four-way split of the trace-defined kernel. K12 is affine in m1 and
/// in m2, so the split is recovered exactly from the four projection pairs.
KernelTerms kernel_k12_terms(const QuditFrame& frame, const KernelPoint& p);

struct KernelSampleDiscrepancy {
  KernelPoint point;
  KernelTerms trace;
  KernelTerms closed;
};

/// Machine-readable comparison of the trace kernel with the explicit closed form.
struct KernelDiscrepancyReport {
  SignReading reading = SignReading::exponential;
  QuditQuantizerSource quantizer = QuditQuantizerSource::dual_frame;
  int samples = 0;
  double tolerance = 1e-10;
  double max_abs_difference = 0.0;
  /// Largest deviation per term: constant, m1, m2, m1*m2.
  std::array<double, 4> max_term_difference{};
  /// Largest imaginary part of the closed form (a real kernel has none).
  double max_closed_imaginary = 0.0;
  double max_trace_imaginary = 0.0;
  bool agrees = false;
  std::vector<KernelSampleDiscrepancy> worst;  // a few worst samples
};

KernelDiscrepancyReport compare_closed_kernel(const QuditFrame& frame, int samples,
                                              std::uint64_t seed,
                                              SignReading reading = SignReading::exponential,
                                              double tolerance = 1e-10);

/// Mapped tomogram value together with the imaginary part left over by the sum.
struct MappedValue {
  double value = 0.0;
  double imaginary_residue = 0.0;
};

/// Caches the grid-side operators (quantizers and dequantizers at every
/// projection and node) for repeated kernel sums. Immutable after construction.
class KernelMapper {
 public:
  /// `qudit_grid` must be a 1-sphere exact grid, `qubit_grid` a 2-sphere exact grid.
  KernelMapper(const QuditFrame& frame, const QuadratureGrid& qudit_grid,
               const QuadratureGrid& qubit_grid);

  /// omega(target) = sum_m sum_nodes w W(m, n) K12(m, n; target).
  MappedValue qudit_to_2q(const TomogramQuditFn& w, const FramePoint2Q& target) const;
  /// W(target) = sum_{m1,m2} sum_nodes w omega(m1, m2, n1, n2) K21(...; target).
  MappedValue twoq_to_qudit(const Tomogram2QFn& omega, const FramePointQudit& target) const;

  /// Dual-symbol transport: omega^d(target) from W^d through K^d_12 = K21.
  MappedValue dual_qudit_to_2q(const std::function<cplx(const FramePointQudit&)>& wd,
                               const FramePoint2Q& target) const;
  /// W^d(target) from omega^d through K^d_21 = K12.
  MappedValue dual_2q_to_qudit(const std::function<cplx(const FramePoint2Q&)>& omegad,
                               const FramePointQudit& target) const;

 private:
  struct QuditNode {
    FramePointQudit point;
    double weight;
    ComplexMatrix quantizer;
    ComplexMatrix dequantizer;
  };
  struct QubitNode {
    FramePoint2Q point;
    double weight;
    ComplexMatrix quantizer;
    ComplexMatrix dequantizer;
  };

  QuditFrame frame_;
  std::vector<QuditNode> qudit_nodes_;
  std::vector<QubitNode> qubit_nodes_;
};

/// One-shot forms without the operator cache.
MappedValue map_qudit_to_2q(const TomogramQuditFn& w, const QuditFrame& frame,
                            const QuadratureGrid& qudit_grid, const FramePoint2Q& target);
MappedValue map_2q_to_qudit(const Tomogram2QFn& omega, const QuadratureGrid& qubit_grid,
                            const FramePointQudit& target);

}  // namespace spintomo
