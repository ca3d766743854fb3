#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "spintomo/frames.hpp"

namespace spintomo {

enum class QuditQuantizerSource { explicit_b, dual_frame };
std::string to_string(QuditQuantizerSource s);

/// Matrix position (row, col) of the explicit quantizer and how far it is
/// from satisfying the reconstruction identity.
struct EntryDefect {
  int row = 0;
  int col = 0;
  double defect = 0.0;
};

struct ExplicitReadingDiagnostics {
  SignReading reading = SignReading::exponential;
  /// Largest Frobenius reconstruction error over the probe states.
  double max_state_residual = 0.0;
  /// Positions whose reconstructed entry is wrong for some input operator.
  std::vector<EntryDefect> reconstruction_failures;
  /// Positions (row < col, or diagonal) where B_ij != conj(B_ji) at a sampled point.
  std::vector<EntryDefect> hermiticity_failures;
  /// max over m and sampled points of |Tr B - 1|.
  double max_trace_defect = 0.0;
};

/// Which qudit quantizer backs reconstruction, and why.
struct QuditCapabilityReport {
  QuditQuantizerSource selected = QuditQuantizerSource::dual_frame;
  std::optional<SignReading> selected_reading;
  double acceptance_threshold = 1e-6;
  std::vector<ExplicitReadingDiagnostics> explicit_b;
  /// Largest Frobenius reconstruction error of the canonical dual on the probe states.
  double dual_frame_residual = 0.0;
  /// Condition number of the 16x16 frame superoperator.
  double frame_condition_number = 0.0;
  int probe_states = 0;
};

/// The spin-3/2 quantizer family. Builds the frame superoperator
///   S = sum_m sum_nodes w vec(U) vec(U)^dagger   (column-stacking vec)
/// on an exact grid, checks the explicit quantizer under both sign readings, and
/// falls back to the canonical dual unvec(S^{-1} vec(U)) when neither reading
/// reconstructs random states to the acceptance threshold.
class QuditFrame {
 public:
  using SuperOp = Eigen::Matrix<cplx, 16, 16>;

  static QuditFrame build(const QuadratureGrid& grid, int probe_states = 20,
                          std::uint64_t seed = 2024, double threshold = 1e-6);

  /// The selected (authoritative) quantizer at a point.
  ComplexMatrix quantizer(const FramePointQudit& p) const;
  /// Canonical dual of the dequantizer at a point.
  ComplexMatrix dual_quantizer(const FramePointQudit& p) const;

  const QuditCapabilityReport& capability() const { return report_; }
  const SuperOp& frame_operator() const { return frame_; }

 private:
  QuditFrame() = default;

  SuperOp frame_;
  SuperOp frame_inverse_;
  QuditCapabilityReport report_;
};

/// Tr(A D(x)) with the frame's selected quantizer.
cplx dual_symbol(const ComplexMatrix& a, const QuditFrame& frame, const FramePointQudit& p);

/// Column-stacking vectorisation of a 4x4 operator and its inverse.
Eigen::Matrix<cplx, 16, 1> vec(const ComplexMatrix& m);
ComplexMatrix unvec(const Eigen::Matrix<cplx, 16, 1>& v);

}  // namespace spintomo
