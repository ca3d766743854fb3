#include "spintomo/qudit_frame.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace spintomo {

namespace {

constexpr double kEntryTol = 1e-9;
constexpr double kHermTol = 1e-12;

using Vec16 = Eigen::Matrix<cplx, 16, 1>;

// For each explicit-B position (i, j) the map  X -> sum w Tr(X U) B_ij  must be
// X -> X_ij. Row (i,j) of `response` holds that map in the elementary basis.
std::vector<EntryDefect> entry_defects(const QuadratureGrid& grid, SignReading reading) {
  Eigen::Matrix<cplx, 16, 16> response = Eigen::Matrix<cplx, 16, 16>::Zero();
  for_each_point_qudit(grid, [&](const FramePointQudit& p, double w) {
    const ComplexMatrix u = dequantizer_qudit(p);
    const ComplexMatrix b = quantizer_qudit_explicit(p, reading);
    // Tr(E_kl U) = U_lk
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) response(i + 4 * j, k + 4 * l) += w * u(l, k) * b(i, j);
  });
  std::vector<EntryDefect> out;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) {
      double worst = 0.0;
      for (int c = 0; c < 16; ++c) {
        const cplx expected = (c == i + 4 * j) ? 1.0 : 0.0;
        worst = std::max(worst, std::abs(response(i + 4 * j, c) - expected));
      }
      if (worst > kEntryTol) out.push_back({i, j, worst});
    }
  std::sort(out.begin(), out.end(), [](const EntryDefect& a, const EntryDefect& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  return out;
}

ExplicitReadingDiagnostics diagnose(const QuadratureGrid& grid, SignReading reading,
                                   const std::vector<DensityMatrix>& probes) {
  ExplicitReadingDiagnostics d;
  d.reading = reading;
  auto quant = [reading](const FramePointQudit& p) { return quantizer_qudit_explicit(p, reading); };
  for (const DensityMatrix& rho : probes) {
    const ComplexMatrix r = reconstruct_qudit(
        [&](const FramePointQudit& p) { return tomogram(rho, p); }, quant, grid);
    d.max_state_residual = std::max(d.max_state_residual, (r - rho.matrix()).frobenius_norm());
  }
  d.reconstruction_failures = entry_defects(grid, reading);

  double herm[4][4] = {};
  for (const GridNode& node : grid.sphere_nodes()) {
    for (HalfInt m : projections(kThreeHalves)) {
      const ComplexMatrix b = explicit_b_matrix(m, node.angles.azimuth, node.angles.polar, reading);
      d.max_trace_defect = std::max(d.max_trace_defect, std::abs(b.trace() - 1.0));
      for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j)
          herm[i][j] = std::max(herm[i][j], std::abs(b(i, j) - std::conj(b(j, i))));
    }
  }
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j)
      if (herm[i][j] > kHermTol) d.hermiticity_failures.push_back({i, j, herm[i][j]});
  return d;
}

}  // namespace

std::string to_string(QuditQuantizerSource s) {
  return s == QuditQuantizerSource::explicit_b ? "explicit_b" : "dual_frame";
}

Vec16 vec(const ComplexMatrix& m) {
  if (m.dim() != 4) throw DimensionError("vec expects a 4x4 operator");
  Vec16 v;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) v(i + 4 * j) = m(i, j);
  return v;
}

ComplexMatrix unvec(const Vec16& v) {
  ComplexMatrix m(4);
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) m(i, j) = v(i + 4 * j);
  return m;
}

QuditFrame QuditFrame::build(const QuadratureGrid& grid, int probe_states, std::uint64_t seed,
                             double threshold) {
  grid.require_exact(1);
  QuditFrame f;
  f.frame_.setZero();
  for_each_point_qudit(grid, [&](const FramePointQudit& p, double w) {
    const Vec16 u = vec(dequantizer_qudit(p));
    f.frame_ += w * u * u.adjoint();
  });
  Eigen::SelfAdjointEigenSolver<SuperOp> eig(f.frame_);
  const auto& ev = eig.eigenvalues();
  if (!(ev(0) > 0.0)) throw std::runtime_error("qudit frame superoperator is singular");
  f.frame_inverse_ = eig.eigenvectors() * ev.cwiseInverse().asDiagonal() * eig.eigenvectors().adjoint();

  QuditCapabilityReport& rep = f.report_;
  rep.acceptance_threshold = threshold;
  rep.frame_condition_number = ev(15) / ev(0);
  rep.probe_states = probe_states;

  std::vector<DensityMatrix> probes;
  for (int i = 0; i < probe_states; ++i) {
    probes.push_back(random_density(4, seed + static_cast<std::uint64_t>(i), Basis::qudit_3_2));
  }

  for (SignReading r : {SignReading::exponential, SignReading::integer_shift}) {
    rep.explicit_b.push_back(diagnose(grid, r, probes));
  }
  for (const auto& d : rep.explicit_b) {
    if (d.max_state_residual <= threshold &&
        (!rep.selected_reading ||
         d.max_state_residual < rep.explicit_b[static_cast<int>(*rep.selected_reading)].max_state_residual)) {
      rep.selected = QuditQuantizerSource::explicit_b;
      rep.selected_reading = d.reading;
    }
  }
  if (!rep.selected_reading) rep.selected = QuditQuantizerSource::dual_frame;

  for (const DensityMatrix& rho : probes) {
    const ComplexMatrix r = reconstruct_qudit(
        [&](const FramePointQudit& p) { return tomogram(rho, p); },
        [&](const FramePointQudit& p) { return f.dual_quantizer(p); }, grid);
    rep.dual_frame_residual = std::max(rep.dual_frame_residual, (r - rho.matrix()).frobenius_norm());
  }
  return f;
}

ComplexMatrix QuditFrame::dual_quantizer(const FramePointQudit& p) const {
  return unvec(frame_inverse_ * vec(dequantizer_qudit(p)));
}

ComplexMatrix QuditFrame::quantizer(const FramePointQudit& p) const {
  if (report_.selected == QuditQuantizerSource::explicit_b) {
    return quantizer_qudit_explicit(p, *report_.selected_reading);
  }
  return dual_quantizer(p);
}

cplx dual_symbol(const ComplexMatrix& a, const QuditFrame& frame, const FramePointQudit& p) {
  return trace_of_product(a, frame.quantizer(p));
}

}  // namespace spintomo
