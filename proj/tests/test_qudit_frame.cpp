#include <gtest/gtest.h>

#include "oracles.hpp"
#include "spintomo/context.hpp"
#include "spintomo/qudit_frame.hpp"

using namespace spintomo;

namespace {

const TomographyContext& ctx() {
  static const TomographyContext c = TomographyContext::make();
  return c;
}

}  // namespace

TEST(QuditFrame, VecIsColumnStacking) {
  const DensityMatrix a = random_density(4, 1);
  const auto v = vec(a.matrix());
  EXPECT_EQ(v(1), a.matrix()(1, 0));
  EXPECT_EQ(v(4), a.matrix()(0, 1));
  EXPECT_EQ((unvec(v) - a.matrix()).max_abs(), 0.0);
}

TEST(QuditFrame, FrameOperatorIsPositiveDefinite) {
  const auto& s = ctx().frame.frame_operator();
  EXPECT_LT((s - s.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
  Eigen::SelfAdjointEigenSolver<QuditFrame::SuperOp> es(s);
  EXPECT_GT(es.eigenvalues().minCoeff(), 1.0);
  EXPECT_NEAR(ctx().frame.capability().frame_condition_number,
              es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff(), 1e-8);
}

TEST(QuditFrame, DualQuantizerReconstructsArbitraryOperators) {
  ComplexMatrix a(4);
  oracle::Gen g(2);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) a(i, k) = {g.uniform(-1, 1), g.uniform(-1, 1)};
  ComplexMatrix sum(4);
  for_each_point_qudit(ctx().sphere, [&](const FramePointQudit& y, double w) {
    sum += ctx().frame.dual_quantizer(y) * (w * symbol(a, y));
  });
  EXPECT_LT((sum - a).max_abs(), 1e-12);
}

TEST(QuditFrame, RandomStatesRoundTrip) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const DensityMatrix rho = random_density(4, s, Basis::qudit_3_2);
    const ComplexMatrix r = reconstruct_qudit([&](const FramePointQudit& y) { return tomogram(rho, y); },
                                              [&](const FramePointQudit& y) { return ctx().frame.quantizer(y); },
                                              ctx().sphere);
    EXPECT_LE((r - rho.matrix()).frobenius_norm(), 1e-8);
  }
}

TEST(QuditFrame, PrintedQuantizerIsDiagnosedUnderBothReadings) {
  const QuditCapabilityReport& cap = ctx().frame.capability();
  ASSERT_EQ(cap.explicit_b.size(), 2u);
  EXPECT_EQ(cap.selected, QuditQuantizerSource::dual_frame);
  EXPECT_FALSE(cap.selected_reading.has_value());
  for (const auto& d : cap.explicit_b) {
    EXPECT_GT(d.max_state_residual, cap.acceptance_threshold) << to_string(d.reading);
    EXPECT_FALSE(d.reconstruction_failures.empty());
    for (const EntryDefect& e : d.reconstruction_failures) {
      EXPECT_GE(e.row, 0);
      EXPECT_LT(e.col, 4);
      EXPECT_GT(e.defect, 1e-9);
    }
  }
  EXPECT_LE(cap.dual_frame_residual, 1e-10);
}

TEST(QuditFrame, PrintedBlocksAreTranscribedVerbatim) {
  // At beta = 0 the diagonal of B1 is independent of the sign reading.
  const ComplexMatrix a = explicit_b_matrix(kThreeHalves, 0.3, 0.7, SignReading::exponential);
  const ComplexMatrix b = explicit_b_matrix(kThreeHalves, 0.3, 0.7, SignReading::integer_shift);
  EXPECT_GT((a - b).max_abs(), 1e-6);
  EXPECT_TRUE(a.all_finite());
  EXPECT_THROW(explicit_b_matrix(HalfInt{5}, 0.1, 0.2, SignReading::exponential), std::out_of_range);
}

TEST(QuditFrame, CoarseGridRejected) {
  EXPECT_THROW(QuditFrame::build(make_grid_unchecked(4, 4, 1)), GridError);
}
