#include <gtest/gtest.h>

#include <numbers>

#include "oracles.hpp"
#include "spintomo/context.hpp"
#include "spintomo/kernel.hpp"

using namespace spintomo;

namespace {

const TomographyContext& ctx() {
  static const TomographyContext c = TomographyContext::make();
  return c;
}

KernelPoint random_kernel_point(oracle::Gen& g) {
  return {projections(kThreeHalves)[g.pick(4)], {g.pick(2) ? 1 : -1}, {g.pick(2) ? 1 : -1},
          {g.angle(), g.polar(), g.angle()}, {g.angle(), g.polar(), g.angle()},
          {g.angle(), g.polar(), g.angle()}};
}

}  // namespace

TEST(Kernel, K21IsRealNonNegativeAndSumsOverQuditProjections) {
  // sum_m U_qudit(m) = I, so sum_m K21 = Tr(D_2q) = (1 / 8 pi^2)^2.
  oracle::Gen g(1);
  const double vol = 8 * std::numbers::pi * std::numbers::pi;
  for (int trial = 0; trial < 30; ++trial) {
    KernelPoint p = random_kernel_point(g);
    cplx sum = 0.0;
    for (HalfInt m : projections(kThreeHalves)) {
      p.m = m;
      sum += kernel_k21(p);
    }
    EXPECT_NEAR(sum.real(), 1.0 / (vol * vol), 1e-16);
    EXPECT_NEAR(sum.imag(), 0.0, 1e-16);
  }
}

TEST(Kernel, K12SumsToQuditQuantizerTrace) {
  // sum_{m1,m2} U_2q = I, so sum K12 = Tr(D_qudit).
  oracle::Gen g(2);
  for (int trial = 0; trial < 10; ++trial) {
    KernelPoint p = random_kernel_point(g);
    cplx sum = 0.0;
    for (HalfInt a : projections(kHalf))
      for (HalfInt b : projections(kHalf)) {
        p.m1 = a;
        p.m2 = b;
        sum += kernel_k12(ctx().frame, p);
      }
    EXPECT_LT(std::abs(sum - ctx().frame.quantizer(p.qudit_point()).trace()), 1e-15);
  }
}

TEST(Kernel, DualKernelsSwap) {
  oracle::Gen g(3);
  const KernelPoint p = random_kernel_point(g);
  const auto [d12, d21] = dual_kernels(ctx().frame, p);
  EXPECT_EQ(d12, kernel_k21(p));
  EXPECT_EQ(d21, kernel_k12(ctx().frame, p));
}

TEST(Kernel, AffineTermSplitReproducesTheKernel) {
  oracle::Gen g(4);
  for (int trial = 0; trial < 10; ++trial) {
    const KernelPoint p = random_kernel_point(g);
    const KernelTerms t = kernel_k12_terms(ctx().frame, p);
    EXPECT_LT(std::abs(t.total() - kernel_k12(ctx().frame, p)), 1e-15);
    // Flipping m1 flips the two terms that carry it.
    KernelPoint flipped = p;
    flipped.m1 = -p.m1;
    const KernelTerms f = kernel_k12_terms(ctx().frame, flipped);
    EXPECT_LT(std::abs(f.constant - t.constant), 1e-15);
    EXPECT_LT(std::abs(f.linear_m1 + t.linear_m1), 1e-15);
    EXPECT_LT(std::abs(f.linear_m2 - t.linear_m2), 1e-15);
    EXPECT_LT(std::abs(f.bilinear + t.bilinear), 1e-15);
  }
}

TEST(Kernel, ClosedFormReportIsComplete) {
  const KernelDiscrepancyReport r = compare_closed_kernel(ctx().frame, 40, 7);
  EXPECT_EQ(r.samples, 40);
  EXPECT_FALSE(r.worst.empty());
  EXPECT_LE(r.worst.size(), 5u);
  // The constant term of the closed form is the one piece that matches.
  EXPECT_LT(r.max_term_difference[0], 1e-10);
  EXPECT_EQ(r.agrees, r.max_abs_difference <= r.tolerance);
}

TEST(KernelMapper, IntertwinesWernerTomograms) {
  const KernelMapper mapper(ctx().frame, ctx().sphere, ctx().pair);
  oracle::Gen g(5);
  for (double p : {-1.0 / 3.0, 0.0, 0.5, 1.0}) {
    const DensityMatrix two = werner(p);
    const DensityMatrix qudit = werner(p, Basis::qudit_3_2);
    const KernelPoint k = random_kernel_point(g);
    const MappedValue f =
        mapper.qudit_to_2q([&](const FramePointQudit& y) { return tomogram(qudit, y); }, k.qubit_point());
    EXPECT_NEAR(f.value, tomogram(two, k.qubit_point()), 1e-10);
    const MappedValue b =
        mapper.twoq_to_qudit([&](const FramePoint2Q& x) { return tomogram(two, x); }, k.qudit_point());
    EXPECT_NEAR(b.value, tomogram(qudit, k.qudit_point()), 1e-10);
    EXPECT_LT(f.imaginary_residue, 1e-12);
  }
}

TEST(KernelMapper, DualSymbolsTravelThroughSwappedKernels) {
  const KernelMapper mapper(ctx().frame, ctx().sphere, ctx().pair);
  const DensityMatrix rho = random_density(4, 8);
  const ComplexMatrix& a = rho.matrix();
  oracle::Gen g(6);
  const KernelPoint k = random_kernel_point(g);
  const MappedValue f = mapper.dual_qudit_to_2q(
      [&](const FramePointQudit& y) { return dual_symbol(a, ctx().frame, y); }, k.qubit_point());
  EXPECT_NEAR(f.value, dual_symbol(a, k.qubit_point()).real(), 1e-14);
  const MappedValue b = mapper.dual_2q_to_qudit(
      [&](const FramePoint2Q& x) { return dual_symbol(a, x); }, k.qudit_point());
  EXPECT_NEAR(b.value, dual_symbol(a, ctx().frame, k.qudit_point()).real(), 1e-14);
}

TEST(KernelMapper, OneShotFormsAgreeWithCache) {
  const DensityMatrix two = random_density(4, 9);
  const DensityMatrix qudit = two.relabeled(Basis::qudit_3_2);
  oracle::Gen g(7);
  const KernelPoint k = random_kernel_point(g);
  const KernelMapper mapper(ctx().frame, ctx().sphere, ctx().pair);
  const auto w = [&](const FramePointQudit& y) { return tomogram(qudit, y); };
  EXPECT_NEAR(map_qudit_to_2q(w, ctx().frame, ctx().sphere, k.qubit_point()).value,
              mapper.qudit_to_2q(w, k.qubit_point()).value, 1e-15);
  const auto omega = [&](const FramePoint2Q& x) { return tomogram(two, x); };
  EXPECT_NEAR(map_2q_to_qudit(omega, ctx().pair, k.qudit_point()).value,
              mapper.twoq_to_qudit(omega, k.qudit_point()).value, 1e-15);
}
