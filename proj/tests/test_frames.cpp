#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "spintomo/frames.hpp"

using namespace spintomo;

namespace {

// Unit vector whose spin-up projector is the m = +1/2 dequantizer at (phi, theta).
void axis(double phi, double theta, double& x, double& y, double& z) {
  x = -std::sin(theta) * std::cos(phi);
  y = std::sin(theta) * std::sin(phi);
  z = std::cos(theta);
}

double oracle_tomogram(const oracle::Mat& rho, const FramePoint2Q& p) {
  double x1, y1, z1, x2, y2, z2;
  axis(p.n1.azimuth, p.n1.polar, x1, y1, z1);
  axis(p.n2.azimuth, p.n2.polar, x2, y2, z2);
  const oracle::Mat proj = oracle::kron(oracle::qubit_projector(p.m1.twice, x1, y1, z1),
                                        oracle::qubit_projector(p.m2.twice, x2, y2, z2));
  return (rho * proj).trace().real();
}

FramePoint2Q random_point(oracle::Gen& g) {
  return {{g.pick(2) ? 1 : -1}, {g.pick(2) ? 1 : -1}, {g.angle(), g.polar(), g.angle()},
          {g.angle(), g.polar(), g.angle()}};
}

}  // namespace

TEST(TwoQubitTomogram, KnownValues) {
  const FramePoint2Q up{kHalf, kHalf, {}, {}};
  EXPECT_NEAR(tomogram(werner(0.8), up), 0.45, 1e-15);
  oracle::Gen g(1);
  for (int i = 0; i < 20; ++i) EXPECT_NEAR(tomogram(werner(0.0), random_point(g)), 0.25, 1e-15);
}

TEST(TwoQubitTomogram, MatchesProjectorOracle) {
  oracle::Gen g(2);
  for (int s = 0; s < 30; ++s) {
    const DensityMatrix rho = random_density(4, 100 + s);
    const FramePoint2Q p = random_point(g);
    EXPECT_NEAR(tomogram(rho, p), oracle_tomogram(rho.matrix().eigen(), p), 1e-14);
  }
}

TEST(TwoQubitTomogram, NormalizedAndBoundedOnRandomInputs) {
  oracle::Gen g(3);
  for (int s = 0; s < 50; ++s) {
    const DensityMatrix rho = random_density(4, 200 + s);
    const FramePoint2Q p = random_point(g);
    double sum = 0.0;
    for (HalfInt a : projections(kHalf)) {
      for (HalfInt b : projections(kHalf)) {
        const double v = tomogram(rho, {a, b, p.n1, p.n2});
        EXPECT_GE(v, -1e-14);
        EXPECT_LE(v, 1 + 1e-14);
        sum += v;
      }
    }
    EXPECT_NEAR(sum, 1.0, 1e-13);
  }
}

TEST(TwoQubitTomogram, RejectsQuditTaggedState) {
  EXPECT_THROW(tomogram(werner(0.2, Basis::qudit_3_2), FramePoint2Q{}), std::invalid_argument);
  EXPECT_THROW(tomogram(werner(0.2), FramePointQudit{}), std::invalid_argument);
}

TEST(QuditDequantizer, IsAnEigenprojectorOfARotatedSpinComponent) {
  const oracle::SpinMatrices j = oracle::spin_matrices(3);
  oracle::Gen g(4);
  for (int trial = 0; trial < 20; ++trial) {
    const EulerAngles n{g.angle(), g.polar(), g.angle()};
    oracle::Mat weighted = oracle::Mat::Zero(4, 4);
    for (HalfInt m : projections(kThreeHalves)) {
      const oracle::Mat u = dequantizer_qudit({m, n}).eigen();
      EXPECT_LT((u * u - u).cwiseAbs().maxCoeff(), 1e-14);
      EXPECT_NEAR(u.trace().real(), 1.0, 1e-14);
      weighted += m.value() * u;
    }
    // sum_m m U_m = k . J for a unit vector k; Tr(J_i J_k) = 5 delta_ik.
    const double kx = (weighted * j.x).trace().real() / 5;
    const double ky = (weighted * j.y).trace().real() / 5;
    const double kz = (weighted * j.z).trace().real() / 5;
    EXPECT_NEAR(kx * kx + ky * ky + kz * kz, 1.0, 1e-13);
    EXPECT_LT((weighted - (kx * j.x + ky * j.y + kz * j.z)).cwiseAbs().maxCoeff(), 1e-13);
    EXPECT_NEAR(kz, std::cos(n.polar), 1e-13);
  }
}

TEST(QuditTomogram, DiagonalAtZeroPolarAngle) {
  const DensityMatrix rho = random_density(4, 5, Basis::qudit_3_2);
  for (HalfInt m : projections(kThreeHalves)) {
    const int i = projection_index(kThreeHalves, m);
    EXPECT_NEAR(tomogram(rho, {m, {1.3, 0.0, 0.4}}), rho.matrix()(i, i).real(), 1e-15);
  }
}

TEST(Reconstruction, TwoQubitRoundTrip) {
  const QuadratureGrid grid = make_grid(8, 8, 2);
  auto residual = [&](const DensityMatrix& rho) {
    const ComplexMatrix r = reconstruct_2q([&](const FramePoint2Q& x) { return tomogram(rho, x); },
                                           quantizer_2q, grid);
    return (r - rho.matrix()).frobenius_norm();
  };
  EXPECT_LE(residual(werner(0.7)), 1e-10);
  EXPECT_LE(residual(DensityMatrix::from_matrix(ComplexMatrix::identity(4) * cplx(0.25), Basis::two_qubit)),
            1e-12);
  for (std::uint64_t s = 0; s < 10; ++s) EXPECT_LE(residual(random_density(4, s)), 1e-8);
}

TEST(Reconstruction, RecoversNonHermitianOperators) {
  // The frame identity is linear: sum Tr(A U(x)) D(x) = A for any A.
  const QuadratureGrid grid = make_grid(9, 8, 2);
  ComplexMatrix a(4);
  oracle::Gen g(6);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) a(i, k) = {g.uniform(-1, 1), g.uniform(-1, 1)};
  ComplexMatrix sum(4);
  for_each_point_2q(grid, [&](const FramePoint2Q& x, double w) {
    sum += quantizer_2q(x) * cplx(w * symbol(a, x).real(), w * symbol(a, x).imag());
  });
  EXPECT_LT((sum - a).max_abs(), 1e-12);
}

TEST(Reconstruction, CoarseGridIsRejected) {
  const DensityMatrix rho = werner(0.3);
  const QuadratureGrid coarse = make_grid_unchecked(4, 4, 2);
  EXPECT_THROW(reconstruct_2q([&](const FramePoint2Q& x) { return tomogram(rho, x); }, quantizer_2q, coarse),
               GridError);
}

TEST(TomogramTable, NormalizedPerNodeAndCsvClamps) {
  const QuadratureGrid grid = make_grid(8, 8, 1);
  const TomogramTable t = tomogram_table(werner(1.0, Basis::qudit_3_2), grid);
  ASSERT_EQ(t.rows.size(), 4u * 64u);
  std::map<std::pair<double, double>, double> per_node;
  for (const TomogramRow& r : t.rows) per_node[{r.angles[0].azimuth, r.angles[0].polar}] += r.value;
  for (const auto& [node, sum] : per_node) EXPECT_NEAR(sum, 1.0, 1e-13);

  TomogramTable tiny;
  tiny.representation = Basis::qudit_3_2;
  tiny.rows.push_back({{kHalf}, {{0.1, 0.2, 0.0}}, -5e-13});
  tiny.rows.push_back({{-kHalf}, {{0.1, 0.2, 0.0}}, 0.25});
  std::ostringstream os;
  write_csv(os, tiny);
  EXPECT_EQ(os.str(),
            "representation,m,alpha,beta,gamma,value\n"
            "qudit,0.5,0.10000000000000001,0.20000000000000001,0,0\n"
            "qudit,-0.5,0.10000000000000001,0.20000000000000001,0,0.25\n");
}
