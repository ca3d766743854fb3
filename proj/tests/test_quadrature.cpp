#include <gtest/gtest.h>

#include <numbers>

#include "spintomo/quadrature.hpp"

using namespace spintomo;

TEST(GaussLegendre, ExactForPolynomialsUpToDegree2nMinus1) {
  for (int n : {1, 2, 5, 8, 12}) {
    std::vector<double> x, w;
    gauss_legendre(n, x, w);
    ASSERT_EQ(x.size(), static_cast<size_t>(n));
    EXPECT_TRUE(std::is_sorted(x.begin(), x.end()));
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) sum += w[i] * std::pow(x[i], k);
      const double exact = k % 2 == 1 ? 0.0 : 2.0 / (k + 1);
      EXPECT_NEAR(sum, exact, 1e-14) << "n=" << n << " k=" << k;
    }
  }
}

TEST(GaussLegendre, TwoPointNodes) {
  std::vector<double> x, w;
  gauss_legendre(2, x, w);
  EXPECT_NEAR(x[1], 1 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(w[0], 1.0, 1e-15);
}

TEST(Grid, WeightsCarryTheGroupVolume) {
  const QuadratureGrid one = make_grid(8, 8, 1);
  const QuadratureGrid two = make_grid(8, 8, 2);
  double sum = 0.0;
  for (const GridNode& n : one.sphere_nodes()) {
    sum += n.weight;
    EXPECT_EQ(n.angles.twist, 0.0);
  }
  const double volume = 8 * std::numbers::pi * std::numbers::pi;
  EXPECT_NEAR(sum, volume, 1e-11);
  EXPECT_EQ(one.size(), 64u);
  EXPECT_EQ(two.size(), 4096u);
  EXPECT_EQ(two.sphere_nodes().size(), 64u);
}

TEST(Grid, IntegratesLowDegreeHarmonicsExactly) {
  // integral over phi, theta, psi of cos^2(theta) sin(theta) = 2 pi * 2 pi * 2/3
  // and of sin^2(theta) cos(2 phi) = 0.
  const QuadratureGrid g = make_grid(8, 8, 1);
  double c2 = 0.0, harmonic = 0.0;
  for (const GridNode& n : g.sphere_nodes()) {
    c2 += n.weight * std::pow(std::cos(n.angles.polar), 2);
    harmonic += n.weight * std::pow(std::sin(n.angles.polar), 2) * std::cos(2 * n.angles.azimuth) *
                std::cos(n.angles.polar);
  }
  EXPECT_NEAR(c2, 4 * std::numbers::pi * std::numbers::pi * 2.0 / 3.0, 1e-11);
  EXPECT_NEAR(harmonic, 0.0, 1e-12);
}

TEST(Grid, MinimumIsEnforced) {
  EXPECT_THROW(make_grid(7, 8, 1), GridError);
  EXPECT_THROW(make_grid(8, 4, 2), GridError);
  EXPECT_THROW(make_grid(8, 8, 3), GridError);
  const QuadratureGrid coarse = make_grid_unchecked(4, 4, 2);
  EXPECT_FALSE(coarse.meets_minimum());
  EXPECT_THROW(coarse.require_exact(2), GridError);
  const QuadratureGrid fine = make_grid(10, 12, 2);
  EXPECT_NO_THROW(fine.require_exact(2));
  EXPECT_THROW(fine.require_exact(1), GridError);
}
