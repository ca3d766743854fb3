#include <gtest/gtest.h>

#include "oracles.hpp"
#include "spintomo/matcore.hpp"

using namespace spintomo;

namespace {

ComplexMatrix wrap(const oracle::Mat& m) { return ComplexMatrix(Eigen::MatrixXcd(m)); }

double max_diff(const ComplexMatrix& a, const oracle::Mat& b) { return (a.eigen() - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(ComplexMatrix, RejectsUnsupportedDimensions) {
  EXPECT_THROW(ComplexMatrix(3), DimensionError);
  EXPECT_THROW(ComplexMatrix(Eigen::MatrixXcd::Zero(2, 4)), DimensionError);
  EXPECT_THROW(ComplexMatrix(2) + ComplexMatrix(4), DimensionError);
  EXPECT_NO_THROW(ComplexMatrix(2));
}

TEST(ComplexMatrix, KronMatchesIndexFormula) {
  oracle::Gen g(1);
  for (int trial = 0; trial < 10; ++trial) {
    oracle::Mat a(2, 2), b(2, 2);
    for (int i = 0; i < 4; ++i) {
      a(i / 2, i % 2) = {g.uniform(-1, 1), g.uniform(-1, 1)};
      b(i / 2, i % 2) = {g.uniform(-1, 1), g.uniform(-1, 1)};
    }
    EXPECT_LT(max_diff(kron(wrap(a), wrap(b)), oracle::kron(a, b)), 1e-15);
  }
}

TEST(ComplexMatrix, TraceOfProductAgreesWithProduct) {
  const DensityMatrix a = random_density(4, 3);
  const DensityMatrix b = random_density(4, 4);
  EXPECT_LT(std::abs(trace_of_product(a.matrix(), b.matrix()) - (a.matrix() * b.matrix()).trace()),
            1e-15);
}

TEST(ComplexMatrix, PauliAlgebra) {
  const ComplexMatrix x = pauli_x(), y = pauli_y(), z = pauli_z();
  EXPECT_LT((x * y - cplx(0, 1) * z).max_abs(), 1e-16);
  EXPECT_LT((x * x - ComplexMatrix::identity(2)).max_abs(), 1e-16);
  for (int i = 0; i < 3; ++i) EXPECT_LT(max_diff(std::vector{x, y, z}[i], oracle::pauli(i)), 1e-16);
}

TEST(Validation, WernerSpectrumMatchesClosedForm) {
  // Eigenvalues (1+3p)/4 once and (1-p)/4 three times.
  for (double p : {-1.0 / 3.0, -0.1, 0.0, 0.3, 0.5, 1.0}) {
    const auto ev = hermitian_eigenvalues(werner_matrix(p));
    std::vector<double> expected{(1 + 3 * p) / 4, (1 - p) / 4, (1 - p) / 4, (1 - p) / 4};
    std::sort(expected.begin(), expected.end());
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(ev[i], expected[i], 1e-14) << "p=" << p;
    EXPECT_LT(max_diff(werner_matrix(p), oracle::werner(p)), 1e-16);
  }
}

TEST(Validation, WernerOutsideDomainFailsPsdOnly) {
  const ValidationReport r = validate_density(werner_matrix(1.5));
  EXPECT_TRUE(r.hermitian);
  EXPECT_TRUE(r.unit_trace);
  EXPECT_FALSE(r.positive);
  EXPECT_NEAR(r.min_eigenvalue, -0.125, 1e-14);
  EXPECT_THROW(werner(1.5), DomainError);
  EXPECT_THROW(werner(-0.4), DomainError);
  EXPECT_NO_THROW(werner(-1.0 / 3.0));
}

TEST(Validation, ToleranceEdges) {
  ComplexMatrix m = ComplexMatrix::identity(4) * cplx(0.25);
  m(0, 1) = cplx(0, 5e-13);
  m(1, 0) = cplx(0, -5e-13);
  EXPECT_TRUE(validate_density(m).ok());

  ComplexMatrix skew = ComplexMatrix::identity(4) * cplx(0.25);
  skew(0, 1) = 1e-11;  // lower triangle left at 0
  const ValidationReport r = validate_density(skew);
  EXPECT_FALSE(r.hermitian);
  EXPECT_NEAR(r.hermiticity_defect, 1e-11, 1e-20);

  ComplexMatrix heavy = ComplexMatrix::identity(4) * cplx(0.25 + 1e-11);
  EXPECT_FALSE(validate_density(heavy).unit_trace);

  ComplexMatrix nan = ComplexMatrix::identity(4) * cplx(0.25);
  nan(2, 2) = std::nan("");
  EXPECT_FALSE(validate_density(nan).ok());
}

TEST(DensityMatrix, RandomStatesAreValidAndDeterministic) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const DensityMatrix a = random_density(4, seed);
    EXPECT_TRUE(validate_density(a.matrix()).ok());
    EXPECT_EQ((a.matrix() - random_density(4, seed).matrix()).max_abs(), 0.0);
  }
  EXPECT_GT((random_density(4, 1).matrix() - random_density(4, 2).matrix()).max_abs(), 1e-3);
  EXPECT_TRUE(validate_density(random_density(2, 9).matrix()).ok());
}

TEST(DensityMatrix, RelabelKeepsEntries) {
  const DensityMatrix a = random_density(4, 11);
  const DensityMatrix q = a.relabeled(Basis::qudit_3_2);
  EXPECT_EQ(q.basis(), Basis::qudit_3_2);
  EXPECT_EQ((q.matrix() - a.matrix()).max_abs(), 0.0);
  EXPECT_THROW(random_density(2, 1).relabeled(Basis::two_qubit), DimensionError);
}

TEST(Basis, StringRoundTrip) {
  for (Basis b : {Basis::qubit, Basis::two_qubit, Basis::qudit_3_2}) EXPECT_EQ(basis_from_string(to_string(b)), b);
  EXPECT_EQ(basis_from_string("qudit"), Basis::qudit_3_2);
  EXPECT_THROW(basis_from_string("qutrit"), std::invalid_argument);
}
