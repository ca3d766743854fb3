#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace spintomo {

using cplx = std::complex<double>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Dense square complex matrix of dimension 2 or 4, row-major indexing.
class ComplexMatrix {
 public:
  explicit ComplexMatrix(int dim);
  explicit ComplexMatrix(Eigen::MatrixXcd m);

  static ComplexMatrix identity(int dim);
  static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }

  int dim() const { return static_cast<int>(m_.rows()); }

  cplx& operator()(int i, int j) { return m_(i, j); }
  const cplx& operator()(int i, int j) const { return m_(i, j); }

  const Eigen::MatrixXcd& eigen() const { return m_; }

  ComplexMatrix adjoint() const { return ComplexMatrix(Eigen::MatrixXcd(m_.adjoint())); }
  cplx trace() const { return m_.trace(); }
  double frobenius_norm() const { return m_.norm(); }
  /// Largest entry modulus.
  double max_abs() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  Eigen::MatrixXcd m_;
};

/// Tr(a b) without forming the product.
cplx trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Ascending eigenvalues of the Hermitian part of m.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

// Two-qubit order is |++>, |+->, |-+>, |--> with + meaning m = +1/2.
// Qudit order is m = 3/2, 1/2, -1/2, -3/2. A single qubit is m = +1/2, -1/2.
enum class Basis { qubit, two_qubit, qudit_3_2 };

int basis_dim(Basis b);

std::string to_string(Basis b);
Basis basis_from_string(const std::string& s);

struct ValidationReport {
  double hermiticity_defect = 0.0;  // max |m - m^dagger|
  double trace_defect = 0.0;        // |Tr m - 1|
  double min_eigenvalue = 0.0;
  bool hermitian = false;
  bool unit_trace = false;
  bool positive = false;

  bool ok() const { return hermitian && unit_trace && positive; }
};

inline constexpr double kHermiticityTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

ValidationReport validate_density(const ComplexMatrix& m, double tol = kHermiticityTol,
                                  double psd_tol = kPsdTol);

/// A validated quantum state: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
 public:
  /// Throws DomainError when validation fails.
  static DensityMatrix from_matrix(ComplexMatrix m, Basis basis);

  const ComplexMatrix& matrix() const { return mat_; }
  Basis basis() const { return basis_; }
  int dim() const { return mat_.dim(); }

  /// Same operator read in another basis labelling (dimension 4 only).
  DensityMatrix relabeled(Basis basis) const;

 private:
  DensityMatrix(ComplexMatrix m, Basis basis) : mat_(std::move(m)), basis_(basis) {}

  ComplexMatrix mat_;
  Basis basis_;
};

/// Werner-form matrix without the domain check.
ComplexMatrix werner_matrix(double p);

/// Werner state; p must lie in [-1/3, 1].
DensityMatrix werner(double p, Basis basis = Basis::two_qubit);

/// G G^dagger / Tr(G G^dagger) with complex Gaussian G; deterministic in seed.
DensityMatrix random_density(int dim, std::uint64_t seed);
DensityMatrix random_density(int dim, std::uint64_t seed, Basis basis);

}  // namespace spintomo
