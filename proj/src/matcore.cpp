#include "spintomo/matcore.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace spintomo {

namespace {

void require_supported_dim(int dim) {
  if (dim != 2 && dim != 4) {
    throw DimensionError("matrix dimension must be 2 or 4, got " + std::to_string(dim));
  }
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(int dim) {
  require_supported_dim(dim);
  m_ = Eigen::MatrixXcd::Zero(dim, dim);
}

ComplexMatrix::ComplexMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw DimensionError("matrix must be square");
  require_supported_dim(static_cast<int>(m_.rows()));
}

ComplexMatrix ComplexMatrix::identity(int dim) {
  require_supported_dim(dim);
  return ComplexMatrix(Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(dim, dim)));
}

double ComplexMatrix::max_abs() const { return m_.cwiseAbs().maxCoeff(); }

bool ComplexMatrix::all_finite() const {
  for (Eigen::Index i = 0; i < m_.size(); ++i) {
    const cplx z = m_.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_dim(*this, o);
  m_ += o.m_;
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_dim(*this, o);
  m_ -= o.m_;
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  m_ *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  return ComplexMatrix(Eigen::MatrixXcd(a.m_ * b.m_));
}

cplx trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  const int n = a.dim();
  cplx acc = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) acc += a(i, j) * b(j, i);
  }
  return acc;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != 2 || b.dim() != 2) {
    throw DimensionError("kron expects two 2x2 operands");
  }
  ComplexMatrix out(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  const Eigen::MatrixXcd h = 0.5 * (m.eigen() + m.eigen().adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

ComplexMatrix pauli_x() {
  ComplexMatrix s(2);
  s(0, 1) = 1.0;
  s(1, 0) = 1.0;
  return s;
}

ComplexMatrix pauli_y() {
  ComplexMatrix s(2);
  s(0, 1) = cplx(0.0, -1.0);
  s(1, 0) = cplx(0.0, 1.0);
  return s;
}

ComplexMatrix pauli_z() {
  ComplexMatrix s(2);
  s(0, 0) = 1.0;
  s(1, 1) = -1.0;
  return s;
}

int basis_dim(Basis b) { return b == Basis::qubit ? 2 : 4; }

std::string to_string(Basis b) {
  switch (b) {
    case Basis::qubit: return "qubit";
    case Basis::two_qubit: return "two_qubit";
    case Basis::qudit_3_2: return "qudit_3_2";
  }
  return "unknown";
}

Basis basis_from_string(const std::string& s) {
  if (s == "two_qubit") return Basis::two_qubit;
  if (s == "qudit_3_2" || s == "qudit") return Basis::qudit_3_2;
  if (s == "qubit") return Basis::qubit;
  throw std::invalid_argument("unknown basis '" + s + "'");
}

ValidationReport validate_density(const ComplexMatrix& m, double tol, double psd_tol) {
  ValidationReport r;
  if (!m.all_finite()) {
    r.hermiticity_defect = r.trace_defect = std::numeric_limits<double>::infinity();
    r.min_eigenvalue = -std::numeric_limits<double>::infinity();
    return r;
  }
  r.hermiticity_defect = (m.eigen() - m.eigen().adjoint()).cwiseAbs().maxCoeff();
  r.trace_defect = std::abs(m.trace() - 1.0);
  r.min_eigenvalue = hermitian_eigenvalues(m).front();
  r.hermitian = r.hermiticity_defect <= tol;
  r.unit_trace = r.trace_defect <= tol;
  r.positive = r.min_eigenvalue >= -psd_tol;
  return r;
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m, Basis basis) {
  if (m.dim() != basis_dim(basis)) {
    throw DimensionError("basis " + to_string(basis) + " needs dimension " +
                         std::to_string(basis_dim(basis)));
  }
  const ValidationReport r = validate_density(m);
  if (!r.ok()) {
    throw DomainError("not a density matrix: hermiticity defect " +
                      std::to_string(r.hermiticity_defect) + ", trace defect " +
                      std::to_string(r.trace_defect) + ", min eigenvalue " +
                      std::to_string(r.min_eigenvalue));
  }
  return DensityMatrix(std::move(m), basis);
}

DensityMatrix DensityMatrix::relabeled(Basis basis) const {
  if (basis_dim(basis) != dim()) throw DimensionError("cannot relabel across dimensions");
  return DensityMatrix(mat_, basis);
}

ComplexMatrix werner_matrix(double p) {
  ComplexMatrix m(4);
  m(0, 0) = m(3, 3) = (1.0 + p) / 4.0;
  m(1, 1) = m(2, 2) = (1.0 - p) / 4.0;
  m(0, 3) = m(3, 0) = p / 2.0;
  return m;
}

DensityMatrix werner(double p, Basis basis) {
  if (!(p >= -1.0 / 3.0 && p <= 1.0)) {
    throw DomainError("Werner parameter must satisfy -1/3 <= p <= 1, got " + std::to_string(p));
  }
  if (basis == Basis::qubit) throw DimensionError("Werner states are 4x4");
  return DensityMatrix::from_matrix(werner_matrix(p), basis);
}

DensityMatrix random_density(int dim, std::uint64_t seed) {
  return random_density(dim, seed, dim == 2 ? Basis::qubit : Basis::two_qubit);
}

DensityMatrix random_density(int dim, std::uint64_t seed, Basis basis) {
  require_supported_dim(dim);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = cplx(re, im);
    }
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace().real();
  // Exact Hermiticity; the product is Hermitian only up to rounding.
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix::from_matrix(ComplexMatrix(std::move(rho)), basis);
}

}  // namespace spintomo
