#pragma once

// Independent reference implementations used only by the tests. None of these
// call into the library's numerics.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline double factorial(int n) { return std::tgamma(n + 1.0); }

/// Generalized binomial C(a, k) for real a.
inline double binom(double a, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= (a - i) / (i + 1);
  return r;
}

/// P_n^{(a,b)}(x) = sum_s C(n+a, n-s) C(n+b, s) ((x-1)/2)^s ((x+1)/2)^(n-s).
inline double jacobi_sum(int n, double a, double b, double x) {
  double r = 0.0;
  for (int s = 0; s <= n; ++s) {
    r += binom(n + a, n - s) * binom(n + b, s) * std::pow((x - 1) / 2, s) *
         std::pow((x + 1) / 2, n - s);
  }
  return r;
}

/// Wigner's explicit sum for d^j_{m'm}(beta); arguments are twice values.
///   sum_k (-1)^(k - m + m') sqrt((j+m')!(j-m')!(j+m)!(j-m)!)
///         / ((j+m-k)! k! (j-k-m')! (k-m+m')!) cos(b/2)^(2j-2k+m-m') sin(b/2)^(2k-m+m')
inline double wigner_small_d(int tj, int tmp, int tm, double beta) {
  const int jpm = (tj + tm) / 2, jmm = (tj - tm) / 2;
  const int jpmp = (tj + tmp) / 2, jmmp = (tj - tmp) / 2;
  const int shift = (tmp - tm) / 2;  // m' - m
  const double pre = std::sqrt(factorial(jpmp) * factorial(jmmp) * factorial(jpm) * factorial(jmm));
  const double c = std::cos(beta / 2), s = std::sin(beta / 2);
  double r = 0.0;
  for (int k = 0; k <= tj; ++k) {
    if (jpm - k < 0 || jmmp - k < 0 || k + shift < 0) continue;
    const double sign = ((k + shift) % 2 == 0) ? 1.0 : -1.0;
    r += sign * std::pow(c, tj - 2 * k - shift) * std::pow(s, 2 * k + shift) /
         (factorial(jpm - k) * factorial(k) * factorial(jmmp - k) * factorial(k + shift));
  }
  return pre * r;
}

/// Spin matrices in the descending |j, m> basis.
struct SpinMatrices {
  Mat x, y, z;
};

inline SpinMatrices spin_matrices(int twice_j) {
  const int n = twice_j + 1;
  const double j = 0.5 * twice_j;
  Mat plus = Mat::Zero(n, n), z = Mat::Zero(n, n);
  for (int r = 0; r < n; ++r) {
    const double m = j - r;
    z(r, r) = m;
    if (r > 0) plus(r - 1, r) = std::sqrt(j * (j + 1) - m * (m + 1));  // J+ |m> -> |m+1>
  }
  const Mat minus = plus.adjoint();
  return {(plus + minus) / 2.0, (plus - minus) / cplx(0, 2), z};
}

inline Mat pauli(int i) {
  Mat m(2, 2);
  if (i == 0) m << 0, 1, 1, 0;
  if (i == 1) m << 0, cplx(0, -1), cplx(0, 1), 0;
  if (i == 2) m << 1, 0, 0, -1;
  return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return r;
}

/// Projector onto the spin-up (m = +1/2) or spin-down state along unit vector n.
inline Mat qubit_projector(int twice_m, double nx, double ny, double nz) {
  return (Mat::Identity(2, 2) + twice_m * (nx * pauli(0) + ny * pauli(1) + nz * pauli(2))) / 2.0;
}

/// Werner family with E(z, z) = p: (I + p (XX - YY + ZZ)) / 4.
inline Mat werner(double p) {
  return (Mat::Identity(4, 4) +
          p * (kron(pauli(0), pauli(0)) - kron(pauli(1), pauli(1)) + kron(pauli(2), pauli(2)))) /
         4.0;
}

struct Gen {
  explicit Gen(std::uint64_t seed) : g(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g); }
  double angle() { return uniform(0, 2 * std::numbers::pi); }
  double polar() { return uniform(0, std::numbers::pi); }
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(g); }
  std::mt19937_64 g;
};

}  // namespace oracle
