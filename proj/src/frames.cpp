#include "spintomo/frames.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

namespace spintomo {

namespace {

constexpr double kEightPiSq = 8.0 * std::numbers::pi * std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);

int factorial_int(int n) {
  int f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

void require_basis(const DensityMatrix& rho, Basis expected) {
  if (rho.basis() != expected) {
    throw std::invalid_argument("representation mismatch: state is tagged " +
                                to_string(rho.basis()) + ", point needs " + to_string(expected));
  }
}

}  // namespace

void require_valid(const FramePoint2Q& p) {
  projection_index(kHalf, p.m1);
  projection_index(kHalf, p.m2);
}

void require_valid(const FramePointQudit& p) { projection_index(kThreeHalves, p.m); }

ComplexMatrix spin_axis_operator(double phi, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  ComplexMatrix f(2);
  f(0, 0) = c;
  f(0, 1) = -std::polar(s, phi);
  f(1, 0) = -std::polar(s, -phi);
  f(1, 1) = -c;
  return f;
}

ComplexMatrix qubit_dequantizer(HalfInt m, const EulerAngles& n) {
  projection_index(kHalf, m);
  return 0.5 * ComplexMatrix::identity(2) + m.value() * spin_axis_operator(n.azimuth, n.polar);
}

ComplexMatrix qubit_quantizer(HalfInt m, const EulerAngles& n) {
  projection_index(kHalf, m);
  return (1.0 / kEightPiSq) * (0.5 * ComplexMatrix::identity(2) +
                               3.0 * m.value() * spin_axis_operator(n.azimuth, n.polar));
}

ComplexMatrix dequantizer_2q(const FramePoint2Q& p) {
  return kron(qubit_dequantizer(p.m1, p.n1), qubit_dequantizer(p.m2, p.n2));
}

ComplexMatrix quantizer_2q(const FramePoint2Q& p) {
  return kron(qubit_quantizer(p.m1, p.n1), qubit_quantizer(p.m2, p.n2));
}

ComplexMatrix dequantizer_qudit(const FramePointQudit& p) {
  const int row = projection_index(kThreeHalves, p.m);
  const ComplexMatrix d = wigner_D(kThreeHalves, p.n);
  ComplexMatrix out(4);
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) out(k, l) = std::conj(d(row, k)) * d(row, l);
  return out;
}

std::string to_string(SignReading r) {
  return r == SignReading::exponential ? "exponential" : "integer_shift";
}

ComplexMatrix explicit_b1(double m, double alpha, double beta) {
  const double c = std::cos(beta);
  const double s = std::sin(beta);
  const cplx up = std::polar(1.0, alpha);    // e^{i alpha}
  const cplx down = std::polar(1.0, -alpha);
  const double outer = 3.0 * kSqrt3 * m / 10.0 * s;
  const double middle = 63.0 * m / 105.0 * s;
  ComplexMatrix b(4);
  b(0, 0) = 0.25 + 0.9 * m * c;
  b(0, 1) = outer * down;
  b(1, 0) = outer * up;
  b(1, 1) = 0.25 + 0.3 * m * c;
  b(1, 2) = middle * up;
  b(2, 1) = middle * up;  // same exponent sign on both sides, as given
  b(2, 2) = 0.25 - 0.3 * m * c;
  b(2, 3) = outer * down;
  b(3, 2) = outer * up;
  b(3, 3) = 0.25 - 0.9 * m * c;
  return b;
}

ComplexMatrix explicit_b2(double alpha, double beta) {
  const double c = std::cos(beta);
  const double s = std::sin(beta);
  const double s2b = std::sin(2.0 * beta);
  const double zz = 3.0 * c * c - 1.0;
  auto e = [alpha](int k) { return std::polar(1.0, k * alpha); };
  ComplexMatrix b(4);
  b(0, 0) = zz;
  b(0, 1) = kSqrt3 * s2b * e(-1);
  b(0, 2) = kSqrt3 * s * s * e(-2);
  b(1, 0) = kSqrt3 * s2b * e(1);
  b(1, 1) = -zz;
  b(1, 3) = -kSqrt3 * s * s * e(-2);
  b(2, 0) = kSqrt3 * s * s * e(2);
  b(2, 2) = -zz;
  b(2, 3) = -kSqrt3 * s2b * e(-1);
  b(3, 1) = -kSqrt3 * s * s * e(2);
  b(3, 2) = -kSqrt3 * s2b * e(1);
  b(3, 3) = zz;
  return b;
}

ComplexMatrix explicit_sin_b3(double alpha, double beta) {
  const double c = std::cos(beta);
  const double s = std::sin(beta);
  const double q = c * c - 0.6;
  const double r = c * c - 0.2;
  auto e = [alpha](int k) { return std::polar(1.0, k * alpha); };
  ComplexMatrix b(4);
  b(0, 0) = c * q;
  b(0, 1) = kSqrt3 * s * r * e(-1);
  b(0, 2) = kSqrt3 * s * s * c * e(-2);
  b(0, 3) = s * s * s * e(-3);
  b(1, 0) = kSqrt3 * s * r * e(1);
  b(1, 1) = 3.0 * c * q;
  b(1, 2) = -3.0 * s * r * e(-1);
  b(1, 3) = -kSqrt3 * s * s * c * e(-2);
  b(2, 0) = kSqrt3 * s * s * c * e(2);
  b(2, 1) = -3.0 * s * r * e(1);
  b(2, 2) = -3.0 * c * q;
  b(2, 3) = kSqrt3 * s * r * e(-1);
  b(3, 0) = s * s * s * e(3);
  b(3, 1) = kSqrt3 * s * s * c * e(2);
  b(3, 2) = kSqrt3 * s * r * e(1);
  b(3, 3) = -c * q;
  return b;
}

ComplexMatrix explicit_b_matrix(HalfInt m, double alpha, double beta, SignReading reading) {
  projection_index(kThreeHalves, m);
  const double mv = m.value();
  const int shifted = (m.twice + 3) / 2;  // m + 3/2
  const cplx sign = reading == SignReading::exponential
                        ? std::polar(1.0, std::numbers::pi * mv)
                        : cplx(shifted % 2 == 0 ? 1.0 : -1.0, 0.0);
  const cplx prefactor =
      cplx(0.0, 1.0) * sign / (2.0 * factorial_int(shifted) * factorial_int(3 - shifted));
  return explicit_b1(mv, alpha, beta) +
         prefactor * (5.0 * mv * explicit_b2(alpha, beta) + 10.5 * explicit_sin_b3(alpha, beta));
}

ComplexMatrix quantizer_qudit_explicit(const FramePointQudit& p, SignReading reading) {
  return (1.0 / kEightPiSq) * explicit_b_matrix(p.m, p.n.azimuth, p.n.polar, reading);
}

double tomogram(const DensityMatrix& rho, const FramePoint2Q& p) {
  require_basis(rho, Basis::two_qubit);
  return trace_of_product(rho.matrix(), dequantizer_2q(p)).real();
}

double tomogram(const DensityMatrix& rho, const FramePointQudit& p) {
  require_basis(rho, Basis::qudit_3_2);
  return trace_of_product(rho.matrix(), dequantizer_qudit(p)).real();
}

cplx symbol(const ComplexMatrix& a, const FramePoint2Q& p) {
  return trace_of_product(a, dequantizer_2q(p));
}

cplx symbol(const ComplexMatrix& a, const FramePointQudit& p) {
  return trace_of_product(a, dequantizer_qudit(p));
}

cplx dual_symbol(const ComplexMatrix& a, const FramePoint2Q& p) {
  return trace_of_product(a, quantizer_2q(p));
}

void for_each_point_2q(const QuadratureGrid& grid,
                       const std::function<void(const FramePoint2Q&, double)>& visit) {
  const auto& nodes = grid.sphere_nodes();
  const auto ms = projections(kHalf);
  FramePoint2Q p;
  for (HalfInt m1 : ms)
    for (HalfInt m2 : ms)
      for (const GridNode& a : nodes)
        for (const GridNode& b : nodes) {
          p.m1 = m1;
          p.m2 = m2;
          p.n1 = a.angles;
          p.n2 = b.angles;
          visit(p, a.weight * b.weight);
        }
}

void for_each_point_qudit(const QuadratureGrid& grid,
                          const std::function<void(const FramePointQudit&, double)>& visit) {
  FramePointQudit p;
  for (HalfInt m : projections(kThreeHalves))
    for (const GridNode& node : grid.sphere_nodes()) {
      p.m = m;
      p.n = node.angles;
      visit(p, node.weight);
    }
}

ComplexMatrix reconstruct_2q(const Tomogram2QFn& tomo, const Operator2QFn& quantizer,
                             const QuadratureGrid& grid) {
  grid.require_exact(2);
  ComplexMatrix acc(4);
  for_each_point_2q(grid, [&](const FramePoint2Q& p, double w) {
    acc += (w * tomo(p)) * quantizer(p);
  });
  return acc;
}

ComplexMatrix reconstruct_qudit(const TomogramQuditFn& tomo, const OperatorQuditFn& quantizer,
                                const QuadratureGrid& grid) {
  grid.require_exact(1);
  ComplexMatrix acc(4);
  for_each_point_qudit(grid, [&](const FramePointQudit& p, double w) {
    acc += (w * tomo(p)) * quantizer(p);
  });
  return acc;
}

TomogramTable tomogram_table(const DensityMatrix& rho, const QuadratureGrid& grid) {
  TomogramTable table;
  table.representation = rho.basis();
  if (rho.basis() == Basis::two_qubit) {
    grid.require_exact(2);
    for_each_point_2q(grid, [&](const FramePoint2Q& p, double) {
      table.rows.push_back({{p.m1, p.m2}, {p.n1, p.n2}, tomogram(rho, p)});
    });
  } else if (rho.basis() == Basis::qudit_3_2) {
    grid.require_exact(1);
    for_each_point_qudit(grid, [&](const FramePointQudit& p, double) {
      table.rows.push_back({{p.m}, {p.n}, tomogram(rho, p)});
    });
  } else {
    throw std::invalid_argument("tomogram tables need a two_qubit or qudit_3_2 state");
  }
  return table;
}

void write_csv(std::ostream& os, const TomogramTable& table) {
  const bool two = table.representation == Basis::two_qubit;
  os << "representation,";
  os << (two ? "m1,m2,phi1,theta1,psi1,phi2,theta2,psi2" : "m,alpha,beta,gamma") << ",value\n";
  const auto old_precision = os.precision(17);
  for (const TomogramRow& row : table.rows) {
    os << (two ? "two_qubit" : "qudit");
    for (HalfInt m : row.projections) os << ',' << m.value();
    for (const EulerAngles& a : row.angles) os << ',' << a.azimuth << ',' << a.polar << ',' << a.twist;
    const double v = (row.value < 0.0 && row.value >= -1e-12) ? 0.0 : row.value;
    os << ',' << v << '\n';
  }
  os.precision(old_precision);
}

}  // namespace spintomo
