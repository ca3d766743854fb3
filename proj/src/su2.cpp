#include "spintomo/su2.hpp"

#include <cmath>
#include <string>

namespace spintomo {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

void require_projection(HalfInt j, HalfInt m) {
  if (std::abs(m.twice) > j.twice || (j.twice - m.twice) % 2 != 0) {
    throw std::out_of_range("projection " + std::to_string(m.value()) + " invalid for spin " +
                            std::to_string(j.value()));
  }
}

}  // namespace

std::vector<HalfInt> projections(HalfInt j) {
  std::vector<HalfInt> out;
  for (int t = j.twice; t >= -j.twice; t -= 2) out.push_back({t});
  return out;
}

int projection_index(HalfInt j, HalfInt m) {
  require_projection(j, m);
  return (j.twice - m.twice) / 2;
}

Direction Direction::checked(double x, double y, double z, double tol) {
  const double n = std::sqrt(x * x + y * y + z * z);
  if (!std::isfinite(n) || std::abs(n - 1.0) > tol) {
    throw DomainError("direction is not a unit vector (norm " + std::to_string(n) + ")");
  }
  return Direction(x / n, y / n, z / n);
}

Direction Direction::normalized(double x, double y, double z) {
  const double n = std::sqrt(x * x + y * y + z * z);
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("cannot normalize a zero vector");
  return Direction(x / n, y / n, z / n);
}

Direction Direction::from_angles(double theta, double phi) {
  return Direction(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                   std::cos(theta));
}

ComplexMatrix qubit_rotation(const EulerAngles& a) {
  const double c = std::cos(a.polar / 2.0);
  const double s = std::sin(a.polar / 2.0);
  const double sum = (a.azimuth + a.twist) / 2.0;
  const double diff = (a.azimuth - a.twist) / 2.0;
  ComplexMatrix u(2);
  u(0, 0) = c * std::polar(1.0, sum);
  u(0, 1) = s * std::polar(1.0, diff);
  u(1, 0) = -s * std::polar(1.0, -diff);
  u(1, 1) = c * std::polar(1.0, -sum);
  return u;
}

double jacobi_poly(int n, double a, double b, double x) {
  if (n < 0) throw std::invalid_argument("Jacobi polynomial degree must be non-negative");
  if (n == 0) return 1.0;
  double p_prev = 1.0;
  double p = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
  for (int k = 2; k <= n; ++k) {
    const double s = 2.0 * k + a + b;
    const double c1 = 2.0 * k * (k + a + b) * (s - 2.0);
    const double c2 = (s - 1.0) * (a * a - b * b);
    const double c3 = (s - 2.0) * (s - 1.0) * s;
    const double c4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
    const double next = ((c2 + c3 * x) * p - c4 * p_prev) / c1;
    p_prev = p;
    p = next;
  }
  return p;
}

double wigner_d(HalfInt j, HalfInt mp, HalfInt m, double beta) {
  if (j.twice < 0 || j.twice > kMaxSpin.twice) {
    throw std::out_of_range("spin " + std::to_string(j.value()) + " outside supported range");
  }
  require_projection(j, mp);
  require_projection(j, m);

  if (mp.twice < std::abs(m.twice)) {
    if (m.twice >= std::abs(mp.twice)) {
      const int parity = (m.twice - mp.twice) / 2;
      return (parity % 2 == 0 ? 1.0 : -1.0) * wigner_d(j, m, mp, beta);
    }
    return wigner_d(j, -m, -mp, beta);
  }

  // Here m' >= |m|, so both exponents and both Jacobi parameters are >= 0.
  const int sum = (mp.twice + m.twice) / 2;
  const int diff = (mp.twice - m.twice) / 2;
  const int degree = (j.twice - mp.twice) / 2;
  const double norm =
      std::sqrt(factorial((j.twice + mp.twice) / 2) * factorial((j.twice - mp.twice) / 2) /
                (factorial((j.twice + m.twice) / 2) * factorial((j.twice - m.twice) / 2)));
  return norm * std::pow(std::cos(beta / 2.0), sum) * std::pow(std::sin(beta / 2.0), diff) *
         jacobi_poly(degree, diff, sum, std::cos(beta));
}

ComplexMatrix wigner_D(HalfInt j, const EulerAngles& a) {
  if (j.twice != 1 && j.twice != 3) {
    throw DimensionError("wigner_D supports j = 1/2 and j = 3/2 only");
  }
  const auto ms = projections(j);
  const int n = static_cast<int>(ms.size());
  ComplexMatrix out(n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const double phase = ms[r].value() * a.twist + ms[c].value() * a.azimuth;
      out(r, c) = wigner_d(j, ms[r], ms[c], a.polar) * std::polar(1.0, phase);
    }
  }
  return out;
}

}  // namespace spintomo
