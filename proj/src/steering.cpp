#include "spintomo/steering.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace spintomo {

namespace {

using Vec3 = Eigen::Vector3d;

Eigen::Matrix3d as_matrix(const CorrelationTensor& t) {
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = t.t[i][j];
  return m;
}

Vec3 from_angles(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

// Lexicographic comparison of 3-vectors with a tolerance on equality.
bool lex_greater(const Vec3& a, const Vec3& b) {
  for (int i = 0; i < 3; ++i) {
    if (std::abs(a(i) - b(i)) > 1e-12) return a(i) > b(i);
  }
  return false;
}

// Maximise f over `dims` angles by compass search with a shrinking step.
template <typename F>
std::vector<double> pattern_search(F&& f, std::vector<double> x, double step, double min_step) {
  double best = f(x);
  while (step > min_step) {
    bool improved = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (double sgn : {1.0, -1.0}) {
        std::vector<double> y = x;
        y[i] += sgn * step;
        const double v = f(y);
        if (v > best) {
          best = v;
          x = std::move(y);
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return x;
}

// Sphere sample with n_polar Gauss-Legendre polar nodes and n_azimuth uniform azimuths.
std::vector<Vec3> sphere_sample(int n_polar, int n_azimuth) {
  std::vector<double> x, w;
  gauss_legendre(n_polar, x, w);
  std::vector<Vec3> out;
  for (int a = 0; a < n_azimuth; ++a)
    for (int p = 0; p < n_polar; ++p)
      out.push_back(from_angles(std::acos(x[p]), 2.0 * std::numbers::pi * a / n_azimuth));
  return out;
}

}  // namespace

ComplexMatrix spin_observable(const Direction& k) {
  return k.x() * pauli_x() + k.y() * pauli_y() + k.z() * pauli_z();
}

ComplexMatrix observable_o1(const Direction& k1) {
  return kron(spin_observable(k1), ComplexMatrix::identity(2));
}

ComplexMatrix observable_o2(const Direction& k2) {
  return kron(ComplexMatrix::identity(2), spin_observable(k2));
}

ObservableTriple observable_o(const Direction& k1, const Direction& k2) {
  ObservableTriple t{observable_o1(k1), observable_o2(k2),
                     kron(spin_observable(k1), spin_observable(k2)), k1, k2};
  const double commutator = (t.o1 * t.o2 - t.o2 * t.o1).max_abs();
  const double product = (t.o1 * t.o2 - t.o).max_abs();
  if (commutator > 1e-12 || product > 1e-12) {
    throw DomainError("observable triple violates o = o1 o2 = o2 o1");
  }
  return t;
}

double correlation_direct(const DensityMatrix& rho, const Direction& k1, const Direction& k2) {
  if (rho.dim() != 4) throw DimensionError("correlation needs a 4x4 state");
  return trace_of_product(kron(spin_observable(k1), spin_observable(k2)), rho.matrix()).real();
}

double correlation_tomographic_2q(const DensityMatrix& rho, const Direction& k1,
                                  const Direction& k2, const QuadratureGrid& grid,
                                  PairingVariant variant) {
  grid.require_exact(2);
  if (rho.dim() != 4) throw DimensionError("correlation needs a 4x4 state");
  const ComplexMatrix b = kron(spin_observable(k1), spin_observable(k2));
  const ComplexMatrix& r = rho.matrix();
  cplx acc = 0.0;
  for_each_point_2q(grid, [&](const FramePoint2Q& x, double w) {
    const ComplexMatrix u = dequantizer_2q(x);
    const ComplexMatrix d = quantizer_2q(x);
    if (variant == PairingVariant::symbol_dual) {
      acc += w * trace_of_product(b, u) * trace_of_product(r, d);
    } else {
      acc += w * trace_of_product(r, u) * trace_of_product(b, d);
    }
  });
  return acc.real();
}

double correlation_tomographic_qudit(const DensityMatrix& rho, const Direction& k1,
                                     const Direction& k2, const QuditFrame& frame,
                                     const QuadratureGrid& grid) {
  grid.require_exact(1);
  if (rho.dim() != 4) throw DimensionError("correlation needs a 4x4 state");
  const ComplexMatrix b = kron(spin_observable(k1), spin_observable(k2));
  const ComplexMatrix& r = rho.matrix();
  cplx acc = 0.0;
  for_each_point_qudit(grid, [&](const FramePointQudit& y, double w) {
    acc += w * trace_of_product(b, dequantizer_qudit(y)) * trace_of_product(r, frame.quantizer(y));
  });
  return acc.real();
}

double CorrelationTensor::bilinear(const Direction& k1, const Direction& k2) const {
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += t[i][j] * k1[i] * k2[j];
  return s;
}

double CorrelationTensor::sum_all() const {
  double s = 0.0;
  for (const auto& row : t)
    for (double v : row) s += v;
  return s;
}

double CorrelationTensor::sum_diagonal() const { return t[0][0] + t[1][1] + t[2][2]; }

CorrelationTensor CorrelationTensor::scaled(double s) const {
  CorrelationTensor out = *this;
  for (auto& row : out.t)
    for (double& v : row) v *= s;
  return out;
}

CorrelationTensor correlation_tensor(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw DimensionError("correlation tensor needs a 4x4 state");
  const std::array<ComplexMatrix, 3> sigma{pauli_x(), pauli_y(), pauli_z()};
  CorrelationTensor t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      t.t[i][j] = trace_of_product(rho.matrix(), kron(sigma[i], sigma[j])).real();
  return t;
}

DirectionPair max_correlation(const CorrelationTensor& t) {
  const Eigen::Matrix3d m = as_matrix(t);
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Vector3d& s = svd.singularValues();
  DirectionPair out;
  out.value = s(0);
  if (!(s(0) > 0.0)) return out;  // T = 0: any directions, keep z

  Vec3 best_u = Vec3::Zero(), best_v = Vec3::Zero();
  bool have = false;
  const double tie = 1e-12 * std::max(1.0, s(0));
  for (int k = 0; k < 3; ++k) {
    if (s(0) - s(k) > tie) continue;
    Vec3 u = svd.matrixU().col(k);
    Vec3 v = svd.matrixV().col(k);
    if (lex_greater(-u, u)) {
      u = -u;
      v = -v;
    }
    if (!have || lex_greater(u, best_u)) {
      best_u = u;
      best_v = v;
      have = true;
    }
  }
  out.k1 = Direction::normalized(best_u(0), best_u(1), best_u(2));
  out.k2 = Direction::normalized(best_v(0), best_v(1), best_v(2));
  return out;
}

DirectionPair max_correlation_search(const CorrelationTensor& t, int n_polar, int n_azimuth) {
  const Eigen::Matrix3d m = as_matrix(t);
  auto reach = [&](const Vec3& k1) { return (m.transpose() * k1).norm(); };
  const auto sample = sphere_sample(n_polar, n_azimuth);
  Vec3 best = sample.front();
  for (const Vec3& k : sample)
    if (reach(k) > reach(best)) best = k;

  const double theta = std::acos(std::clamp(best(2), -1.0, 1.0));
  const double phi = std::atan2(best(1), best(0));
  auto objective = [&](const std::vector<double>& a) { return reach(from_angles(a[0], a[1])); };
  const auto refined = pattern_search(objective, {theta, phi}, 0.05, 1e-12);
  const Vec3 k1 = from_angles(refined[0], refined[1]);
  Vec3 k2 = m.transpose() * k1;
  DirectionPair out;
  out.value = k2.norm();
  out.k1 = Direction::normalized(k1(0), k1(1), k1(2));
  if (out.value > 0.0) out.k2 = Direction::normalized(k2(0), k2(1), k2(2));
  return out;
}

double chsh_value(const DensityMatrix& rho, const Direction& a, const Direction& b,
                  const Direction& c, const Direction& d) {
  return std::abs(correlation_direct(rho, a, b) + correlation_direct(rho, a, c) +
                  correlation_direct(rho, d, b) - correlation_direct(rho, d, c));
}

double chsh_max_analytic(const CorrelationTensor& t) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(as_matrix(t));
  const Eigen::Vector3d& s = svd.singularValues();
  return 2.0 * std::sqrt(s(0) * s(0) + s(1) * s(1));
}

ChshSettings chsh_max_search(const CorrelationTensor& t, int points_per_sphere) {
  const Eigen::Matrix3d mt = as_matrix(t).transpose();
  // For fixed (a, d) the best b, c give |T^T(a+d)| + |T^T(a-d)|.
  auto score = [&](const Vec3& a, const Vec3& d) {
    return (mt * (a + d)).norm() + (mt * (a - d)).norm();
  };
  const int side = std::max(2, static_cast<int>(std::lround(std::sqrt(points_per_sphere))));
  const auto sample = sphere_sample(side, side);

  struct Candidate {
    double value;
    std::size_t i, j;
  };
  std::vector<Candidate> cands;
  for (std::size_t i = 0; i < sample.size(); ++i)
    for (std::size_t j = 0; j < sample.size(); ++j)
      cands.push_back({score(sample[i], sample[j]), i, j});
  // deterministic: value descending, then index order
  std::stable_sort(cands.begin(), cands.end(),
                   [](const Candidate& x, const Candidate& y) { return x.value > y.value; });

  auto objective = [&](const std::vector<double>& v) {
    return score(from_angles(v[0], v[1]), from_angles(v[2], v[3]));
  };
  auto angles_of = [](const Vec3& k) {
    return std::pair{std::acos(std::clamp(k(2), -1.0, 1.0)), std::atan2(k(1), k(0))};
  };

  double best_value = -1.0;
  std::vector<double> best_x;
  const std::size_t starts = std::min<std::size_t>(8, cands.size());
  for (std::size_t s = 0; s < starts; ++s) {
    const auto [ta, pa] = angles_of(sample[cands[s].i]);
    const auto [td, pd] = angles_of(sample[cands[s].j]);
    auto x = pattern_search(objective, {ta, pa, td, pd}, 0.1, 1e-10);
    const double v = objective(x);
    if (v > best_value) {
      best_value = v;
      best_x = std::move(x);
    }
  }

  const Vec3 a = from_angles(best_x[0], best_x[1]);
  const Vec3 d = from_angles(best_x[2], best_x[3]);
  auto unit_or = [](const Vec3& v, const Vec3& fallback) {
    return v.norm() > 1e-300 ? Vec3(v / v.norm()) : fallback;
  };
  const Vec3 b = unit_or(mt * (a + d), Vec3::UnitZ());
  const Vec3 c = unit_or(mt * (a - d), Vec3::UnitZ());
  ChshSettings out;
  out.a = Direction::normalized(a(0), a(1), a(2));
  out.d = Direction::normalized(d(0), d(1), d(2));
  out.b = Direction::normalized(b(0), b(1), b(2));
  out.c = Direction::normalized(c(0), c(1), c(2));
  out.value = best_value;
  return out;
}

SteeringReport steering_check(const DensityMatrix& rho) {
  SteeringReport r;
  r.tensor = correlation_tensor(rho);
  const DirectionPair best = max_correlation(r.tensor);
  r.lhs = best.value;
  r.k1 = best.k1;
  r.k2 = best.k2;
  r.lhs_search = max_correlation_search(r.tensor).value;
  r.rhs_all_entries = 2.0 / 3.0 * r.tensor.sum_all();
  r.rhs_diagonal = 2.0 / 3.0 * r.tensor.sum_diagonal();
  r.inequality_holds = r.lhs >= r.rhs_all_entries;
  r.chsh_max = chsh_max_analytic(r.tensor);
  r.chsh_max_search = chsh_max_search(r.tensor).value;
  r.bell_classical_violated = r.chsh_max > 2.0;
  return r;
}

double partial_transpose_min_eigenvalue(const ComplexMatrix& rho) {
  if (rho.dim() != 4) throw DimensionError("partial transpose needs a 4x4 operator");
  ComplexMatrix pt(4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) pt(2 * a + b, 2 * c + d) = rho(2 * a + d, 2 * c + b);
  return hermitian_eigenvalues(pt).front();
}

double CorrelationForms::max_pairwise_deviation() const {
  const std::array<double, 4> v{direct, tomo_2q_a, tomo_2q_b, tomo_qudit};
  double worst = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) worst = std::max(worst, std::abs(v[i] - v[j]));
  return worst;
}

CorrelationForms correlation_forms(const DensityMatrix& rho, const Direction& k1,
                                   const Direction& k2, const TomographyContext& ctx) {
  CorrelationForms f;
  f.direct = correlation_direct(rho, k1, k2);
  f.tomo_2q_a = correlation_tomographic_2q(rho, k1, k2, ctx.pair, PairingVariant::symbol_dual);
  f.tomo_2q_b = correlation_tomographic_2q(rho, k1, k2, ctx.pair, PairingVariant::dual_symbol);
  f.tomo_qudit = correlation_tomographic_qudit(rho, k1, k2, ctx.frame, ctx.sphere);
  return f;
}

}  // namespace spintomo
