#include <cmath>
#include <numbers>
#include <random>

#include "spintomo/kernel.hpp"
#include "spintomo/steering.hpp"

namespace spintomo {

double werner_qudit_tomogram_closed(double p, HalfInt m, double alpha, double beta) {
  const double c2b = std::cos(2.0 * beta);
  const double sb = std::sin(beta);
  const double s3b = std::sin(3.0 * beta);
  const double c3a = std::cos(3.0 * alpha);
  const double h = 2.0 * std::pow(std::sin(1.5 * alpha), 2) - 1.0;
  const double sb2 = 2.0 * sb * sb - 1.0;
  switch (m.twice) {
    case -3:
      return p / 16 + 3 * p / 16 * c2b - 3 * p / 32 * sb * c3a + p / 32 * c3a * s3b + 0.25;
    case -1:
      return 3 * p / 16 * sb2 - p / 16 + 3 * p / 32 * s3b * h - 9 * p / 32 * sb * h + 0.25;
    case 1:
      return 3 * p / 16 * sb2 - p / 16 - 3 * p / 32 * s3b * h + 9 * p / 32 * sb * h + 0.25;
    case 3:
      return p / 16 + 3 * p / 16 * c2b + 3 * p / 32 * sb * c3a - p / 32 * c3a * s3b + 0.25;
    default:
      throw std::out_of_range("qudit projection must be one of +-1/2, +-3/2");
  }
}

double werner_two_qubit_tomogram_closed(double p, const FramePoint2Q& x) {
  const double t1 = x.n1.polar, t2 = x.n2.polar;
  return 0.25 + p * x.m1.value() * x.m2.value() *
                    (std::cos(t1) * std::cos(t2) +
                     std::sin(t1) * std::sin(t2) * std::cos(x.n1.azimuth + x.n2.azimuth));
}

WernerReport werner_report(double p, const TomographyContext& ctx, const Direction& k1,
                           const Direction& k2) {
  const DensityMatrix two = werner(p, Basis::two_qubit);
  const DensityMatrix qudit = two.relabeled(Basis::qudit_3_2);

  WernerReport r;
  r.p = p;
  r.k1 = k1;
  r.k2 = k2;
  r.e_zz = correlation_direct(two, Direction::z_axis(), Direction::z_axis());
  r.e_zz_only = k1.z() * k2.z() * p;
  r.forms = correlation_forms(two, k1, k2, ctx);
  r.steering = steering_check(two);
  r.ppt_min_eigenvalue = partial_transpose_min_eigenvalue(two.matrix());
  r.entangled = p > 1.0 / 3.0;

  // Fixed spot-check points so the report is reproducible.
  std::mt19937_64 rng(977);
  std::uniform_real_distribution<double> turn(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> half_turn(0.0, std::numbers::pi);
  for (int s = 0; s < 16; ++s) {
    const double alpha = turn(rng);
    const double beta = s == 0 ? 0.0 : half_turn(rng);
    for (HalfInt m : projections(kThreeHalves)) {
      const double direct = tomogram(qudit, FramePointQudit{m, {alpha, beta, 0.0}});
      r.qudit_closed_form_max_deviation =
          std::max(r.qudit_closed_form_max_deviation,
                   std::abs(direct - werner_qudit_tomogram_closed(p, m, alpha, beta)));
    }
  }

  const KernelMapper mapper(ctx.frame, ctx.sphere, ctx.pair);
  auto w = [&](const FramePointQudit& y) { return tomogram(qudit, y); };
  auto omega = [&](const FramePoint2Q& x) { return tomogram(two, x); };
  for (int s = 0; s < 4; ++s) {
    FramePoint2Q x;
    x.m1 = {s % 2 ? -1 : 1};
    x.m2 = {s / 2 ? -1 : 1};
    x.n1 = {turn(rng), half_turn(rng), turn(rng)};
    x.n2 = {turn(rng), half_turn(rng), turn(rng)};
    const double direct = tomogram(two, x);
    r.two_qubit_closed_form_max_deviation =
        std::max(r.two_qubit_closed_form_max_deviation,
                 std::abs(direct - werner_two_qubit_tomogram_closed(p, x)));
    r.kernel_mapping_residual =
        std::max(r.kernel_mapping_residual, std::abs(mapper.qudit_to_2q(w, x).value - direct));

    const FramePointQudit y{projections(kThreeHalves)[s], {turn(rng), half_turn(rng), turn(rng)}};
    r.kernel_mapping_residual = std::max(
        r.kernel_mapping_residual, std::abs(mapper.twoq_to_qudit(omega, y).value - tomogram(qudit, y)));
  }

  r.notes.push_back(
      "E(k1,k2) = k1z k2z p keeps only the z-z entry of T = diag(p, -p, p); the direct trace "
      "includes the x-x and y-y contributions");
  r.notes.push_back(
      "for Werner states lhs = |p| and both (2/3) sum readings equal 2p/3, so "
      "max E >= (2/3) sum T holds for every p in [-1/3, 1]; the inequality alone does not single out "
      "a steerable window such as 1/3 < p < 1/2");
  r.notes.push_back("entangled flag uses p > 1/3; ppt_min_eigenvalue < 0 is the independent test");
  return r;
}

}  // namespace spintomo
