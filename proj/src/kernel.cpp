#include "spintomo/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace spintomo {

namespace {

constexpr double kEightPiSq = 8.0 * std::numbers::pi * std::numbers::pi;

int factorial_int(int n) {
  int f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

cplx closed_form_sign(HalfInt m, SignReading reading) {
  const int shifted = (m.twice + 3) / 2;
  return reading == SignReading::exponential ? std::polar(1.0, std::numbers::pi * m.value())
                                             : cplx(shifted % 2 == 0 ? 1.0 : -1.0, 0.0);
}

MappedValue to_mapped(cplx z) { return {z.real(), std::abs(z.imag())}; }

}  // namespace

cplx kernel_k12(const QuditFrame& frame, const KernelPoint& p) {
  return trace_of_product(frame.quantizer(p.qudit_point()), dequantizer_2q(p.qubit_point()));
}

cplx kernel_k21(const KernelPoint& p) {
  return trace_of_product(quantizer_2q(p.qubit_point()), dequantizer_qudit(p.qudit_point()));
}

std::pair<cplx, cplx> dual_kernels(const QuditFrame& frame, const KernelPoint& p) {
  return {kernel_k21(p), kernel_k12(frame, p)};
}

KernelTerms kernel_k12_closed_terms(const KernelPoint& p, SignReading reading) {
  projection_index(kThreeHalves, p.m);
  projection_index(kHalf, p.m1);
  projection_index(kHalf, p.m2);
  const double m = p.m.value();
  const double m1 = p.m1.value();
  const double m2 = p.m2.value();
  const double a = p.qudit.azimuth;
  const double cb = std::cos(p.qudit.polar);
  const double sb = std::sin(p.qudit.polar);
  const double ct1 = std::cos(p.qubit1.polar);
  const double st1 = std::sin(p.qubit1.polar);
  const double ct2 = std::cos(p.qubit2.polar);
  const double st2 = std::sin(p.qubit2.polar);
  const cplx e1 = std::polar(1.0, p.qubit1.azimuth);
  const cplx e2 = std::polar(1.0, p.qubit2.azimuth);
  const double ca = std::cos(a);
  const double c2a = std::cos(2.0 * a);
  const double c3a = std::cos(3.0 * a);
  const double r3 = std::sqrt(3.0);

  const int shifted = (p.m.twice + 3) / 2;
  const cplx pref = closed_form_sign(p.m, reading) * cplx(0.0, 1.0) /
                    static_cast<double>(factorial_int(shifted) * factorial_int(3 - shifted));
  const double cubic = cb * (cb * cb - 0.6);

  KernelTerms t;
  t.constant = 0.25;
  t.linear_m1 = 0.6 * m * cb * 2.0 * m1 * ct1 - pref * (21.0 * cubic * (0.5 * m1 * ct1));
  t.linear_m2 = 0.6 * m * (cb * m2 * ct2 + m2 * sb * ca * st2 * e2 * (-r3)) -
                pref * (21.0 * cubic * (-m2 * ct2) +
                        r3 * m2 * (10.5 * sb * st2 * e2 * ca * (cb * cb - 0.2)));
  t.bilinear =
      0.6 * m * (m2 * sb * ca * st2 * e2 * 2.0 * m1 * st1 * e1) -
      pref * (10.0 * m * m1 * m2 * ct1 * ct2 * (1.0 - 3.0 * cb * cb) +
              r3 * m2 *
                  (21.0 * m1 * cb * sb * sb * ct2 * st1 * e1 * c2a +
                   10.0 * m * m1 * sb * sb * (e1 * ct2 * st1 * c2a + 4.0 * e2 * ct1 * st2 * ca)) +
              10.5 * m1 * m2 * sb * st1 * st2 * e1 * e2 *
                  (-0.6 * ca + 3.0 * cb * cb * ca - sb * sb * c3a));

  const double scale = 1.0 / kEightPiSq;
  t.constant *= scale;
  t.linear_m1 *= scale;
  t.linear_m2 *= scale;
  t.bilinear *= scale;
  return t;
}

cplx kernel_k12_closed(const KernelPoint& p, SignReading reading) {
  return kernel_k12_closed_terms(p, reading).total();
}

KernelTerms kernel_k12_terms(const QuditFrame& frame, const KernelPoint& p) {
  auto at = [&](int s1, int s2) {
    KernelPoint q = p;
    q.m1 = {s1};
    q.m2 = {s2};
    return kernel_k12(frame, q);
  };
  const cplx pp = at(1, 1), pm = at(1, -1), mp = at(-1, 1), mm = at(-1, -1);
  const cplx a = 0.25 * (pp + pm + mp + mm);
  const cplx b = 0.5 * (pp + pm - mp - mm);
  const cplx c = 0.5 * (pp - pm + mp - mm);
  const cplx d = pp - pm - mp + mm;
  const double m1 = p.m1.value();
  const double m2 = p.m2.value();
  return {a, m1 * b, m2 * c, m1 * m2 * d};
}

KernelDiscrepancyReport compare_closed_kernel(const QuditFrame& frame, int samples,
                                              std::uint64_t seed, SignReading reading,
                                              double tolerance) {
  KernelDiscrepancyReport rep;
  rep.reading = reading;
  rep.quantizer = frame.capability().selected;
  rep.samples = samples;
  rep.tolerance = tolerance;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> turn(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> half_turn(0.0, std::numbers::pi);
  std::uniform_int_distribution<int> pick4(0, 3);
  std::uniform_int_distribution<int> pick2(0, 1);
  const auto qudit_ms = projections(kThreeHalves);

  std::vector<std::pair<double, KernelSampleDiscrepancy>> all;
  for (int s = 0; s < samples; ++s) {
    KernelPoint p;
    p.m = qudit_ms[pick4(rng)];
    p.m1 = {pick2(rng) ? 1 : -1};
    p.m2 = {pick2(rng) ? 1 : -1};
    p.qudit = {turn(rng), half_turn(rng), turn(rng)};
    p.qubit1 = {turn(rng), half_turn(rng), turn(rng)};
    p.qubit2 = {turn(rng), half_turn(rng), turn(rng)};

    const KernelTerms tr = kernel_k12_terms(frame, p);
    const KernelTerms cl = kernel_k12_closed_terms(p, reading);
    const double diff = std::abs(tr.total() - cl.total());
    rep.max_abs_difference = std::max(rep.max_abs_difference, diff);
    const std::array<cplx, 4> dt{tr.constant - cl.constant, tr.linear_m1 - cl.linear_m1,
                                 tr.linear_m2 - cl.linear_m2, tr.bilinear - cl.bilinear};
    for (int k = 0; k < 4; ++k) {
      rep.max_term_difference[k] = std::max(rep.max_term_difference[k], std::abs(dt[k]));
    }
    rep.max_closed_imaginary = std::max(rep.max_closed_imaginary, std::abs(cl.total().imag()));
    rep.max_trace_imaginary = std::max(rep.max_trace_imaginary, std::abs(tr.total().imag()));
    all.push_back({diff, {p, tr, cl}});
  }
  rep.agrees = rep.max_abs_difference <= tolerance;
  std::stable_sort(all.begin(), all.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });
  for (std::size_t i = 0; i < std::min<std::size_t>(5, all.size()); ++i) {
    rep.worst.push_back(all[i].second);
  }
  return rep;
}

KernelMapper::KernelMapper(const QuditFrame& frame, const QuadratureGrid& qudit_grid,
                           const QuadratureGrid& qubit_grid)
    : frame_(frame) {
  qudit_grid.require_exact(1);
  qubit_grid.require_exact(2);
  for_each_point_qudit(qudit_grid, [&](const FramePointQudit& p, double w) {
    qudit_nodes_.push_back({p, w, frame_.quantizer(p), dequantizer_qudit(p)});
  });
  for_each_point_2q(qubit_grid, [&](const FramePoint2Q& p, double w) {
    qubit_nodes_.push_back({p, w, quantizer_2q(p), dequantizer_2q(p)});
  });
}

MappedValue KernelMapper::qudit_to_2q(const TomogramQuditFn& w, const FramePoint2Q& target) const {
  const ComplexMatrix u = dequantizer_2q(target);
  cplx acc = 0.0;
  for (const QuditNode& n : qudit_nodes_) {
    acc += n.weight * w(n.point) * trace_of_product(n.quantizer, u);
  }
  return to_mapped(acc);
}

MappedValue KernelMapper::twoq_to_qudit(const Tomogram2QFn& omega,
                                        const FramePointQudit& target) const {
  const ComplexMatrix u = dequantizer_qudit(target);
  cplx acc = 0.0;
  for (const QubitNode& n : qubit_nodes_) {
    acc += n.weight * omega(n.point) * trace_of_product(n.quantizer, u);
  }
  return to_mapped(acc);
}

MappedValue KernelMapper::dual_qudit_to_2q(const std::function<cplx(const FramePointQudit&)>& wd,
                                           const FramePoint2Q& target) const {
  const ComplexMatrix d = quantizer_2q(target);
  cplx acc = 0.0;
  for (const QuditNode& n : qudit_nodes_) {
    acc += n.weight * wd(n.point) * trace_of_product(d, n.dequantizer);
  }
  return to_mapped(acc);
}

MappedValue KernelMapper::dual_2q_to_qudit(const std::function<cplx(const FramePoint2Q&)>& omegad,
                                           const FramePointQudit& target) const {
  const ComplexMatrix d = frame_.quantizer(target);
  cplx acc = 0.0;
  for (const QubitNode& n : qubit_nodes_) {
    acc += n.weight * omegad(n.point) * trace_of_product(d, n.dequantizer);
  }
  return to_mapped(acc);
}

MappedValue map_qudit_to_2q(const TomogramQuditFn& w, const QuditFrame& frame,
                            const QuadratureGrid& qudit_grid, const FramePoint2Q& target) {
  qudit_grid.require_exact(1);
  cplx acc = 0.0;
  for_each_point_qudit(qudit_grid, [&](const FramePointQudit& p, double wt) {
    KernelPoint k{p.m, target.m1, target.m2, p.n, target.n1, target.n2};
    acc += wt * w(p) * kernel_k12(frame, k);
  });
  return to_mapped(acc);
}

MappedValue map_2q_to_qudit(const Tomogram2QFn& omega, const QuadratureGrid& qubit_grid,
                            const FramePointQudit& target) {
  qubit_grid.require_exact(2);
  cplx acc = 0.0;
  for_each_point_2q(qubit_grid, [&](const FramePoint2Q& p, double wt) {
    KernelPoint k{target.m, p.m1, p.m2, target.n, p.n1, p.n2};
    acc += wt * omega(p) * kernel_k21(k);
  });
  return to_mapped(acc);
}

}  // namespace spintomo
