#include "spintomo/selftest.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "spintomo/json_io.hpp"
#include "spintomo/kernel.hpp"
#include "spintomo/steering.hpp"

namespace spintomo {

namespace {

using Clock = std::chrono::steady_clock;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string fix(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

struct Rng {
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double turn() { return std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(gen); }
  double half_turn() { return std::uniform_real_distribution<double>(0.0, std::numbers::pi)(gen); }
  EulerAngles angles() { return {turn(), half_turn(), turn()}; }
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(gen); }
  Direction direction() {
    std::normal_distribution<double> g(0.0, 1.0);
    const double x = g(gen), y = g(gen), z = g(gen);
    return Direction::normalized(x, y, z);
  }
  std::uint64_t seed() { return gen(); }
  std::mt19937_64 gen;
};

HalfInt qubit_m(int i) { return {i == 0 ? 1 : -1}; }

struct Outcome {
  bool passed;
  std::string detail;
};

class Runner {
 public:
  explicit Runner(const SelftestOptions& o) : opt_(o), rng_(o.seed) {
    const int az = o.force_coarse ? 4 : o.n_azimuth;
    const int pol = o.force_coarse ? 4 : o.n_polar;
    try {
      QuadratureGrid sphere = make_grid_unchecked(az, pol, 1);
      QuadratureGrid pair = make_grid_unchecked(az, pol, 2);
      QuditFrame frame = QuditFrame::build(sphere);
      ctx_.emplace(TomographyContext{std::move(sphere), std::move(pair), std::move(frame)});
    } catch (const std::exception& e) {
      ctx_error_ = e.what();
    }
  }

  SelftestSummary run() {
    const auto start = Clock::now();
    add(1, "frame completeness and tomogram normalization", 1.0, [&] { return c1(); });
    add(2, "two-qubit reconstruction", 10.0, [&] { return c2(); });
    add(3, "qudit reconstruction", 10.0, [&] { return c3(); });
    add(4, "Werner qudit tomogram closed forms", 0.0, [&] { return c4(); });
    add(5, "kernel intertwining both directions", 30.0, [&] { return c5(); });
    add(6, "closed-form kernel cross-check", 0.0, [&] { return c6(); });
    add(7, "four-way correlation equivalence", 30.0, [&] { return c7(); });
    add(8, "Werner correlations and tensor", 0.0, [&] { return c8(); });
    add(9, "Bell/CHSH bounds", 0.0, [&] { return c9(); });
    add(10, "steering report", 0.0, [&] { return c10(); });
    add(11, "no-signaling and third-angle independence", 0.0, [&] { return c11(); });
    const double total = std::chrono::duration<double>(Clock::now() - start).count();
    CriterionResult last{12, "full selftest wall clock", total < 60.0,
                         total < 60.0 ? "completed within 60 s" : "exceeded 60 s", total};
    summary_.results.push_back(last);
    summary_.total_seconds = total;
    return std::move(summary_);
  }

 private:
  void add(int id, std::string name, double budget, const std::function<Outcome()>& body) {
    CriterionResult r;
    r.id = id;
    r.name = std::move(name);
    const auto start = Clock::now();
    try {
      Outcome o = body();
      r.passed = o.passed;
      r.detail = std::move(o.detail);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("error: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (budget > 0.0 && r.seconds >= budget) {
      r.passed = false;
      r.detail += "; runtime budget of " + fix(budget) + " s exceeded";
    }
    summary_.results.push_back(std::move(r));
  }

  const TomographyContext& ctx() const {
    if (!ctx_) throw GridError(ctx_error_);
    return *ctx_;
  }

  DensityMatrix random_state(Basis b) { return random_density(4, rng_.seed(), b); }

  Outcome c1() {
    double completeness = 0.0;
    for (int s = 0; s < 100; ++s) {
      const EulerAngles a = rng_.angles(), b = rng_.angles(), c = rng_.angles();
      ComplexMatrix sum2(4), sumq(4);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) sum2 += dequantizer_2q({qubit_m(i), qubit_m(j), a, b});
      for (HalfInt m : projections(kThreeHalves)) sumq += dequantizer_qudit({m, c});
      completeness = std::max({completeness, (sum2 - ComplexMatrix::identity(4)).max_abs(),
                               (sumq - ComplexMatrix::identity(4)).max_abs()});
    }
    double normalization = 0.0;
    for (int s = 0; s < 20; ++s) {
      const DensityMatrix two = random_state(Basis::two_qubit);
      const DensityMatrix qudit = two.relabeled(Basis::qudit_3_2);
      for (int node = 0; node < 10; ++node) {
        const EulerAngles a = rng_.angles(), b = rng_.angles(), c = rng_.angles();
        double t2 = 0.0, tq = 0.0;
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) t2 += tomogram(two, {qubit_m(i), qubit_m(j), a, b});
        for (HalfInt m : projections(kThreeHalves)) tq += tomogram(qudit, {m, c});
        normalization = std::max({normalization, std::abs(t2 - 1.0), std::abs(tq - 1.0)});
      }
    }
    const bool ok = completeness <= 1e-12 && normalization <= 1e-12;
    return {ok, "completeness error " + sci(completeness) + ", normalization error " +
                    sci(normalization) + " (tol 1e-12)"};
  }

  Outcome c2() {
    const auto& c = ctx();
    double worst = 0.0;
    for (int s = 0; s < 100; ++s) {
      const DensityMatrix rho = random_state(Basis::two_qubit);
      const ComplexMatrix r = reconstruct_2q([&](const FramePoint2Q& x) { return tomogram(rho, x); },
                                             quantizer_2q, c.pair);
      worst = std::max(worst, (r - rho.matrix()).frobenius_norm());
    }
    return {worst <= 1e-8, "max Frobenius residual " + sci(worst) + " over 100 states (tol 1e-8)"};
  }

  Outcome c3() {
    const auto& c = ctx();
    std::vector<DensityMatrix> states;
    for (int s = 0; s < 100; ++s) states.push_back(random_state(Basis::qudit_3_2));

    double explicit_best = std::numeric_limits<double>::infinity();
    std::string per_reading;
    for (SignReading reading : {SignReading::exponential, SignReading::integer_shift}) {
      double worst = 0.0;
      for (const DensityMatrix& rho : states) {
        const ComplexMatrix r = reconstruct_qudit(
            [&](const FramePointQudit& y) { return tomogram(rho, y); },
            [&](const FramePointQudit& y) { return quantizer_qudit_explicit(y, reading); }, c.sphere);
        worst = std::max(worst, (r - rho.matrix()).frobenius_norm());
      }
      explicit_best = std::min(explicit_best, worst);
      per_reading += to_string(reading) + " " + sci(worst) + ", ";
    }
    const auto& cap = c.frame.capability();
    summary_.reports["qudit_capability"] = to_json(cap);
    if (explicit_best <= 1e-6) {
      return {true, "explicit quantizer residual " + sci(explicit_best) + " within 1e-6"};
    }
    double dual = 0.0;
    for (const DensityMatrix& rho : states) {
      const ComplexMatrix r = reconstruct_qudit(
          [&](const FramePointQudit& y) { return tomogram(rho, y); },
          [&](const FramePointQudit& y) { return c.frame.dual_quantizer(y); }, c.sphere);
      dual = std::max(dual, (r - rho.matrix()).frobenius_norm());
    }
    bool enumerated = !cap.explicit_b.empty();
    std::size_t failing = 0;
    for (const auto& d : cap.explicit_b) {
      enumerated = enumerated && !(d.reconstruction_failures.empty() && d.hermiticity_failures.empty());
      failing += d.reconstruction_failures.size();
    }
    const bool ok = dual <= 1e-8 && enumerated &&
                    cap.selected == QuditQuantizerSource::dual_frame;
    return {ok, "explicit residual (" + per_reading + "tol 1e-6) -> dual frame residual " +
                    sci(dual) + " (tol 1e-8); capability report lists " +
                    std::to_string(failing) + " failing explicit entries"};
  }

  Outcome c4() {
    const std::vector<double> ps{-1.0 / 3.0, 0.0, 0.5, 1.0};
    double closed = 0.0, at_zero = 0.0;
    for (double p : ps) {
      const DensityMatrix rho = werner(p, Basis::qudit_3_2);
      for (int s = 0; s < 20; ++s) {
        const double alpha = rng_.turn(), beta = rng_.half_turn();
        for (HalfInt m : projections(kThreeHalves)) {
          const double direct = tomogram(rho, {m, {alpha, beta, rng_.turn()}});
          closed = std::max(closed, std::abs(direct - werner_qudit_tomogram_closed(p, m, alpha, beta)));
        }
        for (HalfInt m : projections(kThreeHalves)) {
          const double expected = std::abs(m.twice) == 3 ? (1.0 + p) / 4.0 : (1.0 - p) / 4.0;
          at_zero = std::max(at_zero, std::abs(tomogram(rho, {m, {alpha, 0.0, 0.0}}) - expected));
        }
      }
    }
    return {closed <= 1e-10 && at_zero <= 1e-12,
            "closed-form deviation " + sci(closed) + " (tol 1e-10), beta=0 deviation " +
                sci(at_zero) + " (tol 1e-12)"};
  }

  Outcome c5() {
    const auto& c = ctx();
    const KernelMapper mapper(c.frame, c.sphere, c.pair);
    std::vector<DensityMatrix> states;
    for (double p : {-1.0 / 3.0, 0.0, 1.0 / 3.0, 1.0}) states.push_back(werner(p));
    while (states.size() < 50) states.push_back(random_state(Basis::two_qubit));

    double forward = 0.0, backward = 0.0, imag = 0.0;
    for (const DensityMatrix& two : states) {
      const DensityMatrix qudit = two.relabeled(Basis::qudit_3_2);
      const FramePoint2Q x{qubit_m(rng_.pick(2)), qubit_m(rng_.pick(2)), rng_.angles(), rng_.angles()};
      const MappedValue f =
          mapper.qudit_to_2q([&](const FramePointQudit& y) { return tomogram(qudit, y); }, x);
      forward = std::max(forward, std::abs(f.value - tomogram(two, x)));

      const FramePointQudit y{projections(kThreeHalves)[rng_.pick(4)], rng_.angles()};
      const MappedValue b =
          mapper.twoq_to_qudit([&](const FramePoint2Q& z) { return tomogram(two, z); }, y);
      backward = std::max(backward, std::abs(b.value - tomogram(qudit, y)));
      imag = std::max({imag, f.imaginary_residue, b.imaginary_residue});
    }
    return {forward <= 1e-8 && backward <= 1e-8 && imag <= 1e-10,
            "qudit->2q " + sci(forward) + ", 2q->qudit " + sci(backward) +
                " (tol 1e-8), imaginary residue " + sci(imag)};
  }

  Outcome c6() {
    const auto& c = ctx();
    const KernelDiscrepancyReport rep = compare_closed_kernel(c.frame, 100, rng_.seed());
    const json j = to_json(rep);
    summary_.reports["kernel_closed_form"] = j;
    const bool emitted = j.at("samples").get<int>() == 100 && j.contains("max_term_difference") &&
                         !j.at("worst_samples").empty();
    if (rep.agrees) return {true, "agreement " + sci(rep.max_abs_difference) + " (tol 1e-10)"};
    return {emitted, "no agreement (max |diff| " + sci(rep.max_abs_difference) +
                         "); term discrepancy report emitted: constant " +
                         sci(rep.max_term_difference[0]) + ", m1 " + sci(rep.max_term_difference[1]) +
                         ", m2 " + sci(rep.max_term_difference[2]) + ", m1m2 " +
                         sci(rep.max_term_difference[3])};
  }

  Outcome c7() {
    const auto& c = ctx();
    double worst = 0.0;
    for (int s = 0; s < 50; ++s) {
      const DensityMatrix rho = random_state(Basis::two_qubit);
      const Direction k1 = rng_.direction(), k2 = rng_.direction();
      worst = std::max(worst, correlation_forms(rho, k1, k2, c).max_pairwise_deviation());
    }
    return {worst <= 1e-8, "max pairwise deviation " + sci(worst) + " over 50 triples (tol 1e-8)"};
  }

  Outcome c8() {
    double ezz = 0.0, tensor = 0.0;
    for (double p : {-1.0 / 3.0, -0.1, 0.0, 0.2, 1.0 / 3.0, 0.4, 0.5, 0.8, 1.0}) {
      const DensityMatrix rho = werner(p);
      ezz = std::max(ezz, std::abs(correlation_direct(rho, Direction::z_axis(), Direction::z_axis()) - p));
      const CorrelationTensor t = correlation_tensor(rho);
      const double expected[3][3] = {{p, 0, 0}, {0, -p, 0}, {0, 0, p}};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) tensor = std::max(tensor, std::abs(t(i, j) - expected[i][j]));
    }
    return {ezz <= 1e-12 && tensor <= 1e-12,
            "E(z,z) deviation " + sci(ezz) + ", tensor deviation " + sci(tensor) + " (tol 1e-12)"};
  }

  Outcome c9() {
    double werner_dev = 0.0;
    for (double p : {0.2, 0.5, 1.0 / std::numbers::sqrt2, 1.0}) {
      const ChshSettings s = chsh_max_search(correlation_tensor(werner(p)));
      werner_dev = std::max(werner_dev, std::abs(s.value - 2.0 * std::numbers::sqrt2 * std::abs(p)));
    }
    double product_max = 0.0;
    for (int s = 0; s < 20; ++s) {
      const DensityMatrix a = random_density(2, rng_.seed());
      const DensityMatrix b = random_density(2, rng_.seed());
      const DensityMatrix prod =
          DensityMatrix::from_matrix(kron(a.matrix(), b.matrix()), Basis::two_qubit);
      product_max = std::max(product_max, chsh_max_search(correlation_tensor(prod)).value);
    }
    for (double p : {-1.0 / 3.0, 0.0, 1.0 / 3.0}) {
      product_max = std::max(product_max, chsh_max_search(correlation_tensor(werner(p))).value);
    }
    const DensityMatrix w1 = werner(1.0);
    const ChshSettings best = chsh_max_search(correlation_tensor(w1));
    const double direct = chsh_value(w1, best.a, best.b, best.c, best.d);
    const bool ok = werner_dev <= 1e-3 && product_max <= 2.0 + 1e-6 && direct > 2.0 &&
                    std::abs(direct - 2.0 * std::numbers::sqrt2) <= 1e-3;
    return {ok, "Werner |max - 2 sqrt2 |p|| " + sci(werner_dev) + " (tol 1e-3); separable max " +
                    fix(product_max) + " (bound 2); werner(1) CHSH " + fix(direct)};
  }

  Outcome c10() {
    const auto& c = ctx();
    double svd_dev = 0.0, search_dev = 0.0;
    bool readings = true, note = true;
    for (double p : {-1.0 / 3.0, -0.2, 0.0, 0.2, 1.0 / 3.0, 0.4, 0.5, 0.75, 1.0}) {
      const WernerReport r = werner_report(p, c);
      svd_dev = std::max(svd_dev, std::abs(r.steering.lhs - std::abs(p)));
      search_dev = std::max(search_dev, std::abs(r.steering.lhs_search - r.steering.lhs));
      const json j = to_json(r);
      readings = readings && j.contains("rhs_all_entries") && j.contains("rhs_diagonal");
      bool found = false;
      for (const std::string& n : r.notes) found = found || n.find("1/3 < p < 1/2") != std::string::npos;
      note = note && found;
      if (p == 0.4) summary_.reports["werner_0.4"] = j;
    }
    return {svd_dev <= 1e-10 && search_dev <= 1e-3 && readings && note,
            "lhs vs |p| " + sci(svd_dev) + " (tol 1e-10), grid search vs SVD " + sci(search_dev) +
                " (tol 1e-3), both sum readings and the steering-window note present"};
  }

  Outcome c11() {
    double signaling = 0.0, twist = 0.0;
    for (int s = 0; s < 20; ++s) {
      const DensityMatrix two = random_state(Basis::two_qubit);
      const DensityMatrix qudit = two.relabeled(Basis::qudit_3_2);
      const HalfInt m1 = qubit_m(rng_.pick(2));
      const EulerAngles n1 = rng_.angles();
      double lo = 1e300, hi = -1e300;
      for (int t = 0; t < 20; ++t) {
        const EulerAngles n2 = rng_.angles();
        const double marginal = tomogram(two, {m1, kHalf, n1, n2}) + tomogram(two, {m1, -kHalf, n1, n2});
        lo = std::min(lo, marginal);
        hi = std::max(hi, marginal);
      }
      signaling = std::max(signaling, hi - lo);

      FramePoint2Q x{qubit_m(rng_.pick(2)), qubit_m(rng_.pick(2)), rng_.angles(), rng_.angles()};
      FramePointQudit y{projections(kThreeHalves)[rng_.pick(4)], rng_.angles()};
      const double base2 = tomogram(two, x), baseq = tomogram(qudit, y);
      for (int t = 0; t < 10; ++t) {
        x.n1.twist = rng_.turn();
        x.n2.twist = rng_.turn();
        y.n.twist = rng_.turn();
        twist = std::max({twist, std::abs(tomogram(two, x) - base2), std::abs(tomogram(qudit, y) - baseq)});
      }
    }
    return {signaling <= 1e-12 && twist <= 1e-12,
            "marginal variation " + sci(signaling) + ", third-angle variation " + sci(twist) +
                " (tol 1e-12)"};
  }

  SelftestOptions opt_;
  Rng rng_;
  std::optional<TomographyContext> ctx_;
  std::string ctx_error_;
  SelftestSummary summary_;
};

}  // namespace

bool SelftestSummary::all_passed() const {
  for (const auto& r : results)
    if (!r.passed) return false;
  return !results.empty();
}

SelftestSummary run_selftest(const SelftestOptions& options) { return Runner(options).run(); }

std::string format_line(const CriterionResult& r) {
  char id[8];
  std::snprintf(id, sizeof id, "C%02d", r.id);
  return std::string(r.passed ? "[PASS] " : "[FAIL] ") + id + " " + r.name + ": " + r.detail;
}

}  // namespace spintomo
