#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <tuple>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "spintomo/context.hpp"
#include "spintomo/json_io.hpp"
#include "spintomo/kernel.hpp"
#include "spintomo/selftest.hpp"
#include "spintomo/steering.hpp"

namespace spintomo::cli {

namespace {

/// Raised for anything the user can fix: bad flags, bad input files, coarse grids.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CliConfig {
  std::string command;
  std::string state;
  std::string rep = "two_qubit";
  bool rep_given = false;
  int grid_azimuth = kMinAzimuthNodes;
  int grid_polar = kMinPolarNodes;
  std::string format = "json";
  std::string out_path;
  std::uint64_t seed = 42;
  bool seed_given = false;
  std::optional<double> tol;

  double m = 1.5, m1 = 0.5, m2 = 0.5;
  double alpha = 0, beta = 0, gamma = 0;
  double theta1 = 0, phi1 = 0, psi1 = 0;
  double theta2 = 0, phi2 = 0, psi2 = 0;
  bool full_grid = false;
  std::string direction = "qudit_to_2q";
  std::string k1 = "0,0,1", k2 = "0,0,1";
  bool coarse = false;
};

std::shared_ptr<spdlog::logger> make_logger() {
  auto logger = std::make_shared<spdlog::logger>("spintomo",
                                                 std::make_shared<spdlog::sinks::stderr_sink_st>());
  logger->set_pattern("[%l] %v");
  const char* env = std::getenv("SPINTOMO_LOG");
  const std::string level = env ? env : "error";
  if (level == "debug") logger->set_level(spdlog::level::debug);
  else if (level == "info") logger->set_level(spdlog::level::info);
  else logger->set_level(spdlog::level::err);
  return logger;
}

double parse_number(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("cannot parse " + what + " '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw UsageError("cannot parse " + what + " '" + s + "'");
  return v;
}

HalfInt to_half(double m, const std::string& flag) {
  const double twice = 2.0 * m;
  if (std::abs(twice - std::round(twice)) > 1e-12) throw UsageError(flag + " must be a half-integer");
  return {static_cast<int>(std::lround(twice))};
}

Direction parse_direction(const std::string& s, const std::string& flag) {
  std::vector<double> c;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) c.push_back(parse_number(part, flag));
  if (c.size() != 3) throw UsageError(flag + " expects three comma-separated components");
  try {
    return Direction::checked(c[0], c[1], c[2]);
  } catch (const DomainError& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

Basis rep_basis(const CliConfig& cfg) {
  return cfg.rep == "qudit" ? Basis::qudit_3_2 : Basis::two_qubit;
}

struct LoadedState {
  ComplexMatrix matrix;
  Basis basis;
  std::optional<double> werner_p;
};

/// Reads --state. Builtins: werner:<p>, random, maximally_mixed; anything else is a file.
LoadedState load_state(const CliConfig& cfg) {
  if (cfg.state.empty()) throw UsageError("--state is required for '" + cfg.command + "'");
  const Basis basis = rep_basis(cfg);
  if (cfg.state.rfind("werner:", 0) == 0) {
    const double p = parse_number(cfg.state.substr(7), "Werner parameter");
    return {werner_matrix(p), basis, p};
  }
  if (cfg.state == "random") return {random_density(4, cfg.seed).matrix(), basis, std::nullopt};
  if (cfg.state == "maximally_mixed") {
    return {ComplexMatrix::identity(4) * cplx(0.25), basis, std::nullopt};
  }
  std::ifstream in(cfg.state);
  if (!in) throw UsageError("cannot open state file '" + cfg.state + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("malformed JSON in '") + cfg.state + "': " + e.what());
  }
  const ParsedMatrix parsed = [&] {
    try {
      return matrix_from_json(doc);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("bad matrix document: ") + e.what());
    }
  }();
  if (cfg.rep_given && parsed.matrix.dim() == 4 && parsed.basis != basis) {
    throw UsageError("state basis " + to_string(parsed.basis) + " does not match --rep " + cfg.rep);
  }
  return {parsed.matrix, parsed.basis, std::nullopt};
}

/// A validated four-level state in the basis of the requested representation.
DensityMatrix require_state(const CliConfig& cfg) {
  const LoadedState s = load_state(cfg);
  if (s.matrix.dim() != 4) throw UsageError("this command needs a 4x4 state");
  try {
    return DensityMatrix::from_matrix(s.matrix, s.basis).relabeled(rep_basis(cfg));
  } catch (const DomainError& e) {
    throw UsageError(std::string("input is not a density matrix: ") + e.what());
  }
}

QuadratureGrid grid_for(const CliConfig& cfg, int spheres) {
  try {
    return make_grid(cfg.grid_azimuth, cfg.grid_polar, spheres);
  } catch (const GridError& e) {
    throw UsageError(e.what());
  }
}

TomographyContext context_for(const CliConfig& cfg) {
  try {
    return TomographyContext::make(cfg.grid_azimuth, cfg.grid_polar);
  } catch (const GridError& e) {
    throw UsageError(e.what());
  }
}

FramePoint2Q point_2q(const CliConfig& cfg) {
  FramePoint2Q p{to_half(cfg.m1, "--m1"), to_half(cfg.m2, "--m2"),
                 {cfg.phi1, cfg.theta1, cfg.psi1}, {cfg.phi2, cfg.theta2, cfg.psi2}};
  try {
    require_valid(p);
  } catch (const std::out_of_range&) {
    throw UsageError("--m1/--m2 must be +-0.5");
  }
  return p;
}

FramePointQudit point_qudit(const CliConfig& cfg) {
  FramePointQudit p{to_half(cfg.m, "--m"), {cfg.alpha, cfg.beta, cfg.gamma}};
  try {
    require_valid(p);
  } catch (const std::out_of_range&) {
    throw UsageError("--m must be one of +-0.5, +-1.5");
  }
  return p;
}

json table_json(const TomogramTable& t) {
  json rows = json::array();
  for (const TomogramRow& r : t.rows) {
    json proj = json::array(), angles = json::array();
    for (HalfInt m : r.projections) proj.push_back(m.value());
    for (const EulerAngles& a : r.angles) angles.push_back(to_json(a));
    rows.push_back({{"projections", proj}, {"angles", angles}, {"value", r.value}});
  }
  return {{"representation", to_string(t.representation)}, {"rows", std::move(rows)}};
}

struct Emitted {
  int status = kExitOk;
  json doc;
  std::string text;  // used instead of doc when non-empty
};

Emitted cmd_validate(const CliConfig& cfg) {
  const LoadedState s = load_state(cfg);
  const ValidationReport r = cfg.tol ? validate_density(s.matrix, *cfg.tol, *cfg.tol)
                                     : validate_density(s.matrix);
  json doc{{"basis", to_string(s.basis)}, {"dim", s.matrix.dim()}, {"report", to_json(r)}};
  return {r.ok() ? kExitOk : kExitCheckFailed, std::move(doc), {}};
}

Emitted cmd_tomogram(const CliConfig& cfg) {
  const DensityMatrix rho = require_state(cfg);
  const bool two = rho.basis() == Basis::two_qubit;
  TomogramTable table;
  table.representation = rho.basis();
  double node_sum = 0.0;
  if (cfg.full_grid) {
    table = tomogram_table(rho, grid_for(cfg, two ? 2 : 1));
  } else if (two) {
    const FramePoint2Q p = point_2q(cfg);
    table.rows.push_back({{p.m1, p.m2}, {p.n1, p.n2}, tomogram(rho, p)});
    for (HalfInt a : projections(kHalf))
      for (HalfInt b : projections(kHalf)) node_sum += tomogram(rho, {a, b, p.n1, p.n2});
  } else {
    const FramePointQudit p = point_qudit(cfg);
    table.rows.push_back({{p.m}, {p.n}, tomogram(rho, p)});
    for (HalfInt a : projections(kThreeHalves)) node_sum += tomogram(rho, {a, p.n});
  }
  if (cfg.format == "csv") {
    std::ostringstream os;
    write_csv(os, table);
    return {kExitOk, {}, os.str()};
  }
  json doc = table_json(table);
  if (!cfg.full_grid) doc["node_normalization"] = node_sum;
  return {kExitOk, std::move(doc), {}};
}

Emitted cmd_reconstruct(const CliConfig& cfg) {
  const DensityMatrix rho = require_state(cfg);
  const double tol = cfg.tol.value_or(1e-8);
  json doc;
  ComplexMatrix r(4);
  if (rho.basis() == Basis::two_qubit) {
    r = reconstruct_2q([&](const FramePoint2Q& x) { return tomogram(rho, x); }, quantizer_2q,
                       grid_for(cfg, 2));
    doc["quantizer"] = "two_qubit_product";
  } else {
    const TomographyContext ctx = context_for(cfg);
    r = reconstruct_qudit([&](const FramePointQudit& y) { return tomogram(rho, y); },
                          [&](const FramePointQudit& y) { return ctx.frame.quantizer(y); }, ctx.sphere);
    doc["quantizer"] = to_string(ctx.frame.capability().selected);
    doc["capability"] = to_json(ctx.frame.capability());
  }
  const double residual = (r - rho.matrix()).frobenius_norm();
  doc["matrix"] = matrix_to_json(r, rho.basis());
  doc["residual"] = residual;
  doc["tolerance"] = tol;
  return {residual <= tol ? kExitOk : kExitCheckFailed, std::move(doc), {}};
}

Emitted cmd_map(const CliConfig& cfg) {
  if (cfg.direction != "qudit_to_2q" && cfg.direction != "2q_to_qudit") {
    throw UsageError("--direction must be qudit_to_2q or 2q_to_qudit");
  }
  const DensityMatrix base = require_state(cfg);
  const DensityMatrix two = base.relabeled(Basis::two_qubit);
  const DensityMatrix qudit = base.relabeled(Basis::qudit_3_2);
  const TomographyContext ctx = context_for(cfg);
  const KernelMapper mapper(ctx.frame, ctx.sphere, ctx.pair);
  const double tol = cfg.tol.value_or(1e-8);
  const FramePoint2Q x = point_2q(cfg);
  const FramePointQudit y = point_qudit(cfg);
  // The round trip evaluates the inner tomogram at the same grid nodes once per
  // outer node, so both tomograms are memoised on their arguments.
  std::map<std::tuple<int, double, double, double>, double> w_cache;
  std::map<std::tuple<int, int, double, double, double, double, double, double>, double> omega_cache;
  const auto w = [&](const FramePointQudit& q) {
    const auto key = std::make_tuple(q.m.twice, q.n.azimuth, q.n.polar, q.n.twist);
    const auto it = w_cache.find(key);
    return it != w_cache.end() ? it->second : (w_cache[key] = tomogram(qudit, q));
  };
  const auto omega = [&](const FramePoint2Q& q) {
    const auto key = std::make_tuple(q.m1.twice, q.m2.twice, q.n1.azimuth, q.n1.polar, q.n1.twist,
                                     q.n2.azimuth, q.n2.polar, q.n2.twist);
    const auto it = omega_cache.find(key);
    return it != omega_cache.end() ? it->second : (omega_cache[key] = tomogram(two, q));
  };

  MappedValue mapped;
  double direct = 0.0, round_trip = 0.0;
  json target;
  if (cfg.direction == "qudit_to_2q") {
    mapped = mapper.qudit_to_2q(w, x);
    direct = tomogram(two, x);
    const auto forward = [&](const FramePoint2Q& q) { return mapper.qudit_to_2q(w, q).value; };
    round_trip = std::abs(mapper.twoq_to_qudit(forward, y).value - tomogram(qudit, y));
    target = {{"m1", x.m1.value()}, {"m2", x.m2.value()}, {"n1", to_json(x.n1)}, {"n2", to_json(x.n2)}};
  } else {
    mapped = mapper.twoq_to_qudit(omega, y);
    direct = tomogram(qudit, y);
    const auto back = [&](const FramePointQudit& q) { return mapper.twoq_to_qudit(omega, q).value; };
    round_trip = std::abs(mapper.qudit_to_2q(back, x).value - tomogram(two, x));
    target = {{"m", y.m.value()}, {"n", to_json(y.n)}};
  }
  const double residual = std::abs(mapped.value - direct);
  json doc{{"direction", cfg.direction},
           {"target", std::move(target)},
           {"value", mapped.value},
           {"direct", direct},
           {"residual", residual},
           {"imaginary_residue", mapped.imaginary_residue},
           {"round_trip_residual", round_trip},
           {"tolerance", tol}};
  const bool ok = residual <= tol && round_trip <= tol;
  return {ok ? kExitOk : kExitCheckFailed, std::move(doc), {}};
}

Emitted cmd_correlation(const CliConfig& cfg) {
  const Direction k1 = parse_direction(cfg.k1, "--k1");
  const Direction k2 = parse_direction(cfg.k2, "--k2");
  const DensityMatrix rho = require_state(cfg).relabeled(Basis::two_qubit);
  const TomographyContext ctx = context_for(cfg);
  const CorrelationForms f = correlation_forms(rho, k1, k2, ctx);
  json doc{{"k1", to_json(k1)},
           {"k2", to_json(k2)},
           {"forms", to_json(f)},
           {"tensor", to_json(correlation_tensor(rho))}};
  return {kExitOk, std::move(doc), {}};
}

Emitted cmd_steering(const CliConfig& cfg) {
  const Direction k1 = parse_direction(cfg.k1, "--k1");
  const Direction k2 = parse_direction(cfg.k2, "--k2");
  const LoadedState loaded = load_state(cfg);
  if (loaded.werner_p) {
    if (*loaded.werner_p < -1.0 / 3.0 || *loaded.werner_p > 1.0) {
      throw UsageError("Werner parameter must lie in [-1/3, 1]");
    }
    const TomographyContext ctx = context_for(cfg);
    return {kExitOk, to_json(werner_report(*loaded.werner_p, ctx, k1, k2)), {}};
  }
  const DensityMatrix rho = require_state(cfg).relabeled(Basis::two_qubit);
  json doc = to_json(steering_check(rho));
  doc["e_k1_k2"] = correlation_direct(rho, k1, k2);
  doc["k1"] = to_json(k1);
  doc["k2"] = to_json(k2);
  doc["ppt_min_eigenvalue"] = partial_transpose_min_eigenvalue(rho.matrix());
  return {kExitOk, std::move(doc), {}};
}

Emitted cmd_selftest(const CliConfig& cfg, spdlog::logger& log) {
  SelftestOptions opt;
  opt.n_azimuth = cfg.grid_azimuth;
  opt.n_polar = cfg.grid_polar;
  opt.force_coarse = cfg.coarse;
  if (cfg.seed_given) opt.seed = cfg.seed;
  const SelftestSummary s = run_selftest(opt);
  std::ostringstream text;
  json results = json::array();
  for (const CriterionResult& r : s.results) {
    text << format_line(r) << '\n';
    log.info("C{:02d} took {:.3f} s", r.id, r.seconds);
    results.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
  }
  const bool ok = s.all_passed();
  text << (ok ? "all criteria passed\n" : "some criteria failed\n");
  Emitted e{ok ? kExitOk : kExitCheckFailed, {}, text.str()};
  if (cfg.format == "json") {
    e.doc = {{"passed", ok}, {"criteria", std::move(results)}, {"reports", s.reports}};
  }
  return e;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto log = make_logger();
  CliConfig cfg;
  CLI::App app{"Spin tomography for two qubits and a spin-3/2 qudit", "spintomo"};
  app.add_option("command", cfg.command, "validate|tomogram|reconstruct|map|correlation|steering|selftest")
      ->required()
      ->check(CLI::IsMember(
          {"validate", "tomogram", "reconstruct", "map", "correlation", "steering", "selftest"}));
  app.add_option("--state", cfg.state, "state file, werner:<p>, random or maximally_mixed");
  auto* rep = app.add_option("--rep", cfg.rep, "representation")
                  ->check(CLI::IsMember({"two_qubit", "qudit"}));
  app.add_option("--grid-azimuth", cfg.grid_azimuth, "azimuth nodes per sphere (>= 8)");
  app.add_option("--grid-polar", cfg.grid_polar, "polar nodes per sphere (>= 8)");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", cfg.out_path, "output file (default stdout)");
  auto* seed = app.add_option("--seed", cfg.seed, "seed for random states and the selftest");
  double tol = 0;
  auto* tol_opt = app.add_option("--tol", tol, "tolerance override");
  app.add_option("--m", cfg.m, "qudit projection");
  app.add_option("--m1", cfg.m1, "first qubit projection");
  app.add_option("--m2", cfg.m2, "second qubit projection");
  app.add_option("--alpha", cfg.alpha);
  app.add_option("--beta", cfg.beta);
  app.add_option("--gamma", cfg.gamma);
  app.add_option("--theta1", cfg.theta1);
  app.add_option("--phi1", cfg.phi1);
  app.add_option("--psi1", cfg.psi1);
  app.add_option("--theta2", cfg.theta2);
  app.add_option("--phi2", cfg.phi2);
  app.add_option("--psi2", cfg.psi2);
  app.add_flag("--full-grid", cfg.full_grid, "tomogram on every grid node");
  app.add_option("--direction", cfg.direction, "qudit_to_2q or 2q_to_qudit");
  app.add_option("--k1", cfg.k1, "first direction x,y,z");
  app.add_option("--k2", cfg.k2, "second direction x,y,z");
  app.add_flag("--coarse", cfg.coarse, "selftest on a 4x4 grid (criteria that need exactness fail)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  cfg.rep_given = rep->count() > 0;
  cfg.seed_given = seed->count() > 0;
  if (tol_opt->count() > 0) cfg.tol = tol;

  Emitted result;
  try {
    if (cfg.grid_azimuth < kMinAzimuthNodes || cfg.grid_polar < kMinPolarNodes) {
      throw UsageError("grid below the exactness minimum of 8 azimuth x 8 polar nodes");
    }
    if (cfg.format == "csv" && cfg.command != "tomogram") {
      throw UsageError("csv output is only available for 'tomogram'");
    }
    log->info("{} on a {}x{} grid", cfg.command, cfg.grid_azimuth, cfg.grid_polar);
    if (cfg.command == "validate") result = cmd_validate(cfg);
    else if (cfg.command == "tomogram") result = cmd_tomogram(cfg);
    else if (cfg.command == "reconstruct") result = cmd_reconstruct(cfg);
    else if (cfg.command == "map") result = cmd_map(cfg);
    else if (cfg.command == "correlation") result = cmd_correlation(cfg);
    else if (cfg.command == "steering") result = cmd_steering(cfg);
    else result = cmd_selftest(cfg, *log);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    // Library precondition failures (domain, dimension, grid) are input problems too.
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::string body;
  if (cfg.command == "selftest") {
    out << result.text;
    if (!result.doc.is_null()) body = result.doc.dump(2) + "\n";
    if (cfg.out_path.empty()) return result.status;
  } else {
    body = result.text.empty() ? result.doc.dump(2) + "\n" : result.text;
  }
  if (cfg.out_path.empty()) {
    out << body;
  } else {
    std::ofstream file(cfg.out_path);
    if (!file) {
      err << "error: cannot write '" << cfg.out_path << "'\n";
      return kExitUsage;
    }
    file << body;
  }
  return result.status;
}

}  // namespace spintomo::cli
