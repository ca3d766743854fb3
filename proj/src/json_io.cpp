#include "spintomo/json_io.hpp"

#include <cmath>

namespace spintomo {

namespace {

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json entries_json(const std::vector<EntryDefect>& v) {
  json out = json::array();
  for (const EntryDefect& e : v) out.push_back({{"row", e.row}, {"col", e.col}, {"defect", e.defect}});
  return out;
}

json terms_json(const KernelTerms& t) {
  return {{"constant", complex_json(t.constant)},
          {"m1", complex_json(t.linear_m1)},
          {"m2", complex_json(t.linear_m2)},
          {"m1m2", complex_json(t.bilinear)},
          {"total", complex_json(t.total())}};
}

std::vector<std::vector<double>> read_rows(const json& j, const char* key, int dim) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw std::invalid_argument(std::string("matrix JSON needs an array '") + key + "'");
  }
  const json& rows = j.at(key);
  if (static_cast<int>(rows.size()) != dim) {
    throw std::invalid_argument(std::string("'") + key + "' must have " + std::to_string(dim) + " rows");
  }
  std::vector<std::vector<double>> out;
  for (const json& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw std::invalid_argument(std::string("each row of '") + key + "' must have " +
                                  std::to_string(dim) + " numbers");
    }
    std::vector<double> r;
    for (const json& v : row) {
      if (!v.is_number()) throw std::invalid_argument("matrix entries must be numbers");
      r.push_back(v.get<double>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m, Basis basis) {
  json re = json::array(), im = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    json rr = json::array(), ri = json::array();
    for (int j = 0; j < m.dim(); ++j) {
      rr.push_back(m(i, j).real());
      ri.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return {{"dim", m.dim()}, {"re", std::move(re)}, {"im", std::move(im)}, {"basis", to_string(basis)}};
}

ParsedMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("matrix JSON must be an object");
  if (!j.contains("dim") || !j.at("dim").is_number_integer()) {
    throw std::invalid_argument("matrix JSON needs an integer 'dim'");
  }
  const int dim = j.at("dim").get<int>();
  if (dim != 2 && dim != 4) throw DimensionError("dim must be 2 or 4, got " + std::to_string(dim));
  const auto re = read_rows(j, "re", dim);
  const auto im = read_rows(j, "im", dim);
  ComplexMatrix m(dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) m(r, c) = cplx(re[r][c], im[r][c]);
  Basis basis = dim == 2 ? Basis::qubit : Basis::two_qubit;
  if (j.contains("basis")) {
    if (!j.at("basis").is_string()) throw std::invalid_argument("'basis' must be a string");
    basis = basis_from_string(j.at("basis").get<std::string>());
  }
  if (basis_dim(basis) != dim) throw DimensionError("basis does not match dim");
  return {std::move(m), basis};
}

json to_json(const ValidationReport& r) {
  return {{"hermiticity_defect", r.hermiticity_defect},
          {"trace_defect", r.trace_defect},
          {"min_eigenvalue", r.min_eigenvalue},
          {"hermitian", r.hermitian},
          {"unit_trace", r.unit_trace},
          {"positive_semidefinite", r.positive},
          {"valid", r.ok()}};
}

json to_json(const Direction& k) { return json::array({k.x(), k.y(), k.z()}); }

json to_json(const EulerAngles& a) {
  return {{"azimuth", a.azimuth}, {"polar", a.polar}, {"twist", a.twist}};
}

json to_json(const CorrelationTensor& t) {
  json out = json::array();
  for (const auto& row : t.t) out.push_back(json::array({row[0], row[1], row[2]}));
  return out;
}

json to_json(const SteeringReport& r) {
  return {{"tensor", to_json(r.tensor)},
          {"lhs", r.lhs},
          {"lhs_grid_search", r.lhs_search},
          {"rhs_all_entries", r.rhs_all_entries},
          {"rhs_diagonal", r.rhs_diagonal},
          {"inequality_holds", r.inequality_holds},
          {"chsh_max", r.chsh_max},
          {"chsh_max_grid_search", r.chsh_max_search},
          {"bell_violated", r.bell_classical_violated},
          {"max_directions", {{"k1", to_json(r.k1)}, {"k2", to_json(r.k2)}}}};
}

json to_json(const CorrelationForms& f) {
  return {{"direct", f.direct},
          {"tomo_2q_a", f.tomo_2q_a},
          {"tomo_2q_b", f.tomo_2q_b},
          {"tomo_qudit", f.tomo_qudit},
          {"max_pairwise_deviation", f.max_pairwise_deviation()}};
}

json to_json(const WernerReport& r) {
  json out = to_json(r.steering);
  out["p"] = r.p;
  out["e_zz"] = r.e_zz;
  out["e_zz_only"] = r.e_zz_only;
  out["correlation_directions"] = {{"k1", to_json(r.k1)}, {"k2", to_json(r.k2)}};
  out["correlation_forms"] = to_json(r.forms);
  out["ppt_min_eigenvalue"] = r.ppt_min_eigenvalue;
  out["entangled"] = r.entangled;
  out["qudit_closed_form_max_deviation"] = r.qudit_closed_form_max_deviation;
  out["two_qubit_closed_form_max_deviation"] = r.two_qubit_closed_form_max_deviation;
  out["kernel_mapping_residual"] = r.kernel_mapping_residual;
  out["notes"] = r.notes;
  return out;
}

json to_json(const QuditCapabilityReport& r) {
  json readings = json::array();
  for (const auto& d : r.explicit_b) {
    readings.push_back({{"sign_reading", to_string(d.reading)},
                       {"max_state_residual", d.max_state_residual},
                       {"reconstruction_failures", entries_json(d.reconstruction_failures)},
                       {"hermiticity_failures", entries_json(d.hermiticity_failures)},
                       {"max_trace_defect", d.max_trace_defect}});
  }
  json out = {{"selected", to_string(r.selected)},
              {"acceptance_threshold", r.acceptance_threshold},
              {"explicit_b", std::move(readings)},
              {"dual_frame_residual", r.dual_frame_residual},
              {"frame_condition_number", r.frame_condition_number},
              {"probe_states", r.probe_states},
              {"vec_convention", "column_stacking"}};
  out["selected_sign_reading"] =
      r.selected_reading ? json(to_string(*r.selected_reading)) : json(nullptr);
  return out;
}

json to_json(const KernelDiscrepancyReport& r) {
  json worst = json::array();
  for (const auto& w : r.worst) {
    worst.push_back({{"m", w.point.m.value()},
                     {"m1", w.point.m1.value()},
                     {"m2", w.point.m2.value()},
                     {"qudit_angles", to_json(w.point.qudit)},
                     {"qubit1_angles", to_json(w.point.qubit1)},
                     {"qubit2_angles", to_json(w.point.qubit2)},
                     {"trace", terms_json(w.trace)},
                     {"closed", terms_json(w.closed)}});
  }
  return {{"sign_reading", to_string(r.reading)},
          {"trace_quantizer", to_string(r.quantizer)},
          {"samples", r.samples},
          {"tolerance", r.tolerance},
          {"agrees", r.agrees},
          {"max_abs_difference", r.max_abs_difference},
          {"max_term_difference",
           {{"constant", r.max_term_difference[0]},
            {"m1", r.max_term_difference[1]},
            {"m2", r.max_term_difference[2]},
            {"m1m2", r.max_term_difference[3]}}},
          {"max_closed_imaginary", r.max_closed_imaginary},
          {"max_trace_imaginary", r.max_trace_imaginary},
          {"worst_samples", std::move(worst)}};
}

}  // namespace spintomo
