#pragma once

#include <json.hpp>

#include "spintomo/kernel.hpp"
#include "spintomo/matcore.hpp"
#include "spintomo/qudit_frame.hpp"
#include "spintomo/steering.hpp"

namespace spintomo {

using json = nlohmann::json;

/// {"dim": n, "re": [[...]], "im": [[...]], "basis": "two_qubit" | "qudit_3_2" | "qubit"}
json matrix_to_json(const ComplexMatrix& m, Basis basis);

struct ParsedMatrix {
  ComplexMatrix matrix;
  Basis basis;
};

/// Throws std::invalid_argument (or DimensionError) on malformed documents.
ParsedMatrix matrix_from_json(const json& j);

json to_json(const ValidationReport& r);
json to_json(const Direction& k);
json to_json(const CorrelationTensor& t);
json to_json(const SteeringReport& r);
json to_json(const CorrelationForms& f);
json to_json(const WernerReport& r);
json to_json(const QuditCapabilityReport& r);
json to_json(const KernelDiscrepancyReport& r);
json to_json(const EulerAngles& a);

}  // namespace spintomo
