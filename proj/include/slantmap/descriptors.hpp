#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "slantmap/curvature_inequalities.hpp"

namespace slantmap {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Parses a file; IoFailure when unreadable, InvalidInput when malformed.
Json read_json_file(const std::string& path);

/// {"kind": "constant", "diag": [...]} or {"kind": "constant", "matrix": [[...]]},
/// {"kind": "custom-expression", "components": [["..."]], "variables": [...]}.
MetricField metric_from_json(const Json& j, int dim);

struct LoadedStructure {
  AlmostContactStructure structure;
  std::string metric_kind;
  std::optional<double> c;  // space form parameter when known
};

/// {"schema_version": 1, "dim": n, "metric": {...}, "psi": {"table": [...], "scale": [...]},
///  "xi_index": i, "eta_index": i, "c": optional, "label": optional}.
/// Metric kind "warped" takes {"m": m, "analytic": bool} and fixes psi, xi and c = -1.
LoadedStructure structure_from_json(const Json& j);

struct LoadedMap {
  RiemannianMapInstance instance;
  std::optional<double> c;
};

/// {"schema_version": 1, "source_dim": n, "target": {...} | "path", "map": {...}, "base": [...]}
/// with map kind "linear" ({"matrix", "offset"}) or "expressions" ({"components", "variables"}).
/// Linear maps default to the pulled-back source metric; expression maps need "source_metric".
LoadedMap map_from_json(const Json& j, const std::string& base_dir = ".");

/// {"r": r, "m": r + normal dim, "values": [alpha][i][j]}
Json zeta_to_json(const SffTensor& zeta);
SffTensor zeta_from_json(const Json& j);

struct InequalityInput {
  std::string label;
  double c = 0.0;
  BiSlantData data;
  SffTensor zeta;
  std::optional<HorizontalCurvature> curvature;  // from the source when a map is given
  CurvatureInvariants invariants() const;
};

/// Either {"c", "profile": {"r1", "r2", "theta1", "theta2", "xi_in_range"}, "zeta": {...}}
/// or a map descriptor whose target is a space form.
InequalityInput inequality_input_from_json(const Json& j, const std::string& base_dir = ".");
InequalityInput inequality_input_from_map(const LoadedMap& map);

}  // namespace slantmap
