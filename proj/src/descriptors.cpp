#include "slantmap/descriptors.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "slantmap/errors.hpp"
#include "slantmap/expression.hpp"
#include "slantmap/fixtures.hpp"

namespace slantmap {

namespace {

[[noreturn]] void bad(const std::string& what) { throw GeometryError(ErrorKind::InvalidInput, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

void check_version(const Json& j) {
  if (j.contains("schema_version") && j.at("schema_version") != kSchemaVersion)
    bad("unsupported schema_version " + j.at("schema_version").dump());
}

Vector vector_from(const Json& j) {
  if (!j.is_array()) bad("expected an array of numbers");
  Vector v(j.size());
  for (size_t i = 0; i < j.size(); ++i) v[i] = j[i].get<double>();
  return v;
}

Matrix matrix_from(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) bad("expected a nested array");
  Matrix m(j.size(), j[0].size());
  for (size_t i = 0; i < j.size(); ++i) {
    if (j[i].size() != j[0].size()) bad("ragged matrix");
    for (size_t k = 0; k < j[i].size(); ++k) m(i, k) = j[i][k].get<double>();
  }
  return m;
}

std::vector<std::string> variables_from(const Json& j, int dim) {
  if (!j.contains("variables")) return default_variables(dim);
  auto v = j.at("variables").get<std::vector<std::string>>();
  if (static_cast<int>(v.size()) != dim) bad("variables list does not match the dimension");
  return v;
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw GeometryError(ErrorKind::InvalidInput, e.what());
  }
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GeometryError(ErrorKind::IoFailure, "cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw GeometryError(ErrorKind::InvalidInput, path + ": " + e.what());
  }
}

MetricField metric_from_json(const Json& j, int dim) {
  return guarded([&] {
    const std::string kind = field(j, "kind").get<std::string>();
    if (kind == "constant") {
      Matrix g;
      if (j.contains("diag")) {
        g = vector_from(j.at("diag")).asDiagonal();
      } else {
        g = matrix_from(field(j, "matrix"));
      }
      if (g.rows() != dim || g.cols() != dim) bad("metric size does not match dim");
      Metric check(g);
      return constant_metric_field(g);
    }
    if (kind == "custom-expression") {
      const Json& comps = field(j, "components");
      const auto vars = variables_from(j, dim);
      if (!comps.is_array() || static_cast<int>(comps.size()) != dim) bad("components must be dim x dim");
      std::vector<Expression> exprs;
      for (const Json& row : comps) {
        if (!row.is_array() || static_cast<int>(row.size()) != dim) bad("components must be dim x dim");
        for (const Json& e : row) exprs.emplace_back(e.is_string() ? e.get<std::string>() : e.dump(), vars);
      }
      MetricField f;
      f.dim = dim;
      f.components = [exprs, dim](const Point& p) {
        Matrix g(dim, dim);
        for (int a = 0; a < dim; ++a)
          for (int b = 0; b < dim; ++b) g(a, b) = exprs[static_cast<size_t>(a) * dim + b](p);
        return g;
      };
      return f;
    }
    bad("unknown metric kind '" + kind + "'");
  });
}

LoadedStructure structure_from_json(const Json& j) {
  return guarded([&] {
    check_version(j);
    const Json& metric = field(j, "metric");
    LoadedStructure out;
    out.metric_kind = field(metric, "kind").get<std::string>();
    if (out.metric_kind == "warped") {
      const int m = field(metric, "m").get<int>();
      if (m < 1) bad("warped model needs m >= 1");
      out.structure = build_warped_kenmotsu(m, metric.value("analytic", true));
      out.c = -1.0;
      if (j.contains("dim") && j.at("dim").get<int>() != 2 * m + 1) bad("dim does not match 2m+1");
      if (j.contains("label")) out.structure.label = j.at("label").get<std::string>();
      return out;
    }
    const int n = field(j, "dim").get<int>();
    if (n < 1) bad("dim must be positive");
    MetricField g = metric_from_json(metric, n);
    const Json& psi = field(j, "psi");
    const auto table = field(psi, "table").get<std::vector<int>>();
    const auto scale = psi.value("scale", std::vector<double>{});
    if (static_cast<int>(table.size()) != n) bad("psi table does not match dim");
    for (int t : table)
      if (std::abs(t) > n) bad("psi table entry out of range");
    const Matrix psi_m = psi_from_table(table, scale);
    const int xi = field(j, "xi_index").get<int>();
    const int eta = j.value("eta_index", xi);
    if (xi < 0 || xi >= n) bad("xi_index out of range");
    if (eta != xi) bad("eta_index must equal xi_index (eta is the metric dual of xi)");
    AlmostContactStructure s;
    s.dim = n;
    s.g = g;
    s.psi = [psi_m](const Point&) { return psi_m; };
    s.xi = [g, xi, n](const Point& p) { return Vector(Vector::Unit(n, xi) / std::sqrt(g.components(p)(xi, xi))); };
    s.eta = [g, xi, n](const Point& p) {
      const Matrix gm = g.components(p);
      return Vector(gm * Vector::Unit(n, xi) / std::sqrt(gm(xi, xi)));
    };
    s.label = j.value("label", std::string("custom"));
    out.structure = s;
    if (j.contains("c")) out.c = j.at("c").get<double>();
    return out;
  });
}

LoadedMap map_from_json(const Json& j, const std::string& base_dir) {
  return guarded([&] {
    check_version(j);
    const int n = field(j, "source_dim").get<int>();
    const Json& tj = field(j, "target");
    const LoadedStructure target =
        structure_from_json(tj.is_string() ? read_json_file((std::filesystem::path(base_dir) / tj.get<std::string>()).string())
                                           : tj);
    const int m = target.structure.dim;
    const Vector base = vector_from(field(j, "base"));
    if (base.size() != n) bad("base point does not match source_dim");
    const Json& mj = field(j, "map");
    const std::string kind = field(mj, "kind").get<std::string>();
    const std::string label = j.value("label", std::string("map"));
    LoadedMap out;
    out.c = target.c;
    if (kind == "linear") {
      const Matrix a = matrix_from(field(mj, "matrix"));
      if (a.rows() != m || a.cols() != n) bad("linear map matrix must be target_dim x source_dim");
      const Vector q0 = mj.contains("offset") ? vector_from(mj.at("offset")) : Vector(Vector::Zero(m));
      if (q0.size() != m) bad("offset does not match target dim");
      out.instance = pulled_back_linear_instance(target.structure, q0, a, base, label);
      if (j.contains("source_metric")) out.instance.source = metric_from_json(j.at("source_metric"), n);
    } else if (kind == "expressions") {
      const auto vars = variables_from(mj, n);
      std::vector<Expression> comps;
      for (const Json& e : field(mj, "components")) comps.emplace_back(e.get<std::string>(), vars);
      if (static_cast<int>(comps.size()) != m) bad("map needs one expression per target coordinate");
      RiemannianMapInstance inst;
      inst.source = metric_from_json(field(j, "source_metric"), n);
      inst.target = target.structure;
      inst.map = [comps, m](const Point& x) {
        Point y(m);
        for (int k = 0; k < m; ++k) y[k] = comps[k](x);
        return y;
      };
      inst.base = base;
      inst.label = label;
      out.instance = inst;
    } else {
      bad("unknown map kind '" + kind + "'");
    }
    if (j.contains("horizontal_hint")) {
      const Matrix rows = matrix_from(j.at("horizontal_hint"));
      if (rows.cols() != n) bad("horizontal_hint vectors must have source_dim entries");
      out.instance.horizontal_hint = Matrix(rows.transpose());
    }
    return out;
  });
}

Json zeta_to_json(const SffTensor& zeta) {
  Json values = Json::array();
  for (const Matrix& z : zeta.zeta) {
    Json a = Json::array();
    for (int i = 0; i < zeta.r; ++i) {
      Json row = Json::array();
      for (int k = 0; k < zeta.r; ++k) row.push_back(z(i, k));
      a.push_back(row);
    }
    values.push_back(a);
  }
  return Json{{"r", zeta.r}, {"m", zeta.r + zeta.normal_dim()}, {"values", values}};
}

SffTensor zeta_from_json(const Json& j) {
  return guarded([&] {
    const int r = field(j, "r").get<int>();
    const int m = field(j, "m").get<int>();
    const Json& values = field(j, "values");
    if (r < 1 || m <= r) bad("zeta needs 1 <= r < m");
    if (static_cast<int>(values.size()) != m - r) bad("zeta values must have m - r components");
    SffTensor z(r, m - r);
    for (int a = 0; a < m - r; ++a) {
      const Matrix za = matrix_from(values[a]);
      if (za.rows() != r || za.cols() != r) bad("zeta component is not r x r");
      if ((za - za.transpose()).cwiseAbs().maxCoeff() > kDefaultTolerances.sff) bad("zeta component is not symmetric");
      z.zeta[a] = za;
    }
    return z;
  });
}

CurvatureInvariants InequalityInput::invariants() const {
  if (curvature) return horizontal_invariants(*curvature, &zeta);
  return horizontal_invariants(assemble_horizontal_curvature(c, data, zeta), &zeta);
}

InequalityInput inequality_input_from_map(const LoadedMap& map) {
  if (!map.c)
    throw GeometryError(ErrorKind::PreconditionUnverified, "target is not declared a Kenmotsu space form (no 'c')");
  const RiemannianMapInstance& inst = map.instance;
  const MapFrames frames = build_frames(inst);
  const TangentialNormalSplit split = pq_decompose(inst, frames);
  const SlantProfile profile = slant_spectrum(split, frames);
  const CanonicalFrames canon = canonicalize(frames, split, profile);
  InequalityInput in;
  in.label = inst.label;
  in.c = *map.c;
  in.data = canon.data;
  in.zeta = second_fundamental_form(inst, canon.frames);
  in.curvature = horizontal_curvature_from_source(inst, canon.frames);
  return in;
}

InequalityInput inequality_input_from_json(const Json& j, const std::string& base_dir) {
  return guarded([&] {
    check_version(j);
    if (!j.contains("zeta")) return inequality_input_from_map(map_from_json(j, base_dir));
    const Json& p = field(j, "profile");
    InequalityInput in;
    in.label = j.value("label", std::string("synthetic"));
    in.c = field(j, "c").get<double>();
    in.data = canonical_bislant_model(field(p, "r1").get<int>(), field(p, "r2").get<int>(), p.value("theta1", 0.0),
                                      field(p, "theta2").get<double>(), field(p, "xi_in_range").get<bool>());
    in.zeta = zeta_from_json(j.at("zeta"));
    if (in.zeta.r != in.data.r) bad("zeta rank differs from the profile rank");
    return in;
  });
}

}  // namespace slantmap
