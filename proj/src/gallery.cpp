#include "slantmap/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <optional>

#include "slantmap/errors.hpp"

namespace slantmap {

namespace {

constexpr double kFrameTol = 1e-9;
constexpr double kIdentityTol = 1e-9;
constexpr double kEquationTol = 1e-5;
constexpr double kAngleTol = 1e-9;

CheckRecord error_check(std::string id, std::string subject, const GeometryError& e) {
  CheckRecord r;
  r.id = std::move(id);
  r.kind = "error";
  r.subject = std::move(subject);
  r.value = std::numeric_limits<double>::quiet_NaN();
  r.message = e.what();
  return r;
}

CheckRecord info_check(std::string id, std::string subject, double value, std::string message) {
  CheckRecord r;
  r.id = std::move(id);
  r.kind = "info";
  r.subject = std::move(subject);
  r.value = value;
  r.pass = true;
  r.informational = true;
  r.message = std::move(message);
  return r;
}

double psi_compatibility_defect(const RiemannianMapInstance& inst, const Point& q) {
  const PointStructure s = structure_at(inst.target, q);
  const Matrix& g = s.g.matrix();
  const Matrix lhs = s.psi.transpose() * g * s.psi;
  const Matrix rhs = g - s.eta * s.eta.transpose();
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

std::optional<double> fixture_space_form(const RiemannianMapInstance& inst) {
  if (inst.target.label.rfind("warped-kenmotsu", 0) == 0) return -1.0;
  return std::nullopt;
}

}  // namespace

void append_structure_checks(RunReport& report, const AlmostContactStructure& s, bool analytic, double tol) {
  const std::string subject = s.label + (analytic ? "/analytic" : "/finite-difference");
  const double t = tol > 0.0 ? tol : (analytic ? 1e-10 : 1e-5);
  const auto probes = default_probes(s.dim);
  for (const StructureReport& sr : {check_almost_contact(s, probes, t), check_kenmotsu(s, probes, t)})
    for (const IdentityResidual& r : sr.residuals)
      report.add(residual_check(sr.name + "." + r.name, subject, r.residual, r.tolerance));
}

void append_spaceform_checks(RunReport& report, const AlmostContactStructure& s, double c, int quadruples,
                             std::uint64_t seed) {
  auto rng = substream(seed, static_cast<std::uint64_t>(s.dim));
  std::uniform_real_distribution<double> box(0.1, 1.1), unit(-1.0, 1.0);
  const auto random_vector = [&](int n) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = unit(rng);
    return v;
  };
  double worst = 0.0;
  for (int q = 0; q < quadruples; ++q) {
    Point p(s.dim);
    for (int i = 0; i < s.dim; ++i) p[i] = box(rng);
    const Vector x = random_vector(s.dim), y = random_vector(s.dim), z = random_vector(s.dim);
    const Vector h = random_vector(s.dim);
    const RiemannTensor rt = riemann_tensor_at(s.g, p);
    const PointStructure ps = structure_at(s, p);
    const double lhs = rt.lowered(x, y, z, h);
    const double rhs = ps.g.inner(spaceform_curvature({c}, ps, x, y, z), h);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  CheckRecord r = residual_check("spaceform-curvature", s.label, worst, kEquationTol);
  r.values = {{"c", c}, {"quadruples", static_cast<double>(quadruples)}};
  report.add(r);
}

void append_map_checks(RunReport& report, const RiemannianMapInstance& inst, std::uint64_t seed, int tuples) {
  const std::string& subject = inst.label;
  std::optional<MapFrames> built;
  try {
    built = build_frames(inst, FrameOptions{.require_isometry = false});
  } catch (const GeometryError& e) {
    report.add(error_check("frames", subject, e));
    return;
  }
  const MapFrames& fr = *built;
  CheckRecord iso = residual_check("isometry", subject, fr.isometry_defect, kFrameTol);
  iso.values = {{"rank", static_cast<double>(fr.r)}, {"xi_in_range", fr.xi_in_range ? 1.0 : 0.0}};
  report.add(iso);

  const TangentialNormalSplit split = pq_decompose(inst, fr);
  report.add(residual_check("pq-decomposition", subject, std::max(split.range_sum_defect, split.normal_sum_defect),
                            kDefaultTolerances.identity));

  SlantProfile profile;
  try {
    profile = slant_spectrum(split, fr);
    CheckRecord cls;
    cls.id = "classification";
    cls.kind = "classification";
    cls.subject = subject;
    cls.value = static_cast<double>(profile.clusters.size());
    cls.message = to_string(classify(profile));
    cls.pass = true;
    for (size_t k = 0; k < profile.clusters.size(); ++k) {
      cls.values.push_back({"theta" + std::to_string(k + 1), profile.clusters[k].theta});
      cls.values.push_back({"multiplicity" + std::to_string(k + 1), double(profile.clusters[k].multiplicity)});
    }
    cls.values.push_back({"even_multiplicities", profile.even_multiplicities ? 1.0 : 0.0});
    cls.values.push_back({"cross_defect", profile.cross_defect});
    report.add(cls);
  } catch (const GeometryError& e) {
    report.add(error_check("slant-spectrum", subject, e));
    return;
  }

  const SlantIdentityReport identities = slant_frame_identities(fr, split, profile);
  const double compat = psi_compatibility_defect(inst, fr.fp);
  const Vector eta_on_range = fr.RG.vectors().transpose() * structure_at(inst.target, fr.fp).eta;
  const bool bislant = profile.cross_defect <= kIdentityTol &&
                       (fr.xi_in_range || eta_on_range.cwiseAbs().maxCoeff() <= kIdentityTol);
  for (int k = 0; k < 5; ++k) {
    const std::string id = "slant-identity-" + std::to_string(k + 1);
    if (!bislant)
      report.add(info_check(id, subject, identities.residual[k], "range is not bi-slant"));
    else if (k == 4 && compat > kDefaultTolerances.structure)
      report.add(info_check(id, subject, identities.residual[k], "psi is not metric-compatible on the range"));
    else
      report.add(residual_check(id, subject, identities.residual[k], kIdentityTol));
  }

  const SffTensor zeta = second_fundamental_form(inst, fr);
  report.add(residual_check("sff-symmetry", subject, zeta.symmetry_defect, kDefaultTolerances.sff));
  report.add(residual_check("sff-normality", subject, zeta.range_component, kEquationTol));

  auto rng = substream(seed, 7);
  std::uniform_int_distribution<int> pick(0, fr.r - 1);
  double gauss = 0.0;
  for (int t = 0; t < tuples; ++t)
    gauss = std::max(gauss, gauss_equation_check(inst, fr, zeta, pick(rng), pick(rng), pick(rng), pick(rng)).residual);
  report.add(residual_check("gauss-equation", subject, gauss, kEquationTol));

  const int k = fr.normal_dim();
  if (k == 0) return;
  std::uniform_int_distribution<int> pick_n(0, k - 1);
  double ricci = 0.0;
  const int ricci_tuples = std::min(tuples, 5);
  for (int t = 0; t < ricci_tuples; ++t)
    ricci = std::max(ricci,
                     ricci_equation_check(inst, fr, zeta, pick(rng), pick(rng), pick_n(rng), pick_n(rng)).residual);
  report.add(residual_check("ricci-equation", subject, ricci, kEquationTol));

  double duality = 0.0;
  try {
    for (int a = 0; a < k; ++a) duality = std::max(duality, shape_operator(inst, fr, zeta, a).discrepancy);
    report.add(residual_check("shape-duality", subject, duality, 1e-6));
  } catch (const GeometryError& e) {
    report.add(error_check("shape-duality", subject, e));
  }

  if (fr.xi_in_range) {
    try {
      const auto rperp = normal_curvature_tensor(inst, fr);
      double worst = 0.0, deviation = 0.0;
      for (int x = 0; x < fr.r; ++x) {
        const NormalRicciReport nr = normal_ricci_report(inst, fr, split, zeta, rperp, x, x);
        worst = std::max(worst, nr.residual_contracted);
        deviation = std::max(deviation, nr.constant_deviation);
      }
      CheckRecord rec = fixture_space_form(inst)
                            ? residual_check("normal-ricci-contracted", subject, worst, kEquationTol)
                            : info_check("normal-ricci-contracted", subject, worst,
                                         "target is not a Kenmotsu space form");
      rec.values = {{"constant_deviation", deviation}};
      report.add(rec);
    } catch (const GeometryError& e) {
      if (e.kind() != ErrorKind::PreconditionUnverified) throw;
    }
  }
}

void append_inequality_checks(RunReport& report, const InequalityInput& in, std::uint64_t seed, double tol,
                              bool chen, bool ddvv, bool casorati) {
  const std::string& subject = in.label;
  const CurvatureInvariants inv = in.invariants();
  const ScalarIdentityReport id = scalar_identity_check(in.c, in.data, in.zeta, inv);
  CheckRecord rec = residual_check("scalar-identity", subject, id.residual, kIdentityTol);
  rec.values = {{"lhs", id.lhs},
                {"rhs", id.rhs},
                {"residual_negative_tau", id.residual_negative_tau},
                {"residual_rearranged", id.residual_rearranged},
                {"frame_sum_deviation", id.frame_sum_deviation}};
  report.add(rec);

  report.add(inequality_check(subject, lu_inequality_check(in.zeta, tol), tol));
  if (chen) {
    for (int x = 0; x < in.data.r; ++x) {
      const InequalityReport rep = chen_ricci_check(in.c, in.data, in.zeta, inv, x, tol);
      CheckRecord c = inequality_check(subject, rep, tol);
      c.id += "[" + std::to_string(x) + "]";
      report.add(c);
      if (!rep.informational)
        report.add(residual_check("chen-ricci-sos[" + std::to_string(x) + "]", subject, rep.extra("sos_residual"),
                                  kIdentityTol));
    }
  }
  if (ddvv) report.add(inequality_check(subject, ddvv_check(in.c, in.data, in.zeta, inv, tol), tol));
  if (casorati && in.data.r >= 3) {
    const auto [lower, upper] = casorati_bounds(in.c, in.data, in.zeta, inv, seed, tol);
    report.add(inequality_check(subject, lower, tol));
    report.add(inequality_check(subject, upper, tol));
  }
}

namespace {

void append_angle_regressions(RunReport& report, const RiemannianMapInstance& inst, double cos_theta1,
                              double theta2) {
  try {
    const MapFrames fr = build_frames(inst);
    const SlantProfile profile = slant_spectrum(pq_decompose(inst, fr), fr);
    report.add(regression_check("cos-theta1", inst.label, std::cos(profile.theta1()), cos_theta1, kAngleTol));
    report.add(regression_check("theta2", inst.label, profile.theta2(), theta2, kAngleTol));
  } catch (const GeometryError& e) {
    report.add(error_check("angles", inst.label, e));
  }
}

void append_map_inequalities(RunReport& report, const RiemannianMapInstance& inst, double c, std::uint64_t seed,
                             double tol) {
  try {
    append_inequality_checks(report, inequality_input_from_map(LoadedMap{inst, c}), seed, tol);
  } catch (const GeometryError& e) {
    report.add(error_check("inequalities", inst.label, e));
  }
}

void append_class_rows(RunReport& report) {
  constexpr double c = -0.5;
  constexpr int r1 = 1, r2 = 2;
  constexpr double theta2 = 0.6;
  for (bool xi : {true, false})
    for (MapClass cls : all_map_classes()) {
      const ClassRow row = class_row(cls, xi, c, r1, r2, theta2);
      const std::string subject = std::string(to_string(cls)) + (xi ? "/xi-in-range" : "/xi-normal");
      CheckRecord rec = regression_check("class-row", subject, row.stated, row.substituted, 1e-12);
      rec.values.push_back({"r", static_cast<double>(row.r)});
      report.add(rec);
    }
}

void append_quadratic_minimizer(RunReport& report) {
  for (int r = 3; r <= 7; ++r) {
    const double b = r, d = (r - 1.0) / 2.0, k = 1.0;
    const QuadraticMinimum res = minimize_hyperplane_quadratic(b, d, k, r);
    double closed = 0.0;
    for (int i = 0; i + 1 < r; ++i) closed = std::max(closed, std::abs(res.argmin[i] - k / (b + 1.0)));
    closed = std::max(closed, std::abs(res.argmin[r - 1] - 2.0 * k / (r + 1.0)));
    CheckRecord rec = residual_check("quadratic-minimizer", "n=" + std::to_string(r), closed, 1e-12);
    rec.values = {{"min_value", res.min_value}};
    report.add(rec);
  }
}

bool selected(const RunConfig& config, const std::string& name) {
  return config.fixture.empty() || config.fixture == name;
}

}  // namespace

RunReport run_gallery(const RunConfig& config) {
  RunReport report;
  report.provenance = {"gallery", {}, config.seed, config.tol};
  const double tol = config.tol;
  if (!config.fixture.empty()) fixture_by_name(config.fixture);

  if (config.fixture.empty()) {
    for (int m = 1; m <= 3; ++m) {
      append_structure_checks(report, build_warped_kenmotsu(m, true), true, config.tol_set ? tol : -1.0);
      append_structure_checks(report, build_warped_kenmotsu(m, false), false, config.tol_set ? tol : -1.0);
    }
    append_spaceform_checks(report, build_warped_kenmotsu(2, true), -1.0, 50, config.seed);
  }

  for (const std::string& name : fixture_names()) {
    if (!selected(config, name)) continue;
    report.provenance.fixtures.push_back(name);
    const RiemannianMapInstance inst = fixture_by_name(name);
    const size_t first = report.checks.size();
    append_map_checks(report, inst, config.seed);
    if (name.ends_with("-literal"))
      for (size_t i = first; i < report.checks.size(); ++i) {
        CheckRecord& rec = report.checks[i];
        if (rec.pass) continue;
        rec.pass = true;
        rec.informational = true;
        rec.message = rec.message.empty() ? "literal source data" : rec.message + "; literal source data";
      }
    if (name == "hemislant-7d") append_angle_regressions(report, inst, 2.0 / 3.0, std::numbers::pi / 2.0);
    if (name == "bislant-9d") append_angle_regressions(report, inst, std::cos(std::numbers::pi / 3.0),
                                                        std::numbers::pi / 4.0);
    if (name == "bislant-warped" || name == "bislant-warped-perp" || name == "warped-random")
      append_map_inequalities(report, inst, -1.0, config.seed, tol);
  }
  if (!config.fixture.empty()) return report;

  for (std::uint64_t i = 0; i < 3; ++i) {
    auto rng = substream(config.seed, 100 + i);
    RandomMapOptions opts;
    opts.m = 2 + static_cast<int>(i % 2);
    opts.source_dim = 2 * opts.m + 2;
    opts.rank = opts.m + 1;
    RiemannianMapInstance inst = random_warped_instance(opts, rng);
    inst.label = "random-warped-" + std::to_string(i);
    append_map_checks(report, inst, config.seed + i);
  }

  for (std::uint64_t i = 0; i < 8; ++i) {
    auto rng = substream(config.seed, 200 + i);
    const ProfileDraw draw = random_profile(rng);
    InequalityInput in;
    in.label = "synthetic-" + std::to_string(i);
    in.c = draw.c;
    in.data = draw.data;
    in.zeta = random_zeta(draw.r, draw.normal_dim, rng);
    append_inequality_checks(report, in, rng(), tol);
  }

  append_class_rows(report);
  append_quadratic_minimizer(report);
  return report;
}

RunReport run_falsification(const RunConfig& config, const LuOptions& lu) {
  RunReport report;
  report.provenance = {"lu-sweep", {}, config.seed, config.tol};
  if (config.n == 0) return report;
  SweepOptions opts;
  opts.tol = config.tol;
  opts.lu = lu;
  const SweepResult sweep = run_sweep_parallel(config.seed, config.n, opts);
  const std::string subject = "sweep-n=" + std::to_string(config.n);
  for (const CheckTally& t : sweep.tallies) {
    CheckRecord rec;
    rec.id = t.name;
    rec.kind = "sweep";
    rec.subject = subject;
    rec.value = t.min_slack;
    rec.tolerance = config.tol;
    rec.pass = t.violations == 0;
    rec.values = {{"count", static_cast<double>(t.count)},
                  {"violations", static_cast<double>(t.violations)},
                  {"min_index", static_cast<double>(t.min_index)}};
    report.add(rec);
  }
  report.add(residual_check("scalar-identity", subject, sweep.max_identity_residual, kIdentityTol));
  report.add(residual_check("chen-ricci-sos", subject, sweep.max_sos_residual, kIdentityTol));
  report.add(residual_check("decomposition", subject, sweep.max_decomposition_residual, kIdentityTol));
  report.findings = sweep.findings;
  return report;
}

namespace {

std::string directory_of(const std::string& path) {
  const auto pos = path.find_last_of('/');
  return pos == std::string::npos ? "." : path.substr(0, pos);
}

}  // namespace

RunReport run_command(const RunConfig& config) {
  const auto& known = known_commands();
  if (std::find(known.begin(), known.end(), config.command) == known.end())
    throw GeometryError(ErrorKind::InvalidInput, "unknown command '" + config.command + "'");
  if (config.command == "gallery") return run_gallery(config);
  if (config.command == "lu-sweep") {
    RunConfig c = config;
    if (c.n == 0 && config.inputs.empty()) c.n = 10000;
    return run_falsification(c);
  }

  RunReport report;
  report.provenance = {config.command, config.inputs, config.seed, config.tol};
  if (!config.fixture.empty()) report.provenance.fixtures.push_back(config.fixture);
  if (config.inputs.empty() && config.fixture.empty())
    throw GeometryError(ErrorKind::InvalidInput, "command '" + config.command + "' needs --input or --fixture");
  const double tol_override = config.tol_set ? config.tol : -1.0;

  if (config.command == "check-structure") {
    for (const std::string& path : config.inputs) {
      const LoadedStructure ls = structure_from_json(read_json_file(path));
      append_structure_checks(report, ls.structure, ls.structure.g.analytic() || ls.structure.g.constant,
                              tol_override);
      if (ls.c) append_spaceform_checks(report, ls.structure, *ls.c, 50, config.seed);
    }
    if (!config.fixture.empty()) {
      const RiemannianMapInstance inst = fixture_by_name(config.fixture);
      append_structure_checks(report, inst.target, inst.target.g.analytic() || inst.target.g.constant,
                              tol_override);
    }
    return report;
  }

  std::vector<LoadedMap> maps;
  std::vector<InequalityInput> inputs;
  const bool inequality = config.command != "check-map";
  for (const std::string& path : config.inputs) {
    const Json j = read_json_file(path);
    if (inequality)
      inputs.push_back(inequality_input_from_json(j, directory_of(path)));
    else
      maps.push_back(map_from_json(j, directory_of(path)));
  }
  if (!config.fixture.empty()) {
    RiemannianMapInstance inst = fixture_by_name(config.fixture);
    const auto c = fixture_space_form(inst);
    if (inequality)
      inputs.push_back(inequality_input_from_map(LoadedMap{std::move(inst), c}));
    else
      maps.push_back(LoadedMap{std::move(inst), c});
  }

  for (const LoadedMap& m : maps) append_map_checks(report, m.instance, config.seed);
  for (const InequalityInput& in : inputs)
    append_inequality_checks(report, in, config.seed, config.tol, config.command == "chen-ricci",
                             config.command == "ddvv", config.command == "casorati");
  return report;
}

}  // namespace slantmap
