#include "slantmap/curvature_inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "slantmap/errors.hpp"

namespace slantmap {

namespace {

double dot_normal(const SffTensor& z, int i, int j, int k, int l) {
  double s = 0.0;
  for (const Matrix& m : z.zeta) s += m(i, j) * m(k, l);
  return s;
}

double sq(double v) { return v * v; }

}  // namespace

HorizontalCurvature assemble_horizontal_curvature(double c, const BiSlantData& data, const SffTensor& zeta) {
  const int r = data.r;
  if (zeta.r != r) throw GeometryError(ErrorKind::DimensionMismatch, "zeta rank does not match the frame");
  const double a = (c - 3.0) / 4.0, b = (c + 1.0) / 4.0;
  const Matrix& P = data.Psi;
  const Vector& e = data.eta;
  HorizontalCurvature R(r);
  const auto d = [](int p, int q) { return p == q ? 1.0 : 0.0; };
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k)
        for (int l = 0; l < r; ++l) {
          double v = a * (d(j, k) * d(i, l) - d(i, k) * d(j, l));
          v += b * (e[i] * e[k] * d(j, l) - e[j] * e[k] * d(i, l) + e[j] * e[l] * d(i, k) - e[i] * e[l] * d(j, k) -
                    P(i, k) * P(j, l) + P(j, k) * P(i, l) + 2.0 * P(j, i) * P(k, l));
          v += -dot_normal(zeta, i, k, j, l) + dot_normal(zeta, j, k, i, l);
          R(i, j, k, l) = v;
        }
  return R;
}

HorizontalCurvature horizontal_curvature_from_source(const RiemannianMapInstance& inst, const MapFrames& frames) {
  const int r = frames.r;
  const RiemannTensor rt = riemann_tensor_at(inst.source, frames.p);
  std::vector<Vector> h(r);
  for (int i = 0; i < r; ++i) h[i] = frames.H.vector(i);
  HorizontalCurvature R(r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      for (int k = 0; k < r; ++k) {
        const Vector v = rt.apply(h[i], h[j], h[k]);
        for (int l = 0; l < r; ++l) R(i, j, k, l) = rt.metric().inner(v, h[l]);
      }
  return R;
}

double ricci(const HorizontalCurvature& R, const Vector& x) {
  const int r = R.dim();
  double s = 0.0;
  for (int i = 0; i < r; ++i)
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) s += x[a] * x[b] * R(i, a, b, i);
  return s;
}

CurvatureInvariants horizontal_invariants(const HorizontalCurvature& R, const SffTensor* zeta) {
  const int r = R.dim();
  CurvatureInvariants inv;
  inv.ric.resize(r);
  for (int x = 0; x < r; ++x) {
    double s = 0.0;
    for (int i = 0; i < r; ++i) s += R(i, x, x, i);
    inv.ric[x] = s;
  }
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) inv.tau += R(i, j, j, i);
  inv.rho = r > 1 ? 2.0 * inv.tau / (r * (r - 1.0)) : 0.0;
  if (zeta) {
    const NormalScalar ns = normal_scalar(*zeta);
    inv.tau_perp = ns.tau_perp;
    inv.rho_perp = ns.rho_perp;
  }
  return inv;
}

SffStats sff_stats(const SffTensor& zeta) {
  SffStats s;
  s.trace = Vector::Zero(zeta.normal_dim());
  for (int a = 0; a < zeta.normal_dim(); ++a) {
    s.norm2 += zeta.zeta[a].squaredNorm();
    s.trace[a] = zeta.zeta[a].trace();
  }
  s.trace_norm2 = s.trace.squaredNorm();
  return s;
}

NormalScalar normal_scalar(const SffTensor& zeta) {
  const int r = zeta.r, k = zeta.normal_dim();
  NormalScalar ns;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      const Matrix& za = zeta.zeta[a];
      const Matrix& zb = zeta.zeta[b];
      const Matrix cm = commutator(zb, za);
      for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
          ns.commutator_form += sq(cm(i, j));
          double s = 0.0;
          for (int m = 0; m < r; ++m) s += za(j, m) * zb(i, m) - za(i, m) * zb(j, m);
          ns.coefficient_form += sq(s);
        }
    }
  const double scale = std::max({1.0, ns.commutator_form, ns.coefficient_form});
  if (std::abs(ns.commutator_form - ns.coefficient_form) > 1e-10 * scale)
    throw GeometryError(ErrorKind::InternalInconsistency, "commutator and coefficient forms of the normal scalar disagree");
  ns.tau_perp = std::sqrt(ns.commutator_form);
  ns.rho_perp = r > 1 ? 2.0 * ns.tau_perp / (r * (r - 1.0)) : 0.0;
  return ns;
}

ScalarIdentityReport scalar_identity_check(double c, const BiSlantData& data, const SffTensor& zeta,
                                           const CurvatureInvariants& inv) {
  const int r = data.r;
  const SffStats st = sff_stats(zeta);
  ScalarIdentityReport rep;
  rep.frame_sum = data.psi_frame_sum();
  rep.eta_sum = data.eta_sum();
  rep.frame_sum_deviation = std::abs(rep.frame_sum - 2.0 * data.slant_sum());
  const double bracket = -2.0 * (r - 1.0) * rep.eta_sum + 3.0 * rep.frame_sum;
  rep.lhs = (c - 3.0) / 4.0 * r * (r - 1.0) + (c + 1.0) / 4.0 * bracket;
  rep.rhs = st.norm2 - st.trace_norm2 + 2.0 * inv.tau;
  rep.residual = std::abs(rep.lhs - rep.rhs);
  rep.residual_negative_tau = std::abs(rep.lhs - (st.norm2 - st.trace_norm2 - 2.0 * inv.tau));
  const double rearranged =
      (c - 3.0) / 4.0 * r * (r - 1.0) + (c + 1.0) / 4.0 * (bracket - st.norm2 + st.trace_norm2);
  rep.residual_rearranged = std::abs(2.0 * inv.tau - rearranged);
  return rep;
}

double InequalityReport::extra(const std::string& key) const {
  for (const auto& nv : extras)
    if (nv.name == key) return nv.value;
  return std::numeric_limits<double>::quiet_NaN();
}

double InequalityReport::diag(const std::string& key) const {
  for (const auto& nv : equality_diag)
    if (nv.name == key) return nv.value;
  return std::numeric_limits<double>::quiet_NaN();
}

InequalityReport make_report(std::string name, double lhs, double rhs, double tol) {
  InequalityReport rep;
  rep.name = std::move(name);
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.slack = rhs - lhs;
  rep.holds = rep.slack >= -tol;
  return rep;
}

InequalityReport chen_ricci_check(double c, const BiSlantData& data, const SffTensor& zeta,
                                  const CurvatureInvariants& inv, int x, double tol) {
  const int r = data.r;
  if (x < 0 || x >= r) throw GeometryError(ErrorKind::InvalidInput, "horizontal index out of range");
  const SffStats st = sff_stats(zeta);
  double psi_x = 0.0;
  for (int i = 0; i < r; ++i) psi_x += sq(data.Psi(x, i));
  const double eta_x = data.eta[x];
  const double rhs = (c - 3.0) * (r - 1.0) - (c + 1.0) * ((r - 2.0) * sq(eta_x) + data.eta_sum()) +
                     3.0 * (c + 1.0) * psi_x + st.trace_norm2;
  InequalityReport rep = make_report("chen-ricci", 4.0 * inv.ric[x], rhs, tol);

  double sos = 0.0, off = 0.0, half = 0.0;
  for (int a = 0; a < zeta.normal_dim(); ++a) {
    const Matrix& z = zeta.zeta[a];
    const double tr = z.trace();
    sos += sq(2.0 * z(x, x) - tr);
    half = std::max(half, std::abs(z(x, x) - 0.5 * tr));
    for (int i = 0; i < r; ++i)
      if (i != x) {
        sos += 4.0 * sq(z(x, i));
        off = std::max(off, std::abs(z(x, i)));
      }
  }
  const double stated = (c - 3.0) * (r - 1.0) - (data.xi_in_range ? 2.0 * (c + 1.0) : 0.0) + st.trace_norm2 +
                           3.0 * (c + 1.0) * psi_x;
  const double gate = std::abs(psi_x - data.block_cos2(x));
  rep.informational = gate > 1e-9;
  rep.extras = {{"sos", sos},
                {"sos_residual", std::abs(rep.slack - sos)},
                {"stated_rhs", stated},
                {"stated_slack", stated - rep.lhs},
                {"psi_row_sum", psi_x},
                {"gate_defect", gate}};
  rep.equality_diag = {{"off_diagonal", off}, {"half_trace", half}, {"zeta_norm", std::sqrt(st.norm2)}};
  if (r == 3) {
    double pattern = 0.0;
    for (const Matrix& z : zeta.zeta) pattern = std::max(pattern, std::abs(z(0, 0) - z(1, 1)));
    rep.equality_diag.push_back({"rank3_pattern", pattern});
  }
  return rep;
}

InequalityReport lu_inequality_check(const SffTensor& zeta, double tol, const LuOptions& opts) {
  const int r = zeta.r;
  double rhs = 0.0;
  for (const Matrix& z : zeta.zeta)
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) rhs += sq(z(i, i) - z(j, j)) + 2.0 * r * sq(z(i, j));
  const NormalScalar ns = normal_scalar(zeta);
  const double lhs = 2.0 * r * ns.tau_perp;
  InequalityReport rep = make_report("lu", opts.flip_sign ? rhs : lhs, opts.flip_sign ? lhs : rhs, tol);
  const SffStats st = sff_stats(zeta);
  rep.extras = {{"trace_identity_residual", std::abs(rhs - (r * st.norm2 - st.trace_norm2))}};
  return rep;
}

double bislant_tail(double c, int r, double slant_sum, bool xi_in_range) {
  double t = (c - 3.0) / 4.0 + 3.0 * (c + 1.0) * slant_sum / (2.0 * r * (r - 1.0));
  if (xi_in_range) t -= (c + 1.0) / (2.0 * r);
  return t;
}

double frame_tail(double c, const BiSlantData& data) {
  const int r = data.r;
  return (c - 3.0) / 4.0 - (c + 1.0) * data.eta_sum() / (2.0 * r) +
         3.0 * (c + 1.0) * data.psi_frame_sum() / (4.0 * r * (r - 1.0));
}

const std::vector<MapClass>& all_map_classes() {
  static const std::vector<MapClass> v = {MapClass::Invariant,   MapClass::AntiInvariant, MapClass::SemiInvariant,
                                          MapClass::ProperSlant, MapClass::SemiSlant,     MapClass::HemiSlant};
  return v;
}

double row_slant_sum(MapClass cls, int r1, int r2, double theta2) {
  const double c2 = sq(std::cos(theta2));
  switch (cls) {
    case MapClass::Invariant: return r2;
    case MapClass::AntiInvariant: return 0.0;
    case MapClass::SemiInvariant: return r1;
    case MapClass::ProperSlant: return r2 * c2;
    case MapClass::SemiSlant: return r1 + r2 * c2;
    case MapClass::HemiSlant: return r2 * c2;
    case MapClass::BiSlantProper: break;
  }
  throw GeometryError(ErrorKind::InvalidInput, "no class row for bi-slant-proper");
}

int row_rank(MapClass cls, int r1, int r2, bool xi_in_range) {
  const bool one_block = cls == MapClass::Invariant || cls == MapClass::AntiInvariant || cls == MapClass::ProperSlant;
  return 2 * ((one_block ? 0 : r1) + r2) + (xi_in_range ? 1 : 0);
}

double stated_row_tail(MapClass cls, bool xi_in_range, double c, int r, int r1, int r2, double theta2) {
  const double base = (c - 3.0) / 4.0;
  const double c2 = sq(std::cos(theta2));
  const double k = c + 1.0;
  if (xi_in_range) {
    switch (cls) {
      case MapClass::Invariant: return base + k / r;
      case MapClass::AntiInvariant: return base;
      case MapClass::SemiInvariant: return base + k / (2.0 * r) * (3.0 * r1 / (r - 1.0) - 0.5);
      case MapClass::ProperSlant: return base + k / (4.0 * r) * (3.0 * c2 - 1.0);
      case MapClass::SemiSlant: return base + k / (2.0 * r) * (3.0 * (r1 + r2 * c2) / (r - 1.0) - 0.5);
      case MapClass::HemiSlant: return base + k / (2.0 * r) * (3.0 * r2 * c2 / (r - 1.0) - 0.5);
      case MapClass::BiSlantProper: break;
    }
  } else {
    switch (cls) {
      case MapClass::Invariant: return base + 3.0 * k / (4.0 * (r - 1.0));
      case MapClass::AntiInvariant: return base;
      case MapClass::SemiInvariant: return base + 3.0 * k * r1 / (2.0 * r * (r - 1.0));
      case MapClass::ProperSlant: return base + 3.0 * k * c2 / (4.0 * (r - 1.0));
      case MapClass::SemiSlant: return base + 3.0 * k * (r1 + r2 * c2) / (2.0 * r * (r - 1.0));
      case MapClass::HemiSlant: return base + 3.0 * k * r2 * c2 / (2.0 * r * (r - 1.0));
      case MapClass::BiSlantProper: break;
    }
  }
  throw GeometryError(ErrorKind::InvalidInput, "no class row for bi-slant-proper");
}

ClassRow class_row(MapClass cls, bool xi_in_range, double c, int r1, int r2, double theta2) {
  ClassRow row;
  row.cls = cls;
  row.xi_in_range = xi_in_range;
  row.r = row_rank(cls, r1, r2, xi_in_range);
  row.stated = stated_row_tail(cls, xi_in_range, c, row.r, r1, r2, theta2);
  row.substituted = bislant_tail(c, row.r, row_slant_sum(cls, r1, r2, theta2), xi_in_range);
  row.residual = std::abs(row.stated - row.substituted);
  return row;
}

namespace {

constexpr double kRowAngleTol = 1e-9;

std::optional<MapClass> row_class(const BiSlantData& d) {
  const auto zero = [](double t) { return std::abs(t) < kRowAngleTol; };
  const auto right = [](double t) { return std::abs(t - std::numbers::pi / 2) < kRowAngleTol; };
  if (d.r2 == 0) return std::nullopt;
  if (d.r1 == 0) {
    if (zero(d.theta2)) return MapClass::Invariant;
    if (right(d.theta2)) return MapClass::AntiInvariant;
    return MapClass::ProperSlant;
  }
  if (zero(d.theta1) && right(d.theta2)) return MapClass::SemiInvariant;
  if (zero(d.theta1) && !zero(d.theta2) && !right(d.theta2)) return MapClass::SemiSlant;
  if (right(d.theta1) && !zero(d.theta2) && !right(d.theta2)) return MapClass::HemiSlant;
  return std::nullopt;
}

void append_row(InequalityReport& rep, double c, const BiSlantData& data, double head) {
  const auto cls = row_class(data);
  if (!cls) return;
  const int r1 = *cls == MapClass::SemiInvariant || *cls == MapClass::SemiSlant || *cls == MapClass::HemiSlant ? data.r1 : 0;
  const double stated = stated_row_tail(*cls, data.xi_in_range, c, data.r, r1, data.r2, data.theta2);
  const double substituted = bislant_tail(c, data.r, row_slant_sum(*cls, r1, data.r2, data.theta2), data.xi_in_range);
  rep.extras.push_back({"row_stated_rhs", head + stated});
  rep.extras.push_back({"row_substituted_rhs", head + substituted});
}

}  // namespace

InequalityReport ddvv_check(double c, const BiSlantData& data, const SffTensor& zeta, const CurvatureInvariants& inv,
                            double tol) {
  const int r = data.r;
  if (r < 2) throw GeometryError(ErrorKind::RankOutOfRange, "normalized curvatures need r >= 2");
  const SffStats st = sff_stats(zeta);
  const double head = st.trace_norm2 / sq(r);
  InequalityReport rep = make_report("ddvv", inv.rho_perp + inv.rho, head + frame_tail(c, data), tol);
  const InequalityReport lu = lu_inequality_check(zeta, tol);
  const double stated = head + bislant_tail(c, r, data.slant_sum(), data.xi_in_range);
  rep.extras = {{"lu_slack", lu.slack},
                {"decomposition_residual", std::abs(rep.slack - lu.slack / (sq(r) * (r - 1.0)))},
                {"trace_identity_residual", lu.extra("trace_identity_residual")},
                {"stated_rhs", stated},
                {"tail_deviation", std::abs(stated - rep.rhs)}};
  rep.equality_diag = {{"lu_slack", lu.slack}};
  append_row(rep, c, data, head);
  return rep;
}

double restricted_norm2(const SffTensor& zeta, const Vector& u) {
  const int r = zeta.r;
  const Matrix p = Matrix::Identity(r, r) - u * u.transpose();
  double s = 0.0;
  for (const Matrix& z : zeta.zeta) s += (p * z * p).squaredNorm();
  return s;
}

double casorati_hyperplane(const SffTensor& zeta, const Vector& u) {
  return restricted_norm2(zeta, u) / (zeta.r - 1.0);
}

CasoratiSet casorati_curvatures(const SffTensor& zeta, std::uint64_t seed, int random_probes) {
  const int r = zeta.r;
  if (r < 2) throw GeometryError(ErrorKind::RankOutOfRange, "Casorati curvatures need r >= 2");
  CasoratiSet cs;
  cs.C = sff_stats(zeta).norm2 / r;
  for (int i = 0; i < r; ++i) cs.normals.push_back(Vector::Unit(r, i));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (int t = 0; t < random_probes; ++t) {
    Vector u(r);
    for (int i = 0; i < r; ++i) u[i] = gauss(rng);
    cs.normals.push_back(u.normalized());
  }
  for (const Vector& u : cs.normals) cs.C_of_L.push_back(casorati_hyperplane(zeta, u));
  const auto [lo, hi] = std::minmax_element(cs.C_of_L.begin(), cs.C_of_L.end());
  cs.inf_index = static_cast<int>(lo - cs.C_of_L.begin());
  cs.sup_index = static_cast<int>(hi - cs.C_of_L.begin());
  cs.inf_CL = *lo;
  cs.sup_CL = *hi;
  cs.delta = 0.5 * cs.C + (r + 1.0) / (2.0 * r) * cs.inf_CL;
  cs.delta_hat = 2.0 * cs.C - (2.0 * r - 1.0) / (2.0 * r) * cs.sup_CL;
  return cs;
}

double hyperplane_quadratic(double b, double d, const Vector& x) {
  const int n = static_cast<int>(x.size());
  double f = d * sq(x[n - 1]);
  for (int i = 0; i + 1 < n; ++i) f += b * sq(x[i]);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) f -= 2.0 * x[i] * x[j];
  return f;
}

QuadraticMinimum minimize_hyperplane_quadratic(double b, double d, double k, int n) {
  if (n < 2) throw GeometryError(ErrorKind::IncompatibleParameters, "n must be at least 2");
  if (b <= 0.0 || d <= 0.0) throw GeometryError(ErrorKind::IncompatibleParameters, "b and d must be positive");
  const double gap = b - n + 2.0;
  if (gap == 0.0 || std::abs(d - (n - 1.0) / gap) > 1e-12)
    throw GeometryError(ErrorKind::IncompatibleParameters, "d != (n-1)/(b-n+2)");
  QuadraticMinimum res;
  res.argmin = Vector::Constant(n, k / (b + 1.0));
  res.argmin[n - 1] = k * gap / (b + 1.0);
  res.min_value = hyperplane_quadratic(b, d, res.argmin);
  return res;
}

double casorati_p_polynomial(const SffTensor& zeta, const Vector& u) {
  const SffStats st = sff_stats(zeta);
  return 0.5 * (zeta.r + 1.0) * (st.norm2 + restricted_norm2(zeta, u)) - st.trace_norm2;
}

double casorati_q_polynomial(const SffTensor& zeta, const Vector& u) {
  const SffStats st = sff_stats(zeta);
  return (2.0 * zeta.r - 1.0) * (st.norm2 - 0.5 * restricted_norm2(zeta, u)) - st.trace_norm2;
}

std::pair<InequalityReport, InequalityReport> casorati_bounds(double c, const BiSlantData& data,
                                                              const SffTensor& zeta, const CurvatureInvariants& inv,
                                                              std::uint64_t seed, double tol) {
  const int r = data.r;
  if (r < 3) throw GeometryError(ErrorKind::RankOutOfRange, "Casorati bounds need r >= 3");
  const CasoratiSet cs = casorati_curvatures(zeta, seed);
  const double tail = frame_tail(c, data);
  const double stated_tail = bislant_tail(c, r, data.slant_sum(), data.xi_in_range);
  const double norm = r * (r - 1.0);
  const Vector& u_inf = cs.normals[cs.inf_index];
  const Vector& u_sup = cs.normals[cs.sup_index];

  double p_min = std::numeric_limits<double>::infinity();
  for (const Vector& u : cs.normals) p_min = std::min(p_min, casorati_p_polynomial(zeta, u));

  double off = 0.0, pattern_delta = 0.0, pattern_hat = 0.0;
  for (const Matrix& z : zeta.zeta) {
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) off = std::max(off, std::abs(z(i, j)));
    for (int i = 0; i + 1 < r; ++i) {
      pattern_delta = std::max(pattern_delta, std::abs(z(i, i) - 0.5 * z(r - 1, r - 1)));
      pattern_hat = std::max(pattern_hat, std::abs(z(r - 1, r - 1) - 0.5 * z(i, i)));
    }
  }
  const double zeta_norm = std::sqrt(sff_stats(zeta).norm2);

  InequalityReport d = make_report("casorati-delta", inv.rho, cs.delta + tail, tol);
  d.extras = {{"C", cs.C},
              {"inf_C_L", cs.inf_CL},
              {"delta", cs.delta},
              {"p_at_inf", casorati_p_polynomial(zeta, u_inf)},
              {"p_min", p_min},
              {"decomposition_residual", std::abs(d.slack - casorati_p_polynomial(zeta, u_inf) / norm)},
              {"stated_rhs", cs.delta + stated_tail},
              {"probe_bound", cs.probe_bound ? 1.0 : 0.0}};
  d.equality_diag = {{"off_diagonal", off}, {"pattern", pattern_delta}, {"zeta_norm", zeta_norm}};
  append_row(d, c, data, cs.delta);

  InequalityReport h = make_report("casorati-delta-hat", inv.rho, cs.delta_hat + tail, tol);
  h.extras = {{"C", cs.C},
              {"sup_C_L", cs.sup_CL},
              {"delta_hat", cs.delta_hat},
              {"q_at_sup", casorati_q_polynomial(zeta, u_sup)},
              {"decomposition_residual", std::abs(h.slack - casorati_q_polynomial(zeta, u_sup) / norm)},
              {"stated_rhs", cs.delta_hat + stated_tail},
              {"probe_bound", cs.probe_bound ? 1.0 : 0.0}};
  h.equality_diag = {{"off_diagonal", off}, {"pattern", pattern_hat}, {"zeta_norm", zeta_norm}};
  append_row(h, c, data, cs.delta_hat);
  return {d, h};
}

SffTensor random_zeta(int r, int normal_dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SffTensor z(r, normal_dim);
  for (int a = 0; a < normal_dim; ++a) {
    Matrix m(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) m(i, j) = u(rng);
    z.zeta[a] = 0.5 * (m + m.transpose());
  }
  return z;
}

ProfileDraw random_profile(std::mt19937_64& rng, int max_rank) {
  static constexpr int kRanks[] = {3, 4, 5, 7};
  const int choices = static_cast<int>(std::count_if(std::begin(kRanks), std::end(kRanks),
                                                     [&](int r) { return r <= max_rank; }));
  if (choices == 0) throw GeometryError(ErrorKind::InvalidInput, "max_rank below 3");
  std::uniform_int_distribution<int> pick_r(0, choices - 1), pick_k(1, 3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto angle = [&] {
    const double t = unit(rng);
    if (t < 0.1) return 0.0;
    if (t < 0.2) return std::numbers::pi / 2;
    return unit(rng) * std::numbers::pi / 2;
  };
  ProfileDraw d;
  d.r = kRanks[pick_r(rng)];
  d.normal_dim = pick_k(rng);
  d.c = -3.0 + 6.0 * unit(rng);
  const int pairs = d.r / 2;
  const int r1 = std::uniform_int_distribution<int>(0, pairs - 1)(rng);
  const double t1 = angle();
  const double t2 = angle();
  d.data = canonical_bislant_model(r1, pairs - r1, r1 == 0 ? 0.0 : t1, t2, d.r % 2 == 1);
  return d;
}

}  // namespace slantmap
