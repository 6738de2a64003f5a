#include "slantmap/slant_structure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "slantmap/errors.hpp"

namespace slantmap {

namespace {

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

std::vector<int> non_xi_indices(const MapFrames& frames) {
  std::vector<int> idx;
  const int skip = frames.xi_in_range ? frames.r - 1 : -1;
  for (int i = 0; i < frames.r; ++i)
    if (i != skip) idx.push_back(i);
  return idx;
}

Matrix select(const Matrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  Matrix out(rows.size(), cols.size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) out(i, j) = m(rows[i], cols[j]);
  return out;
}

Matrix orthonormal_columns(const Matrix& m) {
  Eigen::HouseholderQR<Matrix> qr(m);
  return qr.householderQ() * Matrix::Identity(m.rows(), m.cols());
}

}  // namespace

TangentialNormalSplit pq_decompose(const RiemannianMapInstance& inst, const MapFrames& frames) {
  TangentialNormalSplit s;
  s.psi = inst.target.psi(frames.fp);
  const Matrix& rg = frames.RG.vectors();
  const Matrix& rp = frames.RP.vectors();
  const Matrix& g = frames.RG.metric().matrix();
  const Matrix psi_rg = s.psi * rg;
  const Matrix psi_rp = s.psi * rp;
  s.P = rg.transpose() * g * psi_rg;
  s.Q = rp.transpose() * g * psi_rg;
  s.phi = rg.transpose() * g * psi_rp;
  s.omega = rp.transpose() * g * psi_rp;
  s.range_sum_defect = max_abs(rg * s.P + rp * s.Q - psi_rg);
  s.normal_sum_defect = max_abs(rg * s.phi + rp * s.omega - psi_rp);
  return s;
}

double SlantProfile::theta1() const { return clusters.size() == 2 ? clusters[0].theta : std::nan(""); }
double SlantProfile::theta2() const { return clusters.empty() ? std::nan("") : clusters.back().theta; }

SlantProfile slant_spectrum(const TangentialNormalSplit& split, const MapFrames& frames, double delta) {
  SlantProfile prof;
  prof.xi_in_range = frames.xi_in_range;
  prof.xi_index = frames.xi_in_range ? frames.r - 1 : -1;
  const std::vector<int> idx = non_xi_indices(frames);
  const int n = static_cast<int>(idx.size());
  if (n == 0) return prof;
  const Matrix pb = select(split.P, idx, idx);
  const Matrix m = -pb * pb;
  prof.asymmetry = max_abs(m - m.transpose());

  std::vector<double> lambda(n);
  Matrix vecs(n, n);
  if (prof.asymmetry < 1e-10) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()));
    for (int i = 0; i < n; ++i) lambda[i] = es.eigenvalues()[i];
    vecs = es.eigenvectors();
  } else {
    Eigen::EigenSolver<Matrix> es(m);
    for (int i = 0; i < n; ++i) {
      if (std::abs(es.eigenvalues()[i].imag()) > 1e-8)
        throw GeometryError(ErrorKind::SpectrumOutOfRange, "-P^2 has a complex eigenvalue");
      lambda[i] = es.eigenvalues()[i].real();
    }
    vecs = es.eigenvectors().real();
  }
  for (double l : lambda)
    if (l < -1e-9 || l > 1.0 + 1e-9)
      throw GeometryError(ErrorKind::SpectrumOutOfRange, "eigenvalue " + std::to_string(l) + " of -P^2 outside [0,1]");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return lambda[a] < lambda[b]; });
  std::vector<std::vector<int>> groups;
  for (int k = 0; k < n; ++k) {
    if (groups.empty() || lambda[order[k]] - lambda[groups.back().back()] > delta) groups.emplace_back();
    groups.back().push_back(order[k]);
  }
  for (const auto& grp : groups) {
    SlantCluster c;
    c.multiplicity = static_cast<int>(grp.size());
    double mean = 0.0;
    Matrix local(n, c.multiplicity);
    for (int k = 0; k < c.multiplicity; ++k) {
      mean += lambda[grp[k]];
      local.col(k) = vecs.col(grp[k]);
    }
    mean /= c.multiplicity;
    c.eigenvalue = std::clamp(mean, 0.0, 1.0);
    c.theta = std::acos(std::sqrt(c.eigenvalue));
    local = orthonormal_columns(local);
    c.basis = Matrix::Zero(frames.r, c.multiplicity);
    for (int i = 0; i < n; ++i) c.basis.row(idx[i]) = local.row(i);
    prof.clusters.push_back(c);
    prof.spectrum.insert(prof.spectrum.end(), c.multiplicity, c.eigenvalue);
  }
  std::sort(prof.spectrum.begin(), prof.spectrum.end());
  for (int i = 0; i < n; ++i) prof.spectrum[i] = lambda[order[i]];

  const auto first_index = [&](const SlantCluster& c) {
    for (int i = 0; i < frames.r; ++i)
      if (c.basis.row(i).norm() > 1e-6) return i;
    return frames.r;
  };
  std::stable_sort(prof.clusters.begin(), prof.clusters.end(),
                   [&](const SlantCluster& a, const SlantCluster& b) { return first_index(a) < first_index(b); });
  if (prof.clusters.size() > 2)
    throw GeometryError(ErrorKind::ClusterAmbiguity,
                        std::to_string(prof.clusters.size()) + " slant clusters, at most two expected");

  for (const auto& c : prof.clusters) prof.even_multiplicities &= (c.multiplicity % 2 == 0);
  if (prof.clusters.size() == 2) {
    prof.r1 = prof.clusters[0].multiplicity / 2;
    prof.r2 = prof.clusters[1].multiplicity / 2;
    const Matrix& b1 = prof.clusters[0].basis;
    const Matrix& b2 = prof.clusters[1].basis;
    prof.cross_defect = std::max(max_abs(b2.transpose() * split.P * b1), max_abs(b1.transpose() * split.P * b2));
  } else {
    prof.r2 = prof.clusters[0].multiplicity / 2;
  }
  return prof;
}

SlantIdentityReport slant_frame_identities(const MapFrames& frames, const TangentialNormalSplit& split,
                                 const SlantProfile& profile) {
  SlantIdentityReport rep;
  const Metric& g2 = frames.RG.metric();
  const Matrix& rg = frames.RG.vectors();
  for (const auto& c : profile.clusters) {
    const double cos2 = c.eigenvalue, sin2 = 1.0 - c.eigenvalue;
    const int k = c.multiplicity;
    std::vector<Vector> x(k), psi_x(k), px(k), qx(k), omega_qx(k);
    for (int a = 0; a < k; ++a) {
      x[a] = rg * c.basis.col(a);
      psi_x[a] = split.psi * x[a];
      px[a] = project(psi_x[a], frames.RG);
      qx[a] = project(psi_x[a], frames.RP);
      const Vector psi_qx = split.psi * qx[a];
      const Vector phi_qx = project(psi_qx, frames.RG);
      omega_qx[a] = project(psi_qx, frames.RP);
      const Vector qpx = project(split.psi * px[a], frames.RP);
      rep.residual[0] = std::max(rep.residual[0], g2.norm(phi_qx - sin2 * (split.psi * psi_x[a])));
      rep.residual[1] = std::max(rep.residual[1], g2.norm(qpx + omega_qx[a]));
    }
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        const double base = g2.inner(psi_x[a], psi_x[b]);
        rep.residual[2] = std::max(rep.residual[2], std::abs(g2.inner(px[a], px[b]) - cos2 * base));
        rep.residual[3] = std::max(rep.residual[3], std::abs(g2.inner(qx[a], qx[b]) - sin2 * base));
        rep.residual[4] =
            std::max(rep.residual[4], std::abs(g2.inner(omega_qx[a], omega_qx[b]) - sin2 * cos2 * base));
      }
  }
  return rep;
}

const char* to_string(MapClass c) {
  switch (c) {
    case MapClass::Invariant: return "invariant";
    case MapClass::AntiInvariant: return "anti-invariant";
    case MapClass::SemiInvariant: return "semi-invariant";
    case MapClass::ProperSlant: return "proper-slant";
    case MapClass::SemiSlant: return "semi-slant";
    case MapClass::HemiSlant: return "hemi-slant";
    case MapClass::BiSlantProper: return "bi-slant-proper";
  }
  return "?";
}

MapClass map_class_from_string(const std::string& s) {
  for (MapClass c : {MapClass::Invariant, MapClass::AntiInvariant, MapClass::SemiInvariant, MapClass::ProperSlant,
                     MapClass::SemiSlant, MapClass::HemiSlant, MapClass::BiSlantProper})
    if (s == to_string(c)) return c;
  throw GeometryError(ErrorKind::InvalidInput, "unknown map class '" + s + "'");
}

MapClass classify(const SlantProfile& profile, double delta) {
  enum Kind { Zero, Right, Interior };
  const auto kind = [&](const SlantCluster& c) {
    if (c.eigenvalue >= 1.0 - delta) return Zero;
    if (c.eigenvalue <= delta) return Right;
    return Interior;
  };
  if (profile.clusters.empty()) throw GeometryError(ErrorKind::Unclassifiable, "no slant distribution");
  if (profile.clusters.size() == 1) {
    switch (kind(profile.clusters[0])) {
      case Zero: return MapClass::Invariant;
      case Right: return MapClass::AntiInvariant;
      case Interior: return MapClass::ProperSlant;
    }
  }
  if (profile.clusters.size() != 2) throw GeometryError(ErrorKind::Unclassifiable, "more than two slant angles");
  const Kind a = kind(profile.clusters[0]), b = kind(profile.clusters[1]);
  const auto has = [&](Kind k) { return a == k || b == k; };
  if (has(Zero) && has(Right)) return MapClass::SemiInvariant;
  if (has(Zero) && has(Interior)) return MapClass::SemiSlant;
  if (has(Right) && has(Interior)) return MapClass::HemiSlant;
  if (a == Interior && b == Interior) return MapClass::BiSlantProper;
  throw GeometryError(ErrorKind::Unclassifiable, "slant angles do not match any class");
}

double BiSlantData::slant_sum() const {
  const double c1 = std::cos(theta1), c2 = std::cos(theta2);
  return r1 * c1 * c1 + r2 * c2 * c2;
}

double BiSlantData::block_cos2(int i) const {
  const int b = block.at(i);
  if (b == 2) return 0.0;
  const double c = std::cos(b == 0 ? theta1 : theta2);
  return c * c;
}

CanonicalFrames canonicalize(const MapFrames& frames, const TangentialNormalSplit& split,
                             const SlantProfile& profile) {
  const int r = frames.r;
  Matrix coeff(r, r);
  std::vector<int> block;
  int col = 0;
  for (size_t ci = 0; ci < profile.clusters.size(); ++ci) {
    const SlantCluster& c = profile.clusters[ci];
    const int blk = profile.clusters.size() == 2 ? static_cast<int>(ci) : 1;
    Matrix remaining = c.basis;
    while (remaining.cols() > 0) {
      const Vector x = remaining.col(0);
      Vector y = split.P * x;
      y -= y.dot(x) * x;
      const bool paired = remaining.cols() >= 2 && y.norm() > 1e-9;
      coeff.col(col++) = x;
      block.push_back(blk);
      Matrix used = x;
      if (paired) {
        y.normalize();
        coeff.col(col++) = y;
        block.push_back(blk);
        used.conservativeResize(Eigen::NoChange, 2);
        used.col(1) = y;
      }
      Matrix rest = remaining - used * (used.transpose() * remaining);
      Eigen::JacobiSVD<Matrix> svd(rest, Eigen::ComputeThinU);
      const int keep = static_cast<int>(remaining.cols()) - static_cast<int>(used.cols());
      remaining = keep > 0 ? Matrix(svd.matrixU().leftCols(keep)) : Matrix(r, 0);
    }
  }
  if (frames.xi_in_range) {
    coeff.col(col++) = Vector::Unit(r, r - 1);
    block.push_back(2);
  }
  if (col != r) throw GeometryError(ErrorKind::InternalInconsistency, "canonical frame does not span range F_*");

  MapFrames f = frames;
  f.H = OrthonormalFrame(frames.H.vectors() * coeff, frames.H.metric());
  f.RG = OrthonormalFrame(frames.RG.vectors() * coeff, frames.RG.metric());

  BiSlantData d;
  d.r = r;
  d.xi_in_range = frames.xi_in_range;
  const Matrix& g = f.RG.metric().matrix();
  d.Psi = (split.psi * f.RG.vectors()).transpose() * g * f.RG.vectors();
  d.eta = f.RG.vectors().transpose() * (g * (frames.xi_in_range ? Vector(frames.RG.vector(r - 1)) : Vector::Zero(g.rows())));
  d.r1 = profile.r1;
  d.r2 = profile.r2;
  d.theta1 = profile.clusters.size() == 2 ? profile.clusters[0].theta : 0.0;
  d.theta2 = profile.clusters.empty() ? 0.0 : profile.clusters.back().theta;
  d.block = block;
  return {f, d};
}

BiSlantData canonical_bislant_model(int r1, int r2, double theta1, double theta2, bool xi_in_range) {
  if (r1 < 0 || r2 < 0 || r1 + r2 == 0)
    throw GeometryError(ErrorKind::IncompatibleParameters, "need at least one slant pair");
  const int pairs = r1 + r2;
  const int complex_dim = 2 * pairs;
  const int n = 2 * complex_dim + 1;
  Matrix psi = Matrix::Zero(n, n);
  for (int a = 0; a < complex_dim; ++a) {
    psi(2 * a + 1, 2 * a) = 1.0;
    psi(2 * a, 2 * a + 1) = -1.0;
  }
  const Vector xi = Vector::Unit(n, n - 1);
  const int r = 2 * pairs + (xi_in_range ? 1 : 0);
  Matrix f = Matrix::Zero(n, r);
  std::vector<int> block;
  for (int p = 0; p < pairs; ++p) {
    const double th = p < r1 ? theta1 : theta2;
    const Vector ua = Vector::Unit(n, 4 * p), ub = Vector::Unit(n, 4 * p + 2);
    f.col(2 * p) = ua;
    f.col(2 * p + 1) = std::cos(th) * (psi * ua) + std::sin(th) * ub;
    block.push_back(p < r1 ? 0 : 1);
    block.push_back(p < r1 ? 0 : 1);
  }
  if (xi_in_range) {
    f.col(r - 1) = xi;
    block.push_back(2);
  }
  BiSlantData d;
  d.r = r;
  d.Psi = (psi * f).transpose() * f;
  d.eta = f.transpose() * xi;
  d.xi_in_range = xi_in_range;
  d.r1 = r1;
  d.r2 = r2;
  d.theta1 = theta1;
  d.theta2 = theta2;
  d.block = block;
  return d;
}

std::vector<Matrix> normal_curvature_tensor(const RiemannianMapInstance& inst, const MapFrames& frames) {
  const int r = frames.r, k = frames.normal_dim();
  std::vector<Matrix> out(static_cast<size_t>(r) * r, Matrix::Zero(k, k));
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      Matrix& m = out[static_cast<size_t>(i) * r + j];
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) m(a, b) = normal_curvature(inst, frames, i, j, a, b);
      out[static_cast<size_t>(j) * r + i] = -m;
    }
  return out;
}

namespace {

// g2(R^perp(u, w) A, B) for range coefficients u, w and normal coefficients A, B.
double rperp_form(const std::vector<Matrix>& rperp, int r, const Vector& u, const Vector& w, const Vector& a,
                  const Vector& b) {
  double s = 0.0;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const double c = u[i] * w[j];
      if (c != 0.0) s += c * a.dot(rperp[static_cast<size_t>(i) * r + j] * b);
    }
  return s;
}

// g2([S_B, S_A] u, w) with S_V = sum_a V_a S_a.
double commutator_form(const std::vector<Matrix>& s, const Vector& a, const Vector& b, const Vector& u,
                       const Vector& w) {
  const int r = static_cast<int>(u.size());
  Matrix sa = Matrix::Zero(r, r), sb = Matrix::Zero(r, r);
  for (size_t k = 0; k < s.size(); ++k) {
    sa += a[k] * s[k];
    sb += b[k] * s[k];
  }
  return w.dot(commutator(sb, sa) * u);
}

}  // namespace

RangePerpReport range_perp_curvature_identity(const RiemannianMapInstance& inst, const MapFrames& frames,
                                              const TangentialNormalSplit& split, const SffTensor& zeta,
                                              const std::vector<Matrix>& rperp, int x, int y, int z, int h,
                                              bool perp_totally_geodesic, double tol) {
  if (!perp_totally_geodesic)
    throw GeometryError(ErrorKind::PreconditionUnverified, "(range F_*)^perp totally geodesic not asserted");
  const int r = frames.r;
  const Metric& g2 = frames.RG.metric();
  const RiemannTensor rm = riemann_tensor_at(inst.target.g, frames.fp);
  const Matrix& rg = frames.RG.vectors();
  const Matrix& rp = frames.RP.vectors();
  const auto qv = [&](int i) { return Vector(rp * split.Q.col(i)); };
  const auto pv = [&](int i) { return Vector(rg * split.P.col(i)); };

  RangePerpReport rep;
  rep.dropped_cross_terms = std::abs(rm.lowered(pv(x), qv(y), qv(z), qv(h))) +
                            std::abs(rm.lowered(qv(x), pv(y), qv(z), qv(h)));
  if (rep.dropped_cross_terms > tol)
    throw GeometryError(ErrorKind::PreconditionUnverified,
                        "cross terms R(PX,QY) + R(QX,PY) do not vanish: " + std::to_string(rep.dropped_cross_terms));

  const Vector ex = Vector::Unit(r, x), ey = Vector::Unit(r, y);
  const Vector qz = split.Q.col(z), qh = split.Q.col(h);
  const Vector px = split.P.col(x), py = split.P.col(y);
  const std::vector<Matrix> s = shape_matrices(zeta);
  rep.lhs = rm.lowered(qv(x), qv(y), qv(z), qv(h));
  rep.terms[0] = rperp_form(rperp, r, ex, ey, qz, qh);
  rep.terms[1] = -rperp_form(rperp, r, px, py, qz, qh);
  rep.terms[2] = commutator_form(s, qz, qh, ex, ey);
  rep.terms[3] = -commutator_form(s, qz, qh, px, py);
  rep.terms[4] = -g2.inner(qv(y), qv(z)) * g2.inner(qv(x), qv(h));
  rep.terms[5] = g2.inner(qv(x), qv(z)) * g2.inner(qv(y), qv(h));
  for (double t : rep.terms) rep.rhs += t;
  rep.residual = std::abs(rep.lhs - rep.rhs);
  return rep;
}

NormalRicciReport normal_ricci_report(const RiemannianMapInstance& inst, const MapFrames& frames,
                                      const TangentialNormalSplit& split, const SffTensor& zeta,
                                      const std::vector<Matrix>& rperp, int x, int y) {
  const int r = frames.r, k = frames.normal_dim(), m = inst.target_dim();
  if (!frames.xi_in_range) throw GeometryError(ErrorKind::PreconditionUnverified, "xi is not in range F_*");
  Eigen::JacobiSVD<Matrix> svd(split.Q);
  if ((svd.singularValues().array() > 1e-9).count() < k)
    throw GeometryError(ErrorKind::PreconditionUnverified, "mu != {0}: Q does not span (range F_*)^perp");
  const Metric& g2 = frames.RG.metric();
  const RiemannTensor rm = riemann_tensor_at(inst.target.g, frames.fp);
  const Matrix& rp = frames.RP.vectors();
  const std::vector<Matrix> s = shape_matrices(zeta);
  const Vector v1 = split.Q.col(x), v2 = split.Q.col(y);
  const Vector ex = Vector::Unit(r, x);
  NormalRicciReport rep;
  double frame_terms = 0.0, rperp_terms = 0.0, comm_terms = 0.0;
  for (int j = 0; j < r; ++j) {
    const Vector qj = split.Q.col(j);
    const Vector ej = Vector::Unit(r, j);
    rep.lhs += rm.lowered(rp * qj, rp * v1, rp * v2, rp * qj);
    rperp_terms += rperp_form(rperp, r, ej, ex, v2, qj) - rperp_form(rperp, r, split.P.col(j), split.P.col(x), v2, qj);
    comm_terms += commutator_form(s, v2, qj, ej, ex) - commutator_form(s, v2, qj, split.P.col(j), split.P.col(x));
    frame_terms += -v1.dot(v2) * qj.squaredNorm() + qj.dot(v2) * v1.dot(qj);
  }
  const double constant = (1.0 - m + r) * v1.dot(v2);
  rep.rhs_contracted = rperp_terms + comm_terms + frame_terms;
  rep.rhs_equality = rperp_terms + constant;
  rep.rhs_bound = rperp_terms + comm_terms + constant;
  rep.constant_deviation = std::abs(frame_terms - constant);
  rep.residual_contracted = std::abs(rep.lhs - rep.rhs_contracted);
  rep.residual_equality = std::abs(rep.lhs - rep.rhs_equality);
  (void)g2;
  return rep;
}

}  // namespace slantmap
