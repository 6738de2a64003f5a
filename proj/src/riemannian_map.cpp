#include "slantmap/riemannian_map.hpp"

#include <algorithm>
#include <cmath>

#include "slantmap/errors.hpp"

namespace slantmap {

namespace {

Matrix jacobian_at(const RiemannianMapInstance& inst, const Point& p) {
  if (inst.jacobian) return inst.jacobian(p);
  const int n = inst.source_dim();
  const int m = inst.target_dim();
  const double h = kJacobianStep;
  Matrix j(m, n);
  for (int k = 0; k < n; ++k) {
    Point a = p, b = p;
    a[k] += h;
    b[k] -= h;
    j.col(k) = (inst.map(a) - inst.map(b)) / (2.0 * h);
  }
  return j;
}

Vector hessian_term(const RiemannianMapInstance& inst, const Point& p, const Vector& x, const Vector& y) {
  const int m = inst.target_dim();
  if (inst.affine) return Vector::Zero(m);
  if (inst.hessian) {
    const std::vector<Matrix> hs = inst.hessian(p);
    Vector out(m);
    for (int k = 0; k < m; ++k) out[k] = x.dot(hs[k] * y);
    return out;
  }
  const double h = kCurvatureStep;
  return (inst.map(p + h * x + h * y) - inst.map(p + h * x - h * y) - inst.map(p - h * x + h * y) +
          inst.map(p - h * x - h * y)) /
         (4.0 * h * h);
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

Differential differential_at(const RiemannianMapInstance& inst, const Point& p) {
  if (p.size() != inst.source_dim())
    throw GeometryError(ErrorKind::DimensionMismatch, "base point does not match source dimension");
  Differential d;
  d.jacobian = jacobian_at(inst, p);
  if (d.jacobian.rows() != inst.target_dim() || d.jacobian.cols() != inst.source_dim())
    throw GeometryError(ErrorKind::DimensionMismatch, "jacobian shape differs from chart dimensions");
  Eigen::JacobiSVD<Matrix> svd(d.jacobian);
  d.singular_values = svd.singularValues();
  d.rank = static_cast<int>((d.singular_values.array() > kSingularValueFloor).count());
  const int bound = std::min(inst.source_dim(), inst.target_dim());
  if (d.rank <= 0 || d.rank >= bound)
    throw GeometryError(ErrorKind::RankOutOfRange,
                        "rank " + std::to_string(d.rank) + " outside (0, " + std::to_string(bound) + ")");
  return d;
}

OrthonormalFrame normal_frame_at(const RiemannianMapInstance& inst, const Point& x, int rank,
                                 const Matrix* reference) {
  const Matrix j = jacobian_at(inst, x);
  Eigen::JacobiSVD<Matrix> svd(j, Eigen::ComputeThinU);
  const Matrix range = svd.matrixU().leftCols(rank);
  const Metric g2 = inst.target.g.at(inst.map(x));
  if (!reference) return orthogonal_complement(SubspaceBasis{range, g2}, inst.target_dim());
  const OrthonormalFrame on = gram_schmidt(SubspaceBasis{range, g2});
  Matrix normal = *reference;
  for (int a = 0; a < normal.cols(); ++a) normal.col(a) -= project(normal.col(a), on);
  return gram_schmidt(SubspaceBasis{normal, g2});
}

MapFrames build_frames(const RiemannianMapInstance& inst, const FrameOptions& opts) {
  const Point& p = inst.base;
  const Differential d = differential_at(inst, p);
  const int n = inst.source_dim();
  const int r = d.rank;
  const Metric g1 = inst.source.at(p);
  const Point fp = inst.map(p);
  const Metric g2 = inst.target.g.at(fp);
  const Matrix& j = d.jacobian;

  Eigen::JacobiSVD<Matrix> svd(j, Eigen::ComputeFullV);
  const Matrix kernel = svd.matrixV().rightCols(n - r);
  OrthonormalFrame vframe = gram_schmidt(SubspaceBasis{kernel, g1});

  Matrix hvec;
  if (inst.horizontal_hint) {
    const Matrix& hint = *inst.horizontal_hint;
    if (hint.rows() != n || hint.cols() != r)
      throw GeometryError(ErrorKind::DimensionMismatch, "horizontal hint must have rank-many columns");
    const double leak = max_abs(vframe.vectors().transpose() * g1.matrix() * hint);
    if (leak > 1e-8) throw GeometryError(ErrorKind::InvalidInput, "horizontal hint is not orthogonal to ker F_*");
    hvec = gram_schmidt(SubspaceBasis{hint, g1}).vectors();
  } else {
    hvec = orthogonal_complement(SubspaceBasis{kernel, g1}, n).vectors();
  }

  MapFrames f{p, fp, j, r, OrthonormalFrame(hvec, g1), vframe, OrthonormalFrame(j * hvec, g2),
              normal_frame_at(inst, p, r)};

  const Vector xi = inst.target.xi(fp);
  const OrthonormalFrame range_on = gram_schmidt(SubspaceBasis{j * hvec, g2});
  f.xi_range_residual = g2.norm(xi - project(xi, range_on));
  f.xi_in_range = f.xi_range_residual < opts.xi_tol;

  if (f.xi_in_range) {
    // Put the preimage of xi last, keeping the remaining order.
    const Matrix jh = j * hvec;
    const Vector c = jh.colPivHouseholderQr().solve(xi);
    const Vector pre = hvec * c;
    const Vector unit = pre / g1.norm(pre);
    const bool already_last = (j * hvec.col(r - 1) - xi).norm() < opts.xi_tol;
    if (!already_last) {
      int drop = 0;
      c.cwiseAbs().maxCoeff(&drop);
      Matrix rest(n, r - 1);
      for (int i = 0, k = 0; i < r; ++i) {
        if (i == drop) continue;
        const Vector v = hvec.col(i);
        rest.col(k++) = v - g1.inner(v, unit) * unit;
      }
      Matrix reordered(n, r);
      if (r > 1) reordered.leftCols(r - 1) = gram_schmidt(SubspaceBasis{rest, g1}).vectors();
      reordered.col(r - 1) = unit;
      hvec = reordered;
    }
  }

  f.H = OrthonormalFrame(hvec, g1);
  const Matrix image = j * hvec;
  f.isometry_defect = max_abs(image.transpose() * g2.matrix() * image - Matrix::Identity(r, r));
  if (f.isometry_defect > opts.iso_tol) {
    if (opts.require_isometry)
      throw GeometryError(ErrorKind::IsometryViolation,
                          "g2(F_* e_i, F_* e_j) deviates from delta_ij by " + std::to_string(f.isometry_defect));
    f.RG = gram_schmidt(SubspaceBasis{image, g2});
  } else {
    f.RG = OrthonormalFrame(image, g2);
  }
  return f;
}

SffTensor::SffTensor(int r_, int normal_dim) : r(r_), zeta(normal_dim, Matrix::Zero(r_, r_)) {}

double SffTensor::norm2() const {
  double s = 0.0;
  for (const auto& z : zeta) s += z.squaredNorm();
  return s;
}

Vector SffTensor::trace() const {
  Vector t(normal_dim());
  for (int a = 0; a < normal_dim(); ++a) t[a] = zeta[a].trace();
  return t;
}

double SffTensor::trace_norm2() const { return trace().squaredNorm(); }

Vector second_fundamental_form_at(const RiemannianMapInstance& inst, const Point& p, const Vector& x,
                                  const Vector& y) {
  const Matrix j = jacobian_at(inst, p);
  const Point fp = inst.map(p);
  Vector b = hessian_term(inst, p, x, y);
  if (!inst.target.g.constant) b += christoffel_at(inst.target.g, fp).contract(j * x, j * y);
  if (!inst.source.constant) b -= j * christoffel_at(inst.source, p).contract(x, y);
  return b;
}

SffTensor second_fundamental_form(const RiemannianMapInstance& inst, const MapFrames& frames) {
  const int r = frames.r;
  const int k = frames.normal_dim();
  SffTensor out(r, k);
  const Metric& g2 = frames.RP.metric();
  const Point& p = frames.p;
  const Matrix& j = frames.jacobian;
  const bool flat = inst.affine && inst.source.constant && inst.target.g.constant;
  if (flat) return out;
  const ChristoffelTable gt = christoffel_at(inst.target.g, frames.fp);
  const ChristoffelTable gs = christoffel_at(inst.source, p);
  for (int i = 0; i < r; ++i)
    for (int l = 0; l < r; ++l) {
      const Vector x = frames.H.vector(i), y = frames.H.vector(l);
      const Vector b = hessian_term(inst, p, x, y) + gt.contract(j * x, j * y) - j * gs.contract(x, y);
      for (int a = 0; a < k; ++a) out(a, i, l) = g2.inner(b, frames.RP.vector(a));
      out.range_component = std::max(out.range_component, g2.norm(project(b, frames.RG)));
    }
  for (int a = 0; a < k; ++a) out.symmetry_defect = std::max(out.symmetry_defect, max_abs(out.zeta[a] - out.zeta[a].transpose()));
  return out;
}

std::vector<Matrix> shape_matrices(const SffTensor& zeta) {
  std::vector<Matrix> s;
  s.reserve(zeta.normal_dim());
  for (const auto& z : zeta.zeta) s.push_back(z.transpose());
  return s;
}

ShapeOperator shape_operator(const RiemannianMapInstance& inst, const MapFrames& frames, const SffTensor& zeta,
                             int alpha, double tol) {
  if (alpha < 0 || alpha >= frames.normal_dim())
    throw GeometryError(ErrorKind::InvalidInput, "normal index out of range");
  const int r = frames.r;
  ShapeOperator s;
  s.alpha = alpha;
  s.duality = zeta.zeta[alpha].transpose();
  s.independent = Matrix::Zero(r, r);
  const Metric& g2 = frames.RP.metric();
  const Vector v = frames.RP.vector(alpha);
  const bool flat = inst.affine && inst.source.constant && inst.target.g.constant;
  const double h = kFirstDerivativeStep;
  for (int i = 0; i < r; ++i) {
    const Vector x = frames.H.vector(i);
    Vector nabla = Vector::Zero(inst.target_dim());
    if (!flat) {
      const Vector vp = normal_frame_at(inst, frames.p + h * x, r, &frames.RP.vectors()).vector(alpha);
      const Vector vm = normal_frame_at(inst, frames.p - h * x, r, &frames.RP.vectors()).vector(alpha);
      nabla = (vp - vm) / (2.0 * h);
      if (!inst.target.g.constant)
        nabla += christoffel_at(inst.target.g, frames.fp).contract(frames.jacobian * x, v);
    }
    for (int l = 0; l < r; ++l) s.independent(l, i) = -g2.inner(nabla, frames.RG.vector(l));
  }
  s.discrepancy = max_abs(s.duality - s.independent);
  if (s.discrepancy > tol)
    throw GeometryError(ErrorKind::DualityViolation,
                        "shape operator routes differ by " + std::to_string(s.discrepancy));
  return s;
}

GaussTerms gauss_equation_check(const RiemannianMapInstance& inst, const MapFrames& frames,
                                const SffTensor& zeta, int x, int y, int z, int h) {
  const Matrix& j = frames.jacobian;
  const Vector ex = frames.H.vector(x), ey = frames.H.vector(y), ez = frames.H.vector(z), eh = frames.H.vector(h);
  GaussTerms t;
  t.target_curvature = riemann_tensor_at(inst.target.g, frames.fp).lowered(j * ex, j * ey, j * ez, j * eh);
  t.source_curvature = riemann_tensor_at(inst.source, frames.p).lowered(ex, ey, ez, eh);
  for (int a = 0; a < zeta.normal_dim(); ++a)
    t.sff_terms += zeta(a, x, z) * zeta(a, y, h) - zeta(a, y, z) * zeta(a, x, h);
  t.residual = std::abs(t.target_curvature - (t.source_curvature + t.sff_terms));
  return t;
}

namespace {

// Normal part of nabla_dir v_a along F at the source point x.
Vector normal_derivative(const RiemannianMapInstance& inst, const Point& x, const Vector& dir, int a, int rank,
                         double h, const Matrix& reference) {
  const OrthonormalFrame nf = normal_frame_at(inst, x, rank, &reference);
  const Vector v = nf.vector(a);
  Vector nabla = (normal_frame_at(inst, x + h * dir, rank, &reference).vector(a) -
                  normal_frame_at(inst, x - h * dir, rank, &reference).vector(a)) /
                 (2.0 * h);
  if (!inst.target.g.constant)
    nabla += christoffel_at(inst.target.g, inst.map(x)).contract(jacobian_at(inst, x) * dir, v);
  return project(nabla, nf);
}

}  // namespace

double normal_curvature(const RiemannianMapInstance& inst, const MapFrames& frames, int i, int j, int a, int b) {
  const int r = frames.r;
  const Vector ei = frames.H.vector(i), ej = frames.H.vector(j);
  const double inner = kFirstDerivativeStep;
  const double outer = kCurvatureStep;
  const auto second = [&](const Vector& d1, const Vector& d2) {
    const Vector w = normal_derivative(inst, frames.p, d2, a, r, inner, frames.RP.vectors());
    Vector nabla = (normal_derivative(inst, frames.p + outer * d1, d2, a, r, inner, frames.RP.vectors()) -
                    normal_derivative(inst, frames.p - outer * d1, d2, a, r, inner, frames.RP.vectors())) /
                   (2.0 * outer);
    if (!inst.target.g.constant) nabla += christoffel_at(inst.target.g, frames.fp).contract(frames.jacobian * d1, w);
    return nabla;
  };
  const Vector diff = second(ei, ej) - second(ej, ei);
  return frames.RP.metric().inner(diff, frames.RP.vector(b));
}

RicciTerms ricci_equation_check(const RiemannianMapInstance& inst, const MapFrames& frames, const SffTensor& zeta,
                                int x, int y, int v1, int v2) {
  const Matrix& j = frames.jacobian;
  const Vector ex = frames.H.vector(x), ey = frames.H.vector(y);
  RicciTerms t;
  t.target_curvature = riemann_tensor_at(inst.target.g, frames.fp)
                           .lowered(j * ex, j * ey, frames.RP.vector(v1), frames.RP.vector(v2));
  t.normal_curvature = normal_curvature(inst, frames, x, y, v1, v2);
  const std::vector<Matrix> s = shape_matrices(zeta);
  t.commutator = commutator(s[v2], s[v1])(y, x);
  t.residual = std::abs(t.target_curvature - t.normal_curvature - t.commutator);
  return t;
}

}  // namespace slantmap
