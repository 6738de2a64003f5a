#include "slantmap/frame_algebra.hpp"

#include <cmath>
#include <string>

#include "slantmap/errors.hpp"

namespace slantmap {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::SingularMetric: return "SingularMetric";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::RankOutOfRange: return "RankOutOfRange";
    case ErrorKind::IsometryViolation: return "IsometryViolation";
    case ErrorKind::DualityViolation: return "DualityViolation";
    case ErrorKind::ClusterAmbiguity: return "ClusterAmbiguity";
    case ErrorKind::SpectrumOutOfRange: return "SpectrumOutOfRange";
    case ErrorKind::Unclassifiable: return "Unclassifiable";
    case ErrorKind::PreconditionUnverified: return "PreconditionUnverified";
    case ErrorKind::InternalInconsistency: return "InternalInconsistency";
    case ErrorKind::IncompatibleParameters: return "IncompatibleParameters";
    case ErrorKind::FixtureMissing: return "FixtureMissing";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

Metric::Metric(Matrix m, double sym_tol, double pd_tol) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols())
    throw GeometryError(ErrorKind::SingularMetric, "metric must be a non-empty square matrix");
  if (!m_.allFinite()) throw GeometryError(ErrorKind::SingularMetric, "non-finite metric entry");
  if ((m_ - m_.transpose()).cwiseAbs().maxCoeff() > sym_tol)
    throw GeometryError(ErrorKind::SingularMetric, "metric is not symmetric");
  m_ = 0.5 * (m_ + m_.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() <= pd_tol)
    throw GeometryError(ErrorKind::SingularMetric,
                        "metric is not positive definite (min eigenvalue " +
                            std::to_string(es.eigenvalues().minCoeff()) + ")");
  inv_ = m_.ldlt().solve(Matrix::Identity(m_.rows(), m_.cols()));
}

double Metric::norm(const Vector& a) const { return std::sqrt(std::max(0.0, norm2(a))); }

double OrthonormalFrame::orthonormality_defect() const {
  if (vectors_.cols() == 0) return 0.0;
  const Matrix gram = vectors_.transpose() * metric_.matrix() * vectors_;
  return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

double gram_determinant(const Matrix& vectors, const Metric& metric) {
  if (vectors.cols() == 0) return 1.0;
  return (vectors.transpose() * metric.matrix() * vectors).determinant();
}

namespace {

// Removes the components of v along the first `count` columns of q, twice.
void orthogonalize_against(Vector& v, const Matrix& q, int count, const Metric& g) {
  for (int pass = 0; pass < 2; ++pass)
    for (int j = 0; j < count; ++j) v -= g.inner(v, q.col(j)) * q.col(j);
}

}  // namespace

OrthonormalFrame gram_schmidt(const SubspaceBasis& basis, double rank_tol) {
  const Matrix& a = basis.vectors;
  const Metric& g = basis.metric;
  if (a.rows() != g.dim())
    throw GeometryError(ErrorKind::DimensionMismatch, "basis vectors do not match metric dimension");
  if (!a.allFinite()) throw GeometryError(ErrorKind::RankDeficient, "non-finite basis vector");
  if (gram_determinant(a, g) <= rank_tol)
    throw GeometryError(ErrorKind::RankDeficient, "basis is linearly dependent");

  Matrix q(a.rows(), a.cols());
  for (int k = 0; k < a.cols(); ++k) {
    Vector v = a.col(k);
    orthogonalize_against(v, q, k, g);
    const double n = g.norm(v);
    if (n <= 0.0) throw GeometryError(ErrorKind::RankDeficient, "vanishing residual in Gram-Schmidt");
    q.col(k) = v / n;
  }
  return OrthonormalFrame(std::move(q), g);
}

OrthonormalFrame orthogonal_complement(const SubspaceBasis& basis, int ambient_dim, double rank_tol) {
  const Metric& g = basis.metric;
  if (g.dim() != ambient_dim)
    throw GeometryError(ErrorKind::DimensionMismatch, "metric does not match ambient dimension");
  const int k = static_cast<int>(basis.vectors.cols());
  if (k >= ambient_dim)
    throw GeometryError(ErrorKind::RankDeficient, "input spans the whole ambient space");

  Matrix q(ambient_dim, ambient_dim);
  int filled = 0;
  if (k > 0) {
    const OrthonormalFrame span = gram_schmidt(basis, rank_tol);
    q.leftCols(k) = span.vectors();
    filled = k;
  }
  for (int i = 0; i < ambient_dim && filled < ambient_dim; ++i) {
    Vector v = Vector::Unit(ambient_dim, i);
    const double before = g.norm(v);
    orthogonalize_against(v, q, filled, g);
    const double after = g.norm(v);
    if (after <= 1e-6 * before) continue;
    q.col(filled++) = v / after;
  }
  if (filled != ambient_dim)
    throw GeometryError(ErrorKind::RankDeficient, "could not complete the complement");
  return OrthonormalFrame(q.rightCols(ambient_dim - k), g);
}

Vector project(const Vector& v, const OrthonormalFrame& frame) {
  return frame.vectors() * frame.coefficients(v);
}

Matrix adjoint(const Matrix& op, const Metric& g_src, const Metric& g_dst) {
  if (op.cols() != g_src.dim() || op.rows() != g_dst.dim())
    throw GeometryError(ErrorKind::DimensionMismatch, "operator does not match metric dimensions");
  return g_src.inverse() * op.transpose() * g_dst.matrix();
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw GeometryError(ErrorKind::DimensionMismatch, "commutator needs equal square operators");
  return a * b - b * a;
}

}  // namespace slantmap
