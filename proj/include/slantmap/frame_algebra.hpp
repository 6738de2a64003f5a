#pragma once

#include <Eigen/Dense>
#include <vector>

#include "slantmap/tolerances.hpp"

namespace slantmap {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Symmetric positive-definite bilinear form on a chart tangent space.
class Metric {
 public:
  /// Throws GeometryError(SingularMetric) unless the matrix is symmetric to
  /// `sym_tol` and every eigenvalue exceeds `pd_tol`.
  explicit Metric(Matrix m, double sym_tol = kDefaultTolerances.sym,
                  double pd_tol = kDefaultTolerances.pd);

  static Metric identity(int n) { return Metric(Matrix::Identity(n, n)); }

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  const Matrix& inverse() const { return inv_; }

  double inner(const Vector& a, const Vector& b) const { return a.dot(m_ * b); }
  double norm2(const Vector& a) const { return inner(a, a); }
  double norm(const Vector& a) const;

 private:
  Matrix m_;
  Matrix inv_;
};

/// Linearly independent vectors (as columns) together with the metric that
/// measures them.
struct SubspaceBasis {
  Matrix vectors;
  Metric metric;
};

/// Columns are g-orthonormal.
class OrthonormalFrame {
 public:
  OrthonormalFrame(Matrix vectors, Metric metric)
      : vectors_(std::move(vectors)), metric_(std::move(metric)) {}

  int size() const { return static_cast<int>(vectors_.cols()); }
  int ambient_dim() const { return static_cast<int>(vectors_.rows()); }
  const Matrix& vectors() const { return vectors_; }
  Vector vector(int i) const { return vectors_.col(i); }
  const Metric& metric() const { return metric_; }

  /// Components g(v, e_i).
  Vector coefficients(const Vector& v) const { return vectors_.transpose() * (metric_.matrix() * v); }

  /// max |g(e_i, e_j) - delta_ij|.
  double orthonormality_defect() const;

 private:
  Matrix vectors_;
  Metric metric_;
};

/// Determinant of the Gram matrix of the columns.
double gram_determinant(const Matrix& vectors, const Metric& metric);

/// Modified Gram-Schmidt with one re-orthogonalization pass. The first output
/// vector is the normalized first input vector.
OrthonormalFrame gram_schmidt(const SubspaceBasis& basis, double rank_tol = kDefaultTolerances.rank);

/// Orthonormal frame of the metric-orthogonal complement of span(basis),
/// completed from the ambient standard basis in index order.
OrthonormalFrame orthogonal_complement(const SubspaceBasis& basis, int ambient_dim,
                                       double rank_tol = kDefaultTolerances.rank);

/// sum_i g(v, e_i) e_i
Vector project(const Vector& v, const OrthonormalFrame& frame);

/// Operator A^* with g_dst(A x, y) = g_src(x, A^* y). `op` maps src -> dst.
Matrix adjoint(const Matrix& op, const Metric& g_src, const Metric& g_dst);

/// ab - ba
Matrix commutator(const Matrix& a, const Matrix& b);

}  // namespace slantmap
