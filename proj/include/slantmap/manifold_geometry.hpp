#pragma once

#include <functional>
#include <vector>

#include "slantmap/frame_algebra.hpp"

namespace slantmap {

using Point = Eigen::VectorXd;
using VectorField = std::function<Vector(const Point&)>;

/// Metric given componentwise over a coordinate chart.
///
/// `partials(p)[k]` is the matrix of d g_ij / dx^k; `second_partials(p)[a*n+b]`
/// is d^2 g_ij / dx^a dx^b. Either callback may be empty, in which case central
/// differences are used. A `constant` field short-circuits every derivative to
/// an exact zero.
struct MetricField {
  int dim = 0;
  std::function<Matrix(const Point&)> components;
  std::function<std::vector<Matrix>(const Point&)> partials;
  std::function<std::vector<Matrix>(const Point&)> second_partials;
  bool constant = false;

  Metric at(const Point& p) const { return Metric(components(p)); }
  bool analytic() const { return static_cast<bool>(partials); }
};

MetricField constant_metric_field(const Matrix& g);

/// d g / dx^k at p, analytic when available.
std::vector<Matrix> metric_partials(const MetricField& field, const Point& p);

/// Gamma^k_{ij} at a point, stored as n*n*n values.
class ChristoffelTable {
 public:
  explicit ChristoffelTable(int n) : n_(n), data_(static_cast<size_t>(n) * n * n, 0.0) {}

  int dim() const { return n_; }
  double& operator()(int k, int i, int j) { return data_[(static_cast<size_t>(k) * n_ + i) * n_ + j]; }
  double operator()(int k, int i, int j) const { return data_[(static_cast<size_t>(k) * n_ + i) * n_ + j]; }

  /// Gamma^k_{ij} x^i y^j
  Vector contract(const Vector& x, const Vector& y) const;

  double max_abs() const;
  /// max |Gamma^k_{ij} - Gamma^k_{ji}|
  double lower_symmetry_defect() const;

  ChristoffelTable& operator+=(const ChristoffelTable& o);
  ChristoffelTable& operator*=(double s);

 private:
  int n_;
  std::vector<double> data_;
};

/// Gamma^k_{ij} = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij).
ChristoffelTable christoffel_at(const MetricField& field, const Point& p);

/// d_m Gamma^k_{ij} for m = 0..n-1. Analytic when both partial callbacks are
/// present, otherwise central differences of christoffel_at with step
/// kCurvatureStep.
std::vector<ChristoffelTable> christoffel_derivatives_at(const MetricField& field, const Point& p);

/// (nabla_X Y)^k = X^i d_i Y^k + Gamma^k_{ij} X^i Y^j, the directional
/// derivative by central differences with step h.
Vector covariant_derivative(const MetricField& field, const Point& p, const Vector& x,
                            const VectorField& y_field, double h = kFirstDerivativeStep);

/// Riemann tensor R^l_{ijk} at a point, with
/// R(d_i, d_j) d_k = R^l_{ijk} d_l = (nabla_i nabla_j - nabla_j nabla_i) d_k.
class RiemannTensor {
 public:
  RiemannTensor(int n, Metric g) : n_(n), g_(std::move(g)), data_(static_cast<size_t>(n) * n * n * n, 0.0) {}

  int dim() const { return n_; }
  const Metric& metric() const { return g_; }
  double& operator()(int l, int i, int j, int k) { return data_[idx(l, i, j, k)]; }
  double operator()(int l, int i, int j, int k) const { return data_[idx(l, i, j, k)]; }

  /// R(X,Y)Z
  Vector apply(const Vector& x, const Vector& y, const Vector& z) const;
  /// g(R(X,Y)Z, H)
  double lowered(const Vector& x, const Vector& y, const Vector& z, const Vector& h) const {
    return g_.inner(apply(x, y, z), h);
  }
  /// K(X,Y) = g(R(X,Y)Y,X) / (|X|^2|Y|^2 - g(X,Y)^2)
  double sectional(const Vector& x, const Vector& y) const;
  double max_abs() const;

 private:
  size_t idx(int l, int i, int j, int k) const {
    return ((static_cast<size_t>(l) * n_ + i) * n_ + j) * n_ + k;
  }
  int n_;
  Metric g_;
  std::vector<double> data_;
};

/// R^l_{ijk} = d_i Gamma^l_{jk} - d_j Gamma^l_{ik} + Gamma^l_{im} Gamma^m_{jk} - Gamma^l_{jm} Gamma^m_{ik}
RiemannTensor riemann_tensor_at(const MetricField& field, const Point& p);

struct CurvatureValue {
  Vector value;  // R(X,Y)Z
  Vector x, y, z;
};

CurvatureValue riemann_at(const MetricField& field, const Point& p, const Vector& x, const Vector& y,
                          const Vector& z);

}  // namespace slantmap
