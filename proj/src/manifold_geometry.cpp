#include "slantmap/manifold_geometry.hpp"

#include <algorithm>
#include <cmath>

#include "slantmap/errors.hpp"

namespace slantmap {

MetricField constant_metric_field(const Matrix& g) {
  MetricField f;
  f.dim = static_cast<int>(g.rows());
  f.components = [g](const Point&) { return g; };
  f.constant = true;
  return f;
}

std::vector<Matrix> metric_partials(const MetricField& field, const Point& p) {
  const int n = field.dim;
  if (p.size() != n) throw GeometryError(ErrorKind::DimensionMismatch, "point does not match metric field");
  if (field.constant) return std::vector<Matrix>(n, Matrix::Zero(n, n));
  if (field.partials) return field.partials(p);
  std::vector<Matrix> d(n);
  const double h = kFirstDerivativeStep;
  for (int k = 0; k < n; ++k) {
    const auto at = [&](double t) {
      Point q = p;
      q[k] += t;
      return field.components(q);
    };
    d[k] = (8.0 * (at(h) - at(-h)) - (at(2.0 * h) - at(-2.0 * h))) / (12.0 * h);
  }
  return d;
}

Vector ChristoffelTable::contract(const Vector& x, const Vector& y) const {
  Vector out = Vector::Zero(n_);
  for (int k = 0; k < n_; ++k)
    for (int i = 0; i < n_; ++i) {
      if (x[i] == 0.0) continue;
      for (int j = 0; j < n_; ++j) out[k] += (*this)(k, i, j) * x[i] * y[j];
    }
  return out;
}

double ChristoffelTable::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double ChristoffelTable::lower_symmetry_defect() const {
  double m = 0.0;
  for (int k = 0; k < n_; ++k)
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) m = std::max(m, std::abs((*this)(k, i, j) - (*this)(k, j, i)));
  return m;
}

ChristoffelTable& ChristoffelTable::operator+=(const ChristoffelTable& o) {
  for (size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ChristoffelTable& ChristoffelTable::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

namespace {

// B_{lij} = d_i g_jl + d_j g_il - d_l g_ij
double first_kind(const std::vector<Matrix>& d, int l, int i, int j) {
  return d[i](j, l) + d[j](i, l) - d[l](i, j);
}

ChristoffelTable assemble(const Matrix& ginv, const std::vector<Matrix>& d) {
  const int n = static_cast<int>(ginv.rows());
  ChristoffelTable gamma(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Vector b(n);
      for (int l = 0; l < n; ++l) b[l] = first_kind(d, l, i, j);
      const Vector c = 0.5 * ginv * b;
      for (int k = 0; k < n; ++k) {
        gamma(k, i, j) = c[k];
        gamma(k, j, i) = c[k];
      }
    }
  return gamma;
}

}  // namespace

ChristoffelTable christoffel_at(const MetricField& field, const Point& p) {
  const int n = field.dim;
  if (field.constant) {
    if (p.size() != n) throw GeometryError(ErrorKind::DimensionMismatch, "point does not match metric field");
    return ChristoffelTable(n);
  }
  const Metric g = field.at(p);
  return assemble(g.inverse(), metric_partials(field, p));
}

std::vector<ChristoffelTable> christoffel_derivatives_at(const MetricField& field, const Point& p) {
  const int n = field.dim;
  std::vector<ChristoffelTable> out(n, ChristoffelTable(n));
  if (field.constant) return out;

  if (field.partials && field.second_partials) {
    const Metric g = field.at(p);
    const Matrix& ginv = g.inverse();
    const std::vector<Matrix> d = field.partials(p);
    const std::vector<Matrix> dd = field.second_partials(p);
    for (int m = 0; m < n; ++m) {
      const Matrix dginv = -ginv * d[m] * ginv;
      std::vector<Matrix> dm(n);
      for (int a = 0; a < n; ++a) dm[a] = dd[static_cast<size_t>(m) * n + a];
      // d_m Gamma = 1/2 (d_m g^{-1}) B + 1/2 g^{-1} d_m B
      ChristoffelTable t = assemble(dginv, d);
      t += assemble(ginv, dm);
      out[m] = t;
    }
    return out;
  }

  const double h = kCurvatureStep;
  for (int m = 0; m < n; ++m) {
    const auto at = [&](double step, double weight) {
      Point q = p;
      q[m] += step;
      ChristoffelTable t = christoffel_at(field, q);
      t *= weight / (12.0 * h);
      return t;
    };
    ChristoffelTable t = at(h, 8.0);
    t += at(-h, -8.0);
    t += at(2.0 * h, -1.0);
    t += at(-2.0 * h, 1.0);
    out[m] = t;
  }
  return out;
}

Vector covariant_derivative(const MetricField& field, const Point& p, const Vector& x,
                            const VectorField& y_field, double h) {
  const Vector y = y_field(p);
  const Vector dy = (y_field(p + h * x) - y_field(p - h * x)) / (2.0 * h);
  return dy + christoffel_at(field, p).contract(x, y);
}

Vector RiemannTensor::apply(const Vector& x, const Vector& y, const Vector& z) const {
  Vector out = Vector::Zero(n_);
  for (int i = 0; i < n_; ++i) {
    if (x[i] == 0.0) continue;
    for (int j = 0; j < n_; ++j) {
      if (y[j] == 0.0) continue;
      for (int k = 0; k < n_; ++k) {
        const double w = x[i] * y[j] * z[k];
        if (w == 0.0) continue;
        for (int l = 0; l < n_; ++l) out[l] += (*this)(l, i, j, k) * w;
      }
    }
  }
  return out;
}

double RiemannTensor::sectional(const Vector& x, const Vector& y) const {
  const double area = g_.norm2(x) * g_.norm2(y) - std::pow(g_.inner(x, y), 2);
  return lowered(x, y, y, x) / area;
}

double RiemannTensor::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

RiemannTensor riemann_tensor_at(const MetricField& field, const Point& p) {
  const int n = field.dim;
  RiemannTensor r(n, field.at(p));
  if (field.constant) return r;
  const ChristoffelTable gamma = christoffel_at(field, p);
  const std::vector<ChristoffelTable> dgamma = christoffel_derivatives_at(field, p);
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double v = dgamma[i](l, j, k) - dgamma[j](l, i, k);
          for (int m = 0; m < n; ++m) v += gamma(l, i, m) * gamma(m, j, k) - gamma(l, j, m) * gamma(m, i, k);
          r(l, i, j, k) = v;
        }
  return r;
}

CurvatureValue riemann_at(const MetricField& field, const Point& p, const Vector& x, const Vector& y,
                          const Vector& z) {
  return {riemann_tensor_at(field, p).apply(x, y, z), x, y, z};
}

}  // namespace slantmap
