#include "slantmap/kenmotsu.hpp"

#include <algorithm>
#include <cmath>

#include "slantmap/errors.hpp"

namespace slantmap {

PointStructure structure_at(const AlmostContactStructure& s, const Point& p) {
  PointStructure ps{s.g.at(p), s.psi(p), s.xi(p), s.eta(p)};
  const int n = s.dim;
  if (ps.g.dim() != n || ps.psi.rows() != n || ps.psi.cols() != n || ps.xi.size() != n || ps.eta.size() != n)
    throw GeometryError(ErrorKind::DimensionMismatch, "structure fields disagree on dimension");
  return ps;
}

const IdentityResidual* StructureReport::find(const std::string& id) const {
  for (const auto& r : residuals)
    if (r.name == id) return &r;
  return nullptr;
}

std::vector<Point> default_probes(int dim, int count, double lo, double hi) {
  static constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
  std::vector<Point> out;
  out.reserve(count);
  for (int k = 1; k <= count; ++k) {
    Point p(dim);
    for (int d = 0; d < dim; ++d) {
      const int base = kPrimes[d % 20];
      double f = 1.0, x = 0.0;
      for (int i = k; i > 0; i /= base) {
        f /= base;
        x += f * (i % base);
      }
      p[d] = lo + (hi - lo) * x;
    }
    out.push_back(p);
  }
  return out;
}

namespace {

void finalize(StructureReport& rep) {
  rep.pass = std::all_of(rep.residuals.begin(), rep.residuals.end(), [](const auto& r) { return r.pass; });
}

void push(StructureReport& rep, const std::string& name, double value, double tol) {
  rep.residuals.push_back({name, value, tol, value < tol});
}

void check_dims(const AlmostContactStructure& s) {
  if (s.dim <= 0 || s.dim % 2 == 0)
    throw GeometryError(ErrorKind::DimensionMismatch, "almost-contact structures live in odd dimension");
  if (s.g.dim != s.dim) throw GeometryError(ErrorKind::DimensionMismatch, "metric dimension differs");
}

}  // namespace

StructureReport check_almost_contact(const AlmostContactStructure& s, const std::vector<Point>& probes,
                                     double tol) {
  check_dims(s);
  StructureReport rep{"almost-contact", {}, probes, false};
  const int n = s.dim;
  double psi2 = 0, psixi = 0, etapsi = 0, etaxi = 0, compat = 0, skew = 0, dual = 0;
  for (const Point& p : probes) {
    const PointStructure ps = structure_at(s, p);
    const Matrix& g = ps.g.matrix();
    const Matrix id = Matrix::Identity(n, n);
    psi2 = std::max(psi2, (ps.psi * ps.psi + id - ps.xi * ps.eta.transpose()).cwiseAbs().maxCoeff());
    psixi = std::max(psixi, (ps.psi * ps.xi).cwiseAbs().maxCoeff());
    etapsi = std::max(etapsi, (ps.eta.transpose() * ps.psi).cwiseAbs().maxCoeff());
    etaxi = std::max(etaxi, std::abs(ps.eta.dot(ps.xi) - 1.0));
    compat = std::max(
        compat, (ps.psi.transpose() * g * ps.psi - g + ps.eta * ps.eta.transpose()).cwiseAbs().maxCoeff());
    skew = std::max(skew, (g * ps.psi + ps.psi.transpose() * g).cwiseAbs().maxCoeff());
    dual = std::max(dual, (ps.eta - g * ps.xi).cwiseAbs().maxCoeff());
  }
  push(rep, "psi_squared", psi2, tol);
  push(rep, "psi_xi", psixi, tol);
  push(rep, "eta_psi", etapsi, tol);
  push(rep, "eta_xi", etaxi, tol);
  push(rep, "metric_compatibility", compat, tol);
  push(rep, "psi_skew", skew, tol);
  push(rep, "eta_dual", dual, tol);
  finalize(rep);
  return rep;
}

StructureReport check_kenmotsu(const AlmostContactStructure& s, const std::vector<Point>& probes, double tol) {
  check_dims(s);
  StructureReport rep{"kenmotsu", {}, probes, false};
  const int n = s.dim;
  const double h = kFirstDerivativeStep;
  double r3 = 0, r4 = 0, r5 = 0;
  for (const Point& p : probes) {
    const PointStructure ps = structure_at(s, p);
    const ChristoffelTable gamma = christoffel_at(s.g, p);
    const RiemannTensor riem = riemann_tensor_at(s.g, p);
    for (int a = 0; a < n; ++a) {
      Point hi = p, lo = p;
      hi[a] += h;
      lo[a] -= h;
      Matrix gamma_a(n, n);  // (Gamma_a)_{kj} = Gamma^k_{aj}
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) gamma_a(k, j) = gamma(k, a, j);
      const Matrix dpsi = (s.psi(hi) - s.psi(lo)) / (2.0 * h);
      const Matrix nabla_psi = dpsi + gamma_a * ps.psi - ps.psi * gamma_a;
      const Vector ea = Vector::Unit(n, a);
      const Vector psi_x = ps.psi.col(a);
      for (int b = 0; b < n; ++b) {
        const Vector expected = ps.g.inner(psi_x, Vector::Unit(n, b)) * ps.xi - ps.eta[b] * psi_x;
        r3 = std::max(r3, (nabla_psi.col(b) - expected).cwiseAbs().maxCoeff());
      }
      const Vector dxi = (s.xi(hi) - s.xi(lo)) / (2.0 * h);
      const Vector nabla_xi = dxi + gamma_a * ps.xi;
      r4 = std::max(r4, (nabla_xi - (ea - ps.eta[a] * ps.xi)).cwiseAbs().maxCoeff());
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const Vector x = Vector::Unit(n, i), y = Vector::Unit(n, j), z = Vector::Unit(n, k);
          const Vector px = ps.psi * x, py = ps.psi * y, pz = ps.psi * z;
          const Vector lhs = riem.apply(px, py, z) - riem.apply(x, y, z);
          const Vector rhs = ps.g.inner(y, z) * x - ps.g.inner(x, z) * y + ps.g.inner(y, pz) * px -
                             ps.g.inner(x, pz) * py;
          r5 = std::max(r5, (lhs - rhs).cwiseAbs().maxCoeff());
        }
  }
  push(rep, "nabla_psi", r3, tol);
  push(rep, "nabla_xi", r4, tol);
  push(rep, "curvature_relation", r5, tol);
  finalize(rep);
  return rep;
}

Vector spaceform_curvature(const SpaceFormParams& params, const PointStructure& s, const Vector& x,
                           const Vector& y, const Vector& z) {
  const double c = params.c;
  const auto g = [&](const Vector& a, const Vector& b) { return s.g.inner(a, b); };
  const double ex = s.eta.dot(x), ey = s.eta.dot(y), ez = s.eta.dot(z);
  const Vector px = s.psi * x, py = s.psi * y, pz = s.psi * z;
  const Vector first = g(y, z) * x - g(x, z) * y;
  const Vector second = ex * ez * y - ey * ez * x + ey * g(x, z) * s.xi - ex * g(y, z) * s.xi -
                        g(px, z) * py + g(py, z) * px + 2.0 * g(py, x) * pz;
  return (c - 3.0) / 4.0 * first + (c + 1.0) / 4.0 * second;
}

Matrix psi_from_table(const std::vector<int>& table, const std::vector<double>& scale) {
  const int n = static_cast<int>(table.size());
  Matrix psi = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const int t = table[i];
    if (t == 0) continue;
    const int target = std::abs(t) - 1;
    if (target >= n) throw GeometryError(ErrorKind::InvalidInput, "psi table index out of range");
    const double s = scale.empty() ? 1.0 : scale.at(i);
    psi(target, i) = (t > 0 ? 1.0 : -1.0) * s;
  }
  return psi;
}

AlmostContactStructure build_warped_kenmotsu(int m, bool analytic_partials) {
  if (m < 1) throw GeometryError(ErrorKind::InvalidInput, "warped model needs m >= 1");
  const int n = 2 * m + 1;
  const int w = n - 1;
  AlmostContactStructure s;
  s.dim = n;
  s.label = "warped-kenmotsu-m" + std::to_string(m);
  s.g.dim = n;
  s.g.components = [n, w](const Point& p) {
    Matrix g = Matrix::Identity(n, n) * std::exp(2.0 * p[w]);
    g(w, w) = 1.0;
    return g;
  };
  if (analytic_partials) {
    s.g.partials = [n, w](const Point& p) {
      std::vector<Matrix> d(n, Matrix::Zero(n, n));
      d[w].diagonal().setConstant(2.0 * std::exp(2.0 * p[w]));
      d[w](w, w) = 0.0;
      return d;
    };
    s.g.second_partials = [n, w](const Point& p) {
      std::vector<Matrix> dd(static_cast<size_t>(n) * n, Matrix::Zero(n, n));
      Matrix& ww = dd[static_cast<size_t>(w) * n + w];
      ww.diagonal().setConstant(4.0 * std::exp(2.0 * p[w]));
      ww(w, w) = 0.0;
      return dd;
    };
  }
  Matrix psi = Matrix::Zero(n, n);
  for (int i = 0; i < m; ++i) {
    psi(m + i, i) = 1.0;   // psi d/du_i = d/dv_i
    psi(i, m + i) = -1.0;  // psi d/dv_i = -d/du_i
  }
  s.psi = [psi](const Point&) { return psi; };
  s.xi = [n, w](const Point&) { return Vector(Vector::Unit(n, w)); };
  s.eta = [n, w](const Point&) { return Vector(Vector::Unit(n, w)); };
  return s;
}

}  // namespace slantmap
