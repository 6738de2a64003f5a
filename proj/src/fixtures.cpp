#include "slantmap/fixtures.hpp"

#include <cmath>

#include "slantmap/errors.hpp"

namespace slantmap {

AlmostContactStructure constant_structure(const std::vector<double>& diag, const std::vector<int>& psi_table,
                                          int xi_index, const std::string& label) {
  const int n = static_cast<int>(diag.size());
  if (static_cast<int>(psi_table.size()) != n || xi_index < 0 || xi_index >= n)
    throw GeometryError(ErrorKind::DimensionMismatch, "structure tables disagree on dimension");
  Matrix g = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) g(i, i) = diag[i];
  const Matrix psi = psi_from_table(psi_table);
  const Vector xi = Vector::Unit(n, xi_index);
  const Vector eta = g * xi;
  AlmostContactStructure s;
  s.dim = n;
  s.g = constant_metric_field(g);
  s.psi = [psi](const Point&) { return psi; };
  s.xi = [xi](const Point&) { return xi; };
  s.eta = [eta](const Point&) { return eta; };
  s.label = label;
  return s;
}

RiemannianMapInstance pulled_back_linear_instance(const AlmostContactStructure& target, const Vector& q0,
                                                  const Matrix& a, const Point& base, const std::string& label) {
  const int n = static_cast<int>(a.cols());
  if (a.rows() != target.dim || q0.size() != target.dim || base.size() != n)
    throw GeometryError(ErrorKind::DimensionMismatch, "linear map shape differs from charts");
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const int rank = static_cast<int>((svd.singularValues().array() > kSingularValueFloor).count());
  const Matrix k = svd.matrixV().rightCols(n - rank);
  const Matrix kk = k * k.transpose();

  RiemannianMapInstance inst;
  inst.target = target;
  inst.map = [q0, a](const Point& x) { return Point(q0 + a * x); };
  inst.jacobian = [a](const Point&) { return a; };
  inst.affine = true;
  inst.base = base;
  inst.label = label;

  const MetricField g2 = target.g;
  inst.source.dim = n;
  if (g2.constant) {
    inst.source = constant_metric_field(a.transpose() * g2.components(q0) * a + kk);
    return inst;
  }
  inst.source.components = [g2, q0, a, kk](const Point& x) {
    return Matrix(a.transpose() * g2.components(q0 + a * x) * a + kk);
  };
  if (g2.partials) {
    inst.source.partials = [g2, q0, a, n](const Point& x) {
      const std::vector<Matrix> d = g2.partials(q0 + a * x);
      std::vector<Matrix> out(n);
      for (int c = 0; c < n; ++c) {
        Matrix s = Matrix::Zero(a.rows(), a.rows());
        for (int l = 0; l < a.rows(); ++l) s += a(l, c) * d[l];
        out[c] = a.transpose() * s * a;
      }
      return out;
    };
  }
  if (g2.partials && g2.second_partials) {
    inst.source.second_partials = [g2, q0, a, n](const Point& x) {
      const int m = static_cast<int>(a.rows());
      const std::vector<Matrix> dd = g2.second_partials(q0 + a * x);
      std::vector<Matrix> out(static_cast<size_t>(n) * n);
      for (int c = 0; c < n; ++c)
        for (int e = 0; e < n; ++e) {
          Matrix s = Matrix::Zero(m, m);
          for (int l = 0; l < m; ++l)
            for (int t = 0; t < m; ++t) {
              const double w = a(l, c) * a(t, e);
              if (w != 0.0) s += w * dd[static_cast<size_t>(l) * m + t];
            }
          out[static_cast<size_t>(c) * n + e] = a.transpose() * s * a;
        }
      return out;
    };
  }
  return inst;
}

namespace {

Matrix haar_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Matrix z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = nd(rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0) q.col(i) *= -1.0;
  return q;
}

}  // namespace

RiemannianMapInstance random_warped_instance(const RandomMapOptions& opts, std::mt19937_64& rng) {
  const AlmostContactStructure target = build_warped_kenmotsu(opts.m);
  const int m = target.dim;
  const int n = opts.source_dim;
  const int r = opts.rank;
  if (r <= 0 || r >= std::min(n, m)) throw GeometryError(ErrorKind::RankOutOfRange, "random rank out of range");
  std::uniform_real_distribution<double> box(0.1, 1.1);
  std::normal_distribution<double> nd;
  Vector q0(m);
  for (int i = 0; i < m; ++i) q0[i] = box(rng);
  const Metric g2 = target.g.at(q0);

  Matrix f(m, r);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < m; ++k) f(k, i) = nd(rng);
  if (opts.xi == XiPlacement::Range) f.col(r - 1) = target.xi(q0);
  // Orthonormalize in reverse so that xi stays a frame vector.
  Matrix rev = f.rowwise().reverse();
  rev = gram_schmidt(SubspaceBasis{rev, g2}).vectors();
  f = rev.rowwise().reverse();
  if (opts.xi == XiPlacement::Normal) {
    // Push xi out of the range.
    const Vector xi = target.xi(q0);
    for (int i = 0; i < r; ++i) f.col(i) -= g2.inner(f.col(i), xi) * xi;
    f = gram_schmidt(SubspaceBasis{f, g2}).vectors();
  }
  const Matrix w = haar_orthogonal(n, rng);
  const Matrix a = f * w.leftCols(r).transpose();
  return pulled_back_linear_instance(target, q0, a, Point::Zero(n),
                                     "random-warped-m" + std::to_string(opts.m));
}

RiemannianMapInstance example_bislant_7(double v1_weight, double v2_weight, const std::string& label) {
  // (u1, u2, u3, v1, v2, v3, w)
  const AlmostContactStructure target =
      constant_structure({1.0, 4.0 / 9.0, 4.0 / 9.0, v1_weight, v2_weight, 1.0, 1.0}, {2, -1, 6, 5, -4, -3, 0}, 6,
                         label + "-target");
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
  Matrix a = Matrix::Zero(7, 7);
  a(0, 0) = 1.0;
  a(1, 2) = 1.0;
  a(1, 3) = -1.0 / s2;
  a(2, 2) = 1.0 / s2;
  a(2, 3) = -0.5;
  a(3, 4) = -1.0 / s3;
  a(3, 5) = 1.0;
  a(4, 4) = 1.0 / s6;
  a(4, 5) = -1.0 / s2;
  a(6, 6) = 1.0;
  RiemannianMapInstance inst;
  inst.source = constant_metric_field(Matrix::Identity(7, 7));
  inst.target = target;
  inst.map = [a](const Point& x) { return Point(a * x); };
  inst.jacobian = [a](const Point&) { return a; };
  inst.affine = true;
  inst.base = Point::Constant(7, 0.5);
  Matrix hint = Matrix::Zero(7, 4);
  hint(0, 0) = 1.0;
  hint(2, 1) = 1.0 / s2;
  hint(3, 1) = -0.5;
  hint(4, 2) = 1.0 / 3.0;
  hint(5, 2) = -1.0 / s3;
  hint(6, 3) = 1.0;
  inst.horizontal_hint = hint;
  inst.label = label;
  return inst;
}

RiemannianMapInstance example_bislant_7_literal() {
  return example_bislant_7(3.0 / 16.0, 9.0 / 16.0, "hemislant-7d-literal");
}

RiemannianMapInstance example_bislant_9(double alpha, double beta, double gamma) {
  if (beta == 0.0 || gamma == 0.0)
    throw GeometryError(ErrorKind::IncompatibleParameters, "beta and gamma must be nonzero");
  // (u1, u2, u3, u4, v1, v2, v3, v4, w)
  const double k = 1.0 / (beta * beta + gamma * gamma);
  const AlmostContactStructure target =
      constant_structure({1.0, 1.0, 0.5, 0.5, 1.0, 1.0, 0.5 * k, 0.5 * k, 1.0}, {3, 4, -1, -2, 7, 8, -5, -6, 0}, 8,
                         "bislant-9d-target");
  Matrix a = Matrix::Zero(9, 9);
  a(0, 0) = 1.0;
  a(2, 2) = std::sin(alpha);
  a(2, 3) = -std::sin(alpha);
  a(3, 2) = std::cos(alpha);
  a(3, 3) = -std::cos(alpha);
  a(5, 5) = 1.0;
  a(6, 6) = beta;
  a(6, 7) = beta;
  a(7, 6) = gamma;
  a(7, 7) = gamma;
  a(8, 8) = 1.0;
  RiemannianMapInstance inst;
  inst.source = constant_metric_field(Matrix::Identity(9, 9));
  inst.target = target;
  inst.map = [a](const Point& x) { return Point(a * x); };
  inst.jacobian = [a](const Point&) { return a; };
  inst.affine = true;
  inst.base = Point::Constant(9, 0.5);
  Matrix hint = Matrix::Zero(9, 5);
  hint(0, 0) = 1.0;
  hint(2, 1) = 1.0;
  hint(3, 1) = -1.0;
  hint(5, 2) = 1.0;
  hint(6, 3) = 1.0;
  hint(7, 3) = 1.0;
  hint(8, 4) = 1.0;
  inst.horizontal_hint = hint;
  inst.label = "bislant-9d";
  return inst;
}

RiemannianMapInstance totally_geodesic_instance() {
  Matrix a = Matrix::Zero(3, 3);
  a(0, 0) = 1.0;
  a(2, 2) = 1.0;
  return pulled_back_linear_instance(build_warped_kenmotsu(1), Vector::Zero(3), a, Point::Constant(3, 0.5),
                                     "totally-geodesic");
}

RiemannianMapInstance bislant_warped_instance(const BiSlantMapOptions& opts) {
  const int pairs = opts.r1 + opts.r2;
  if (opts.r1 < 0 || opts.r2 < 0 || pairs == 0)
    throw GeometryError(ErrorKind::IncompatibleParameters, "need at least one slant pair");
  const int m = 2 * pairs;
  const AlmostContactStructure target = build_warped_kenmotsu(m);
  const int t = target.dim;
  const int r = 2 * pairs + (opts.xi_in_range ? 1 : 0);
  const int n = r + 1;

  Matrix a = Matrix::Zero(t, n);
  for (int p = 0; p < pairs; ++p) {
    const double th = p < opts.r1 ? opts.theta1 : opts.theta2;
    const int ua = 2 * p, ub = 2 * p + 1;
    a(ua, 2 * p) = 1.0;
    a(m + ua, 2 * p + 1) = std::cos(th);
    a(ub, 2 * p + 1) = std::sin(th);
  }
  if (opts.xi_in_range) a(t - 1, r - 1) = 1.0;

  const Matrix range = a.leftCols(r);
  Eigen::JacobiSVD<Matrix> svd(range, Eigen::ComputeFullU);
  const Matrix normals = svd.matrixU().rightCols(t - r);
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Vector> nu;
  std::vector<Matrix> forms;
  for (int k = 0; k < normals.cols(); ++k) {
    Matrix mk = Matrix::Zero(n, n);
    for (int i = 0; i < r; ++i)
      for (int j = i; j < r; ++j) mk(i, j) = mk(j, i) = opts.bend * u(rng);
    nu.push_back(normals.col(k));
    forms.push_back(mk);
  }

  const auto map = [a, nu, forms](const Point& x) {
    Point y = a * x;
    for (size_t k = 0; k < nu.size(); ++k) y += 0.5 * x.dot(forms[k] * x) * nu[k];
    return y;
  };
  const auto jac = [a, nu, forms](const Point& x) {
    Matrix j = a;
    for (size_t k = 0; k < nu.size(); ++k) j += nu[k] * (forms[k] * x).transpose();
    return j;
  };
  Matrix kernel = Matrix::Zero(n, n);
  kernel(n - 1, n - 1) = 1.0;
  const MetricField g2 = target.g;

  RiemannianMapInstance inst;
  inst.target = target;
  inst.map = map;
  inst.jacobian = jac;
  inst.hessian = [nu, forms, t, n](const Point&) {
    std::vector<Matrix> h(t, Matrix::Zero(n, n));
    for (size_t k = 0; k < nu.size(); ++k)
      for (int c = 0; c < t; ++c) h[c] += nu[k][c] * forms[k];
    return h;
  };
  inst.base = Point::Zero(n);
  inst.source.dim = n;
  inst.source.components = [map, jac, g2, kernel](const Point& x) {
    const Matrix j = jac(x);
    return Matrix(j.transpose() * g2.components(map(x)) * j + kernel);
  };
  inst.source.partials = [map, jac, g2, nu, forms, n](const Point& x) {
    const Point y = map(x);
    const Matrix j = jac(x);
    const Matrix g = g2.components(y);
    const std::vector<Matrix> dg = g2.partials(y);
    std::vector<Matrix> out(n);
    for (int c = 0; c < n; ++c) {
      Matrix dj = Matrix::Zero(j.rows(), n);
      for (size_t k = 0; k < nu.size(); ++k) dj += nu[k] * forms[k].row(c);
      Matrix dgc = Matrix::Zero(g.rows(), g.cols());
      for (int l = 0; l < j.rows(); ++l) dgc += dg[l] * j(l, c);
      out[c] = dj.transpose() * g * j + j.transpose() * g * dj + j.transpose() * dgc * j;
    }
    return out;
  };
  Matrix hint = Matrix::Zero(n, r);
  hint.topRows(r).setIdentity();
  inst.horizontal_hint = hint;
  inst.label = opts.xi_in_range ? "bislant-warped" : "bislant-warped-perp";
  return inst;
}

std::vector<std::string> fixture_names() {
  return {"hemislant-7d",      "hemislant-7d-literal", "bislant-9d",        "totally-geodesic",
          "warped-random",    "bislant-warped",      "bislant-warped-perp"};
}

RiemannianMapInstance fixture_by_name(const std::string& name) {
  if (name == "hemislant-7d") return example_bislant_7();
  if (name == "hemislant-7d-literal") return example_bislant_7_literal();
  if (name == "bislant-9d") return example_bislant_9(M_PI / 6.0, 1.0, 1.0);
  if (name == "totally-geodesic") return totally_geodesic_instance();
  if (name == "bislant-warped") return bislant_warped_instance({});
  if (name == "bislant-warped-perp") {
    BiSlantMapOptions o;
    o.xi_in_range = false;
    return bislant_warped_instance(o);
  }
  if (name == "warped-random") {
    auto rng = substream(0, 0);
    return random_warped_instance({}, rng);
  }
  throw GeometryError(ErrorKind::FixtureMissing, "unknown fixture '" + name + "'");
}

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return std::mt19937_64(mix(seed ^ mix(index)));
}

}  // namespace slantmap
