#include <random>

#include "doctest.h"
#include "slantmap/fixtures.hpp"
#include "slantmap/kenmotsu.hpp"

using namespace slantmap;

TEST_CASE("psi_from_table builds signed permutations") {
  const Matrix psi = psi_from_table({2, -1, 0}, {1.0, 2.0, 1.0});
  CHECK(psi(1, 0) == 1.0);
  CHECK(psi(0, 1) == -2.0);
  CHECK(psi.col(2).norm() == 0.0);
}

TEST_CASE("warped model is almost contact and Kenmotsu with analytic partials") {
  for (int m = 1; m <= 3; ++m) {
    const AlmostContactStructure s = build_warped_kenmotsu(m, true);
    const auto probes = default_probes(s.dim);
    const StructureReport ac = check_almost_contact(s, probes, 1e-10);
    const StructureReport k = check_kenmotsu(s, probes, 1e-10);
    CHECK(ac.pass);
    CHECK(k.pass);
    for (const auto& r : k.residuals) CHECK(r.residual < 1e-10);
  }
}

TEST_CASE("warped model is Kenmotsu in finite-difference mode") {
  for (int m = 1; m <= 3; ++m) {
    const AlmostContactStructure s = build_warped_kenmotsu(m, false);
    const StructureReport k = check_kenmotsu(s, default_probes(s.dim, 5), 1e-5);
    CHECK(k.pass);
  }
}

TEST_CASE("warped model has constant curvature -1") {
  const AlmostContactStructure s = build_warped_kenmotsu(2, true);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int t = 0; t < 10; ++t) {
    Point p(s.dim);
    Vector x(s.dim), y(s.dim), z(s.dim);
    for (int i = 0; i < s.dim; ++i) {
      p[i] = 0.5 * U(rng);
      x[i] = U(rng);
      y[i] = U(rng);
      z[i] = U(rng);
    }
    const PointStructure ps = structure_at(s, p);
    // hyperbolic space: R(X,Y)Z = -(g(Y,Z)X - g(X,Z)Y)
    const Vector oracle = -(ps.g.inner(y, z) * x - ps.g.inner(x, z) * y);
    const Vector numeric = riemann_tensor_at(s.g, p).apply(x, y, z);
    const Vector formula = spaceform_curvature({-1.0}, ps, x, y, z);
    CHECK((numeric - oracle).norm() < 1e-6 * (1.0 + oracle.norm()));
    CHECK((formula - oracle).norm() < 1e-12 * (1.0 + oracle.norm()));
  }
}

TEST_CASE("space form curvature is psi-invariant in the Kenmotsu sense") {
  const AlmostContactStructure s = build_warped_kenmotsu(1, true);
  Point p = Point::Constant(3, 0.2);
  const PointStructure ps = structure_at(s, p);
  const Vector x = Vector::Unit(3, 0), y = Vector::Unit(3, 1), z = Vector(Vector::Ones(3));
  for (double c : {-3.0, -1.0, 0.5, 2.0}) {
    const SpaceFormParams sf{c};
    const Vector lhs = spaceform_curvature(sf, ps, ps.psi * x, ps.psi * y, z) - spaceform_curvature(sf, ps, x, y, z);
    const Vector rhs = ps.g.inner(y, z) * x - ps.g.inner(x, z) * y + ps.g.inner(y, ps.psi * z) * (ps.psi * x) -
                       ps.g.inner(x, ps.psi * z) * (ps.psi * y);
    CHECK((lhs - rhs).norm() < 1e-12);
  }
}

TEST_CASE("flat constant structure is almost contact but not Kenmotsu") {
  const AlmostContactStructure s = constant_structure({1.0, 1.0, 1.0}, {2, -1, 0}, 2, "flat");
  const auto probes = default_probes(3, 4);
  CHECK(check_almost_contact(s, probes).pass);
  const StructureReport k = check_kenmotsu(s, probes, 1e-6);
  CHECK_FALSE(k.pass);
}

TEST_CASE("default probes are deterministic and inside the box") {
  const auto a = default_probes(4, 10, 0.1, 1.1), b = default_probes(4, 10, 0.1, 1.1);
  REQUIRE(a.size() == 10);
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i] == b[i]);
    CHECK(a[i].minCoeff() >= 0.1);
    CHECK(a[i].maxCoeff() <= 1.1);
  }
}
