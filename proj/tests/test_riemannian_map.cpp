#include <random>

#include "doctest.h"
#include "slantmap/errors.hpp"
#include "slantmap/fixtures.hpp"
#include "slantmap/riemannian_map.hpp"

using namespace slantmap;

namespace {

// (nabla F_*)(X, Y) = d^2F(X, Y) + Gamma2(F_*X, F_*Y) - F_*(Gamma1(X, Y)), by central differences.
Vector sff_oracle(const RiemannianMapInstance& inst, const Point& p, const Vector& x, const Vector& y) {
  const double h = 1e-4;
  const Vector d2 = (inst.map(p + h * x + h * y) - inst.map(p + h * x - h * y) - inst.map(p - h * x + h * y) +
                     inst.map(p - h * x - h * y)) /
                    (4.0 * h * h);
  const Matrix j = differential_at(inst, p).jacobian;
  return d2 + christoffel_at(inst.target.g, inst.map(p)).contract(j * x, j * y) -
         j * christoffel_at(inst.source, p).contract(x, y);
}

RiemannianMapInstance random_map(XiPlacement xi, std::uint64_t seed) {
  auto rng = substream(seed, 0);
  RandomMapOptions o;
  o.m = 2;
  o.source_dim = 6;
  o.rank = 3;
  o.xi = xi;
  return random_warped_instance(o, rng);
}

}  // namespace

TEST_CASE("full-rank differential is rejected") {
  const AlmostContactStructure t = build_warped_kenmotsu(1);
  const RiemannianMapInstance inst =
      pulled_back_linear_instance(t, Vector::Zero(3), Matrix::Identity(3, 3), Point::Zero(3), "identity");
  try {
    differential_at(inst, inst.base);
    FAIL("no throw");
  } catch (const GeometryError& e) {
    CHECK(e.kind() == ErrorKind::RankOutOfRange);
  }
}

TEST_CASE("frames of a pulled-back linear map are orthonormal and isometric") {
  for (auto xi : {XiPlacement::Range, XiPlacement::Normal, XiPlacement::Generic}) {
    const RiemannianMapInstance inst = random_map(xi, 3);
    const MapFrames f = build_frames(inst);
    CHECK(f.r == 3);
    CHECK(f.isometry_defect < 1e-9);
    CHECK(f.H.orthonormality_defect() < 1e-10);
    CHECK(f.RP.orthonormality_defect() < 1e-10);
    CHECK(f.H.size() + f.V.size() == inst.source_dim());
    CHECK(f.RG.size() + f.RP.size() == inst.target_dim());
    CHECK(f.xi_in_range == (xi == XiPlacement::Range));
  }
}

TEST_CASE("literal example data is not a Riemannian map") {
  const RiemannianMapInstance inst = example_bislant_7_literal();
  try {
    build_frames(inst);
    FAIL("no throw");
  } catch (const GeometryError& e) {
    CHECK(e.kind() == ErrorKind::IsometryViolation);
  }
}

TEST_CASE("second fundamental form matches the difference oracle") {
  for (const RiemannianMapInstance& inst : {random_map(XiPlacement::Generic, 8), fixture_by_name("bislant-warped")}) {
    const MapFrames f = build_frames(inst);
    const SffTensor z = second_fundamental_form(inst, f);
    CHECK(z.symmetry_defect < 1e-8);
    for (int i = 0; i < f.r; ++i)
      for (int j = 0; j < f.r; ++j) {
        const Vector full = sff_oracle(inst, f.p, f.H.vector(i), f.H.vector(j));
        for (int a = 0; a < z.normal_dim(); ++a)
          CHECK(z(a, i, j) == doctest::Approx(f.RP.metric().inner(full, f.RP.vector(a))).epsilon(1e-5));
        CHECK(f.RG.coefficients(full).norm() < 1e-5);
      }
  }
}

TEST_CASE("totally geodesic map has zero second fundamental form") {
  const RiemannianMapInstance inst = totally_geodesic_instance();
  const MapFrames f = build_frames(inst);
  CHECK(second_fundamental_form(inst, f).norm2() < 1e-16);
}

TEST_CASE("Gauss and Ricci equations on random frame tuples") {
  std::mt19937_64 rng(21);
  for (const RiemannianMapInstance& inst : {random_map(XiPlacement::Generic, 5), fixture_by_name("bislant-warped")}) {
    const MapFrames f = build_frames(inst);
    const SffTensor z = second_fundamental_form(inst, f);
    std::uniform_int_distribution<int> pick(0, f.r - 1), pick_n(0, f.normal_dim() - 1);
    for (int t = 0; t < 10; ++t)
      CHECK(gauss_equation_check(inst, f, z, pick(rng), pick(rng), pick(rng), pick(rng)).residual < 1e-5);
    for (int t = 0; t < 3; ++t)
      CHECK(ricci_equation_check(inst, f, z, pick(rng), pick(rng), pick_n(rng), pick_n(rng)).residual < 1e-5);
  }
}

TEST_CASE("shape operator routes agree") {
  const RiemannianMapInstance inst = fixture_by_name("bislant-warped-perp");
  const MapFrames f = build_frames(inst);
  const SffTensor z = second_fundamental_form(inst, f);
  for (int a = 0; a < f.normal_dim(); ++a) {
    const ShapeOperator s = shape_operator(inst, f, z, a);
    CHECK(s.discrepancy < 1e-6);
    CHECK((s.duality - s.duality.transpose()).norm() < 1e-8);
  }
}
