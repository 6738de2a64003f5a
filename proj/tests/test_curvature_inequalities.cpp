#include <cmath>
#include <random>

#include "doctest.h"
#include "slantmap/curvature_inequalities.hpp"
#include "slantmap/errors.hpp"
#include "slantmap/fixtures.hpp"

using namespace slantmap;

namespace {

double sq(double x) { return x * x; }

// sum_{a<b} |[Z_a, Z_b]|_F^2 / 2
double commutator_sum(const SffTensor& z) {
  double s = 0.0;
  for (int a = 0; a < z.normal_dim(); ++a)
    for (int b = a + 1; b < z.normal_dim(); ++b) {
      const Matrix c = z.zeta[a] * z.zeta[b] - z.zeta[b] * z.zeta[a];
      s += 0.5 * c.squaredNorm();
    }
  return s;
}

double norm2(const SffTensor& z) {
  double s = 0.0;
  for (const Matrix& m : z.zeta) s += m.squaredNorm();
  return s;
}

double trace2(const SffTensor& z) {
  double s = 0.0;
  for (const Matrix& m : z.zeta) s += sq(m.trace());
  return s;
}

SffTensor diagonal_zeta(int r, const std::vector<double>& diag) {
  SffTensor z(r, 1);
  for (int i = 0; i < r; ++i) z(0, i, i) = diag[i];
  return z;
}

// Projected gradient on sum x = k.
Vector projected_gradient(double b, double d, double k, int n) {
  Matrix h = Matrix::Constant(n, n, -2.0);
  h.diagonal().setConstant(2.0 * b);
  h(n - 1, n - 1) = 2.0 * d;
  const Matrix p = Matrix::Identity(n, n) - Matrix::Constant(n, n, 1.0 / n);
  const double lip = (p * h * p).cwiseAbs().rowwise().sum().maxCoeff();
  Vector x = Vector::Constant(n, k / n);
  for (int it = 0; it < 500000; ++it) {
    const Vector step = p * (h * x) / lip;
    x -= step;
    if (step.norm() < 1e-16) break;
  }
  return x;
}

}  // namespace

TEST_CASE("normal scalar forms agree with the commutator oracle") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    const SffTensor z = random_zeta(3 + t % 4, 1 + t % 3, rng);
    const NormalScalar ns = normal_scalar(z);
    CHECK(ns.commutator_form == doctest::Approx(commutator_sum(z)).epsilon(1e-12));
    CHECK(ns.coefficient_form == doctest::Approx(commutator_sum(z)).epsilon(1e-12));
  }
}

TEST_CASE("Lu inequality sides against naive sums") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 200; ++t) {
    const int r = 3 + t % 3;
    const SffTensor z = random_zeta(r, 1 + t % 3, rng);
    const InequalityReport rep = lu_inequality_check(z);
    CHECK(rep.lhs == doctest::Approx(2.0 * r * std::sqrt(commutator_sum(z))).epsilon(1e-12));
    CHECK(rep.rhs == doctest::Approx(r * norm2(z) - trace2(z)).epsilon(1e-12));
    CHECK(rep.holds);
  }
}

TEST_CASE("Lu sign flip hook reverses the verdict") {
  std::mt19937_64 rng(3);
  const SffTensor z = random_zeta(4, 2, rng);
  const InequalityReport a = lu_inequality_check(z), b = lu_inequality_check(z, 1e-9, {true});
  CHECK(b.slack == doctest::Approx(-a.slack));
  CHECK_FALSE(b.holds);
}

TEST_CASE("assembled and source curvature agree on a bi-slant map") {
  for (const char* name : {"bislant-warped", "bislant-warped-perp"}) {
    const RiemannianMapInstance inst = fixture_by_name(name);
    const MapFrames f = build_frames(inst);
    const TangentialNormalSplit s = pq_decompose(inst, f);
    const CanonicalFrames c = canonicalize(f, s, slant_spectrum(s, f));
    const SffTensor z = second_fundamental_form(inst, c.frames);
    const HorizontalCurvature a = assemble_horizontal_curvature(-1.0, c.data, z);
    const HorizontalCurvature b = horizontal_curvature_from_source(inst, c.frames);
    double worst = 0.0;
    for (int i = 0; i < f.r; ++i)
      for (int j = 0; j < f.r; ++j)
        for (int k = 0; k < f.r; ++k)
          for (int l = 0; l < f.r; ++l) worst = std::max(worst, std::abs(a(i, j, k, l) - b(i, j, k, l)));
    CHECK(worst < 1e-5);
  }
}

TEST_CASE("scalar identity and Chen-Ricci sum of squares on random profiles") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 200; ++t) {
    const ProfileDraw d = random_profile(rng);
    const SffTensor z = random_zeta(d.r, d.normal_dim, rng);
    const HorizontalCurvature R = assemble_horizontal_curvature(d.c, d.data, z);
    const CurvatureInvariants inv = horizontal_invariants(R, &z);
    double tau = 0.0;
    for (int i = 0; i < d.r; ++i)
      for (int j = i + 1; j < d.r; ++j) tau += R(i, j, j, i);
    CHECK(inv.tau == doctest::Approx(tau).epsilon(1e-12));
    CHECK(scalar_identity_check(d.c, d.data, z, inv).residual < 1e-9);
    for (int x = 0; x < d.r; ++x) {
      const InequalityReport rep = chen_ricci_check(d.c, d.data, z, inv, x);
      if (rep.informational) continue;
      double sos = 0.0;
      for (const Matrix& m : z.zeta) {
        sos += sq(2.0 * m(x, x) - m.trace());
        for (int i = 0; i < d.r; ++i)
          if (i != x) sos += 4.0 * sq(m(x, i));
      }
      CHECK(rep.slack == doctest::Approx(sos).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("DDVV slack is the Lu slack rescaled") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const ProfileDraw d = random_profile(rng, 5);
    const SffTensor z = random_zeta(d.r, d.normal_dim, rng);
    const CurvatureInvariants inv = horizontal_invariants(assemble_horizontal_curvature(d.c, d.data, z), &z);
    const InequalityReport rep = ddvv_check(d.c, d.data, z, inv);
    const double lu = lu_inequality_check(z).slack;
    CHECK(rep.slack == doctest::Approx(lu / (d.r * d.r * (d.r - 1.0))).epsilon(1e-9).scale(1.0));
    CHECK(rep.holds);
  }
}

TEST_CASE("tails from frame sums equal the closed-form tail") {
  for (bool xi : {true, false})
    for (double c : {-2.5, -1.0, 0.3, 2.0}) {
      const BiSlantData d = canonical_bislant_model(1, 2, 0.7, 1.3, xi);
      CHECK(frame_tail(c, d) == doctest::Approx(bislant_tail(c, d.r, d.slant_sum(), xi)).epsilon(1e-13));
    }
}

TEST_CASE("normal-bundle class rows reduce exactly") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> C(-3.0, 3.0), T(0.0, 1.5);
  for (MapClass cls : all_map_classes())
    for (int t = 0; t < 20; ++t) {
      const double c = C(rng), th = T(rng);
      const int r1 = 1 + static_cast<int>(rng() % 3), r2 = 1 + static_cast<int>(rng() % 3);
      const ClassRow row = class_row(cls, false, c, r1, r2, th);
      CHECK(row.stated == doctest::Approx(row.substituted).epsilon(1e-12));
      CHECK(row.substituted ==
            doctest::Approx(bislant_tail(c, row.r, row_slant_sum(cls, r1, r2, th), false)).epsilon(1e-12));
    }
}

TEST_CASE("Casorati curvatures on coordinate hyperplanes") {
  std::mt19937_64 rng(7);
  const SffTensor z = random_zeta(4, 2, rng);
  const CasoratiSet cs = casorati_curvatures(z, 99);
  CHECK(cs.C == doctest::Approx(norm2(z) / 4.0).epsilon(1e-13));
  CHECK(cs.C_of_L.size() == 4 + 200);
  for (int i = 0; i < 4; ++i) {
    double s = 0.0;
    for (const Matrix& m : z.zeta)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          if (j != i && k != i) s += sq(m(j, k));
    CHECK(cs.C_of_L[i] == doctest::Approx(s / 3.0).epsilon(1e-13));
  }
  CHECK(cs.inf_CL <= cs.sup_CL);
}

TEST_CASE("Casorati equality patterns give zero slack") {
  const BiSlantData d = canonical_bislant_model(1, 1, 0.8, 0.2, true);
  for (double a : {0.5, -1.3}) {
    std::vector<double> lower(d.r, a), upper(d.r, 2.0 * a);
    lower.back() = 2.0 * a;
    upper.back() = a;
    const SffTensor zl = diagonal_zeta(d.r, lower), zu = diagonal_zeta(d.r, upper);
    const auto inv_l = horizontal_invariants(assemble_horizontal_curvature(-0.4, d, zl), &zl);
    const auto inv_u = horizontal_invariants(assemble_horizontal_curvature(-0.4, d, zu), &zu);
    CHECK(std::abs(casorati_bounds(-0.4, d, zl, inv_l, 1).first.slack) < 1e-9);
    CHECK(std::abs(casorati_bounds(-0.4, d, zu, inv_u, 1).second.slack) < 1e-9);
  }
}

TEST_CASE("Casorati bounds reject rank two") {
  const BiSlantData d = canonical_bislant_model(1, 0, 0.5, 0.0, false);
  std::mt19937_64 rng(8);
  const SffTensor z = random_zeta(2, 1, rng);
  const auto inv = horizontal_invariants(assemble_horizontal_curvature(0.0, d, z), &z);
  CHECK_THROWS_AS(casorati_bounds(0.0, d, z, inv, 1), GeometryError);
}

TEST_CASE("quadratic minimizer matches projected gradient") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + static_cast<int>(rng() % 7);
    std::uniform_real_distribution<double> B(n - 2 + 0.2, n + 6.0), K(-3.0, 3.0);
    const double b = B(rng), k = K(rng), d = (n - 1.0) / (b - n + 2.0);
    const QuadraticMinimum res = minimize_hyperplane_quadratic(b, d, k, n);
    CHECK((projected_gradient(b, d, k, n) - res.argmin).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(std::abs(res.min_value) < 1e-10);
    CHECK(res.argmin.sum() == doctest::Approx(k));
  }
}

TEST_CASE("quadratic minimizer rejects inconsistent parameters") {
  for (auto [b, d, n] : {std::tuple{3.0, 1.5, 1}, std::tuple{3.0, 2.0, 3}, std::tuple{-1.0, 1.0, 3}}) {
    try {
      minimize_hyperplane_quadratic(b, d, 1.0, n);
      FAIL("no throw");
    } catch (const GeometryError& e) {
      CHECK(e.kind() == ErrorKind::IncompatibleParameters);
    }
  }
}
