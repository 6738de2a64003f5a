#include <cmath>
#include <numbers>
#include <tuple>

#include "doctest.h"
#include "slantmap/errors.hpp"
#include "slantmap/fixtures.hpp"
#include "slantmap/slant_structure.hpp"

using namespace slantmap;

namespace {

SlantProfile profile_of(const RiemannianMapInstance& inst) {
  const MapFrames f = build_frames(inst, FrameOptions{.require_isometry = false});
  return slant_spectrum(pq_decompose(inst, f), f);
}

SlantProfile synthetic(std::vector<double> eigenvalues) {
  SlantProfile p;
  for (double e : eigenvalues) {
    SlantCluster c;
    c.eigenvalue = e;
    c.theta = std::acos(std::sqrt(e));
    c.multiplicity = 2;
    p.clusters.push_back(c);
  }
  return p;
}

}  // namespace

TEST_CASE("nine-dimensional family matches the closed-form angles") {
  for (auto [a, b, g] : {std::tuple{std::numbers::pi / 6, 1.0, 1.0}, std::tuple{0.3, 1.0, 2.0},
                         std::tuple{1.0, 2.0, 0.5}, std::tuple{0.7, 0.3, 1.7}}) {
    const SlantProfile p = profile_of(example_bislant_9(a, b, g));
    CHECK(p.theta1() == doctest::Approx(std::acos(std::sin(a))).epsilon(1e-12));
    CHECK(p.theta2() == doctest::Approx(std::acos(g / std::hypot(b, g))).epsilon(1e-12));
    CHECK(classify(p) == MapClass::BiSlantProper);
  }
}

TEST_CASE("seven-dimensional example has eigenvalues 2/3 and 0") {
  const SlantProfile p = profile_of(example_bislant_7());
  REQUIRE(p.clusters.size() == 2);
  CHECK(p.clusters[0].eigenvalue == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(std::abs(p.clusters[1].eigenvalue) < 1e-12);
  CHECK(p.theta2() == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
  CHECK_FALSE(p.even_multiplicities);
  CHECK(classify(p) == MapClass::HemiSlant);
}

TEST_CASE("literal seven-dimensional data has a negative eigenvalue") {
  try {
    profile_of(example_bislant_7_literal());
    FAIL("no throw");
  } catch (const GeometryError& e) {
    CHECK(e.kind() == ErrorKind::SpectrumOutOfRange);
  }
}

TEST_CASE("P and Q reassemble psi on the range") {
  for (const char* name : {"bislant-9d", "bislant-warped", "bislant-warped-perp"}) {
    const RiemannianMapInstance inst = fixture_by_name(name);
    const MapFrames f = build_frames(inst);
    const TangentialNormalSplit s = pq_decompose(inst, f);
    CHECK(s.range_sum_defect < 1e-10);
    CHECK(s.normal_sum_defect < 1e-10);
  }
}

TEST_CASE("classification table") {
  CHECK(classify(synthetic({1.0})) == MapClass::Invariant);
  CHECK(classify(synthetic({0.0})) == MapClass::AntiInvariant);
  CHECK(classify(synthetic({0.4})) == MapClass::ProperSlant);
  CHECK(classify(synthetic({1.0, 0.0})) == MapClass::SemiInvariant);
  CHECK(classify(synthetic({0.0, 1.0})) == MapClass::SemiInvariant);
  CHECK(classify(synthetic({1.0, 0.4})) == MapClass::SemiSlant);
  CHECK(classify(synthetic({0.0, 0.4})) == MapClass::HemiSlant);
  CHECK(classify(synthetic({0.3, 0.6})) == MapClass::BiSlantProper);
  CHECK_THROWS_AS(classify(SlantProfile{}), GeometryError);
}

TEST_CASE("class names round-trip") {
  for (MapClass c : {MapClass::Invariant, MapClass::AntiInvariant, MapClass::SemiInvariant, MapClass::ProperSlant,
                     MapClass::SemiSlant, MapClass::HemiSlant, MapClass::BiSlantProper})
    CHECK(map_class_from_string(to_string(c)) == c);
  CHECK_THROWS_AS(map_class_from_string("oblique"), GeometryError);
}

TEST_CASE("slant identities hold on a compatible bi-slant map") {
  for (const char* name : {"bislant-warped", "bislant-warped-perp"}) {
    const RiemannianMapInstance inst = fixture_by_name(name);
    const MapFrames f = build_frames(inst);
    const TangentialNormalSplit s = pq_decompose(inst, f);
    const SlantProfile p = slant_spectrum(s, f);
    const SlantIdentityReport l = slant_frame_identities(f, s, p);
    for (double r : l.residual) CHECK(r < 1e-9);
  }
}

TEST_CASE("canonical data carries the slant sums") {
  for (bool xi : {true, false}) {
    const BiSlantData d = canonical_bislant_model(2, 1, 0.4, 1.1, xi);
    const double s = 2 * std::pow(std::cos(0.4), 2) + std::pow(std::cos(1.1), 2);
    CHECK(d.slant_sum() == doctest::Approx(s).epsilon(1e-14));
    CHECK(d.psi_frame_sum() == doctest::Approx(2 * s).epsilon(1e-12));
    CHECK(d.eta_sum() == doctest::Approx(xi ? 1.0 : 0.0));
    CHECK(d.r == 6 + (xi ? 1 : 0));
  }
}

TEST_CASE("canonicalized map frames recover the construction angles") {
  BiSlantMapOptions o;
  o.theta1 = 0.5;
  o.theta2 = 1.2;
  const RiemannianMapInstance inst = bislant_warped_instance(o);
  const MapFrames f = build_frames(inst);
  const TangentialNormalSplit s = pq_decompose(inst, f);
  const CanonicalFrames c = canonicalize(f, s, slant_spectrum(s, f));
  CHECK(c.data.theta1 == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(c.data.theta2 == doctest::Approx(1.2).epsilon(1e-10));
  CHECK(c.data.psi_frame_sum() == doctest::Approx(2 * c.data.slant_sum()).epsilon(1e-10));
  CHECK(c.data.block.back() == 2);
  CHECK(c.frames.H.orthonormality_defect() < 1e-10);
}
