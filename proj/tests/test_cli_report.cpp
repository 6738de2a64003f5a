#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "slantmap/errors.hpp"
#include "slantmap/expression.hpp"
#include "slantmap/gallery.hpp"

using namespace slantmap;

namespace {

const std::string kData = SLANTMAP_DATA;

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SLANTMAP_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string dump(const RunReport& r) { return report_to_json(r).dump(); }

}  // namespace

TEST_CASE("expressions evaluate with precedence and functions") {
  const Expression e("2*x0^2^1 - sin(pi*x1)/2 + exp(-x0) + sqrt(abs(-4))", {"x0", "x1"});
  Vector x(2);
  x << 1.5, 0.25;
  CHECK(e(x) == doctest::Approx(2 * 2.25 - std::sin(M_PI * 0.25) / 2 + std::exp(-1.5) + 2.0));
  CHECK(Expression("-2^2", {})(Vector()) == doctest::Approx(-4.0));
  CHECK(Expression("2^3^2", {})(Vector()) == doctest::Approx(512.0));
  CHECK(Expression("exp(2*w)", {"w"})(Vector::Constant(1, 0.3)) == doctest::Approx(std::exp(0.6)));
}

TEST_CASE("malformed expressions are input errors") {
  for (const char* bad : {"1 +", "foo(1)", "(1", "x9", "1 $ 2"}) {
    try {
      Expression e(bad, {"x0"});
      FAIL("accepted ", bad);
    } catch (const GeometryError& err) {
      CHECK(err.kind() == ErrorKind::InvalidInput);
    }
  }
}

TEST_CASE("empty report serializes to the minimal schema") {
  RunReport r;
  CHECK(report_to_json(r) == Json::parse(R"({"schema_version":1,"checks":[],"summary":{"pass":0,"fail":0}})"));
  CHECK(r.exit_code() == 0);
}

TEST_CASE("one passing check counts once") {
  RunReport r;
  r.add(residual_check("x", "s", 0.0, 1.0));
  CHECK(r.pass_count() == 1);
  CHECK(report_to_json(r)["summary"]["pass"] == 1);
  r.add(residual_check("y", "s", 2.0, 1.0));
  CHECK(r.fail_count() == 1);
  CHECK(r.exit_code() == 1);
}

TEST_CASE("report json round-trips on gallery output") {
  RunConfig c;
  const RunReport r = run_gallery(c);
  CHECK(report_from_json(Json::parse(dump(r))) == r);
  const std::string text = report_to_text(r);
  CHECK(text.find("summary") != std::string::npos);
}

TEST_CASE("report parser checks summary counts") {
  Json j = report_to_json(RunReport{});
  j["summary"]["pass"] = 3;
  CHECK_THROWS_AS(report_from_json(j), GeometryError);
}

TEST_CASE("gallery and sweep json are deterministic") {
  RunConfig c;
  c.n = 300;
  CHECK(dump(run_gallery(c)) == dump(run_gallery(c)));
  CHECK(dump(run_falsification(c)) == dump(run_falsification(c)));
}

TEST_CASE("empty falsification run") {
  RunConfig c;
  c.n = 0;
  const RunReport r = run_falsification(c);
  CHECK(r.checks.empty());
  CHECK(r.findings.empty());
  CHECK(r.exit_code() == 0);
}

TEST_CASE("falsification catches the sign-flip hook") {
  RunConfig c;
  c.n = 50;
  const RunReport r = run_falsification(c, LuOptions{true});
  CHECK(!r.findings.empty());
  CHECK(r.exit_code() == 1);
}

TEST_CASE("zeta json round-trips") {
  std::mt19937_64 rng(1);
  const SffTensor z = random_zeta(4, 2, rng);
  const SffTensor back = zeta_from_json(zeta_to_json(z));
  REQUIRE(back.normal_dim() == 2);
  for (int a = 0; a < 2; ++a) CHECK((back.zeta[a] - z.zeta[a]).norm() == 0.0);
}

TEST_CASE("descriptors load") {
  const LoadedStructure s = structure_from_json(read_json_file(kData + "/warped_m2.json"));
  CHECK(s.structure.dim == 5);
  CHECK(s.c.value() == -1.0);
  const LoadedMap m = map_from_json(read_json_file(kData + "/map_linear.json"), kData);
  CHECK(m.instance.source_dim() == 3);
  CHECK(build_frames(m.instance).xi_in_range);
  const InequalityInput in = inequality_input_from_json(read_json_file(kData + "/profile.json"), kData);
  CHECK(in.data.r == 5);
  CHECK(in.zeta.normal_dim() == 1);
}

TEST_CASE("descriptor errors") {
  try {
    read_json_file(kData + "/missing.json");
    FAIL("no throw");
  } catch (const GeometryError& e) {
    CHECK(e.kind() == ErrorKind::IoFailure);
  }
  try {
    read_json_file(kData + "/malformed.json");
    FAIL("no throw");
  } catch (const GeometryError& e) {
    CHECK(e.kind() == ErrorKind::InvalidInput);
  }
  CHECK_THROWS_AS(structure_from_json(Json::parse(R"({"schema_version": 2})")), GeometryError);
}

TEST_CASE("command dispatch") {
  RunConfig c;
  c.command = "frobnicate";
  CHECK_THROWS_AS(run_command(c), GeometryError);
  c.command = "check-map";
  c.fixture = "bislant-warped";
  CHECK(run_command(c).exit_code() == 0);
  c.command = "chen-ricci";
  CHECK(run_command(c).exit_code() == 0);
  c.fixture = "no-such-fixture";
  CHECK_THROWS_AS(run_command(c), GeometryError);
}

TEST_CASE("cli exit codes") {
  CHECK(run_cli("--cmd check-structure --input " + kData + "/warped_m2.json") == 0);
  CHECK(run_cli("--cmd check-structure --input " + kData + "/flat3.json") == 1);
  CHECK(run_cli("--cmd check-map --input " + kData + "/map_linear.json") == 0);
  CHECK(run_cli("--cmd ddvv --input " + kData + "/profile.json --format json") == 0);
  CHECK(run_cli("--cmd casorati --input " + kData + "/profile.json") == 0);
  CHECK(run_cli("--cmd lu-sweep --n 200") == 0);
  CHECK(run_cli("--cmd check-map --input " + kData + "/malformed.json") == 2);
  CHECK(run_cli("--cmd check-map --fixture nope") == 2);
  CHECK(run_cli("--cmd nope") == 2);
  CHECK(run_cli("--cmd gallery") == 1);
}
