#include "doctest.h"
#include "slantmap/fixtures.hpp"
#include "slantmap/sweep.hpp"

using namespace slantmap;

namespace {

bool same(const SweepResult& a, const SweepResult& b) {
  if (a.tallies.size() != b.tallies.size() || a.findings.size() != b.findings.size()) return false;
  for (size_t i = 0; i < a.tallies.size(); ++i) {
    const CheckTally &x = a.tallies[i], &y = b.tallies[i];
    if (x.name != y.name || x.count != y.count || x.violations != y.violations || x.min_slack != y.min_slack ||
        x.min_index != y.min_index)
      return false;
  }
  for (size_t i = 0; i < a.findings.size(); ++i)
    if (a.findings[i].index != b.findings[i].index || a.findings[i].slack != b.findings[i].slack) return false;
  return a.max_identity_residual == b.max_identity_residual && a.max_sos_residual == b.max_sos_residual &&
         a.max_decomposition_residual == b.max_decomposition_residual;
}

}  // namespace

TEST_CASE("substreams are reproducible and distinct") {
  auto a = substream(42, 7), b = substream(42, 7), c = substream(42, 8), d = substream(43, 7);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
  CHECK(x != d());
}

TEST_CASE("instances depend only on seed and index") {
  const InstanceOutcome a = evaluate_instance(5, 123, {}), b = evaluate_instance(5, 123, {});
  CHECK(a.r == b.r);
  CHECK(a.c == b.c);
  CHECK(a.lu == b.lu);
  CHECK(a.casorati_delta_hat == b.casorati_delta_hat);
}

TEST_CASE("parallel sweep equals the serial reference bitwise") {
  const SweepResult s = run_sweep_serial(17, 500), p = run_sweep_parallel(17, 500);
  CHECK(same(s, p));
}

TEST_CASE("default sweep has no findings and tiny identity residuals") {
  const SweepResult r = run_sweep_parallel(20240917, 2000);
  CHECK(r.findings.empty());
  for (const CheckTally& t : r.tallies) {
    CHECK(t.violations == 0);
    CHECK(t.min_slack >= -1e-9);
  }
  CHECK(r.tally("lu")->count == 2000);
  CHECK(r.max_identity_residual < 1e-9);
  CHECK(r.max_sos_residual < 1e-9);
}

TEST_CASE("empty sweep") {
  const SweepResult r = run_sweep_parallel(1, 0);
  CHECK(r.findings.empty());
  for (const CheckTally& t : r.tallies) CHECK(t.count == 0);
}

TEST_CASE("sign-flip hook is caught") {
  SweepOptions o;
  o.lu.flip_sign = true;
  o.chen_ricci = false;
  o.casorati = false;
  const SweepResult r = run_sweep_parallel(3, 100, o);
  CHECK(r.findings.size() > 0);
  CHECK(r.tally("lu")->violations > 0);
  CHECK(r.findings.front().seed == 3);
}
