#include "slantmap/sweep.hpp"

#include <algorithm>
#include <limits>

#include "slantmap/fixtures.hpp"

namespace slantmap {

namespace {

constexpr const char* kChecks[] = {"lu", "ddvv", "chen-ricci", "casorati-delta", "casorati-delta-hat"};

double outcome_value(const InstanceOutcome& o, int check) {
  switch (check) {
    case 0: return o.lu;
    case 1: return o.ddvv;
    case 2: return o.chen_ricci;
    case 3: return o.casorati_delta;
    default: return o.casorati_delta_hat;
  }
}

bool enabled(const SweepOptions& opts, int check) {
  if (check == 2) return opts.chen_ricci;
  if (check >= 3) return opts.casorati;
  return true;
}

SweepResult empty_result(std::uint64_t seed, std::uint64_t n, const SweepOptions& opts) {
  SweepResult res;
  res.seed = seed;
  res.n = n;
  for (int k = 0; k < 5; ++k)
    if (enabled(opts, k)) res.tallies.push_back({kChecks[k], 0, 0, std::numeric_limits<double>::infinity(), 0});
  return res;
}

void absorb(SweepResult& res, const InstanceOutcome& o, const SweepOptions& opts) {
  int t = 0;
  for (int k = 0; k < 5; ++k) {
    if (!enabled(opts, k)) continue;
    CheckTally& tally = res.tallies[t++];
    const double v = outcome_value(o, k);
    if (std::isnan(v)) continue;
    ++tally.count;
    if (v < tally.min_slack) {
      tally.min_slack = v;
      tally.min_index = o.index;
    }
    if (v < -opts.tol) {
      ++tally.violations;
      res.findings.push_back({kChecks[k], res.seed, o.index, v, o.r, o.normal_dim, o.c});
    }
  }
  res.max_identity_residual = std::max(res.max_identity_residual, o.identity_residual);
  res.max_sos_residual = std::max(res.max_sos_residual, o.sos_residual);
  res.max_decomposition_residual = std::max(res.max_decomposition_residual, o.decomposition_residual);
}

void finish(SweepResult& res) {
  for (CheckTally& t : res.tallies)
    if (t.count == 0) t.min_slack = 0.0;
}

}  // namespace

const CheckTally* SweepResult::tally(const std::string& name) const {
  for (const CheckTally& t : tallies)
    if (t.name == name) return &t;
  return nullptr;
}

InstanceOutcome evaluate_instance(std::uint64_t seed, std::uint64_t index, const SweepOptions& opts) {
  auto rng = substream(seed, index);
  const ProfileDraw draw = random_profile(rng, opts.max_rank);
  const SffTensor zeta = random_zeta(draw.r, draw.normal_dim, rng);
  const std::uint64_t probe_seed = rng();

  InstanceOutcome o;
  o.index = index;
  o.r = draw.r;
  o.normal_dim = draw.normal_dim;
  o.c = draw.c;
  const HorizontalCurvature R = assemble_horizontal_curvature(draw.c, draw.data, zeta);
  const CurvatureInvariants inv = horizontal_invariants(R, &zeta);
  o.identity_residual = scalar_identity_check(draw.c, draw.data, zeta, inv).residual;

  o.lu = lu_inequality_check(zeta, opts.tol, opts.lu).slack;
  const InequalityReport dd = ddvv_check(draw.c, draw.data, zeta, inv, opts.tol);
  o.ddvv = dd.slack;
  o.decomposition_residual = dd.extra("decomposition_residual");

  o.chen_ricci = std::numeric_limits<double>::quiet_NaN();
  if (opts.chen_ricci) {
    for (int x = 0; x < draw.r; ++x) {
      const InequalityReport cr = chen_ricci_check(draw.c, draw.data, zeta, inv, x, opts.tol);
      o.sos_residual = std::max(o.sos_residual, cr.extra("sos_residual"));
      if (cr.informational) continue;
      o.chen_ricci = std::isnan(o.chen_ricci) ? cr.slack : std::min(o.chen_ricci, cr.slack);
    }
  }
  o.casorati_delta = o.casorati_delta_hat = std::numeric_limits<double>::quiet_NaN();
  if (opts.casorati) {
    const auto [d, h] = casorati_bounds(draw.c, draw.data, zeta, inv, probe_seed, opts.tol);
    o.casorati_delta = d.slack;
    o.casorati_delta_hat = h.slack;
  }
  return o;
}

SweepResult run_sweep_serial(std::uint64_t seed, std::uint64_t n, const SweepOptions& opts) {
  SweepResult res = empty_result(seed, n, opts);
  for (std::uint64_t i = 0; i < n; ++i) absorb(res, evaluate_instance(seed, i, opts), opts);
  finish(res);
  return res;
}

SweepResult run_sweep_parallel(std::uint64_t seed, std::uint64_t n, const SweepOptions& opts) {
  std::vector<InstanceOutcome> outcomes(n);
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 64)
  for (long long i = 0; i < count; ++i) outcomes[i] = evaluate_instance(seed, static_cast<std::uint64_t>(i), opts);
  SweepResult res = empty_result(seed, n, opts);
  for (const InstanceOutcome& o : outcomes) absorb(res, o, opts);
  finish(res);
  return res;
}

}  // namespace slantmap
