#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slantmap/curvature_inequalities.hpp"

namespace slantmap {

struct SweepOptions {
  int max_rank = 7;
  double tol = kDefaultTolerances.inequality;
  LuOptions lu;
  bool chen_ricci = true;
  bool casorati = true;
};

/// One random (c, profile, zeta) instance drawn from substream(seed, index).
struct InstanceOutcome {
  std::uint64_t index = 0;
  int r = 0;
  int normal_dim = 0;
  double c = 0.0;
  double lu = 0.0;
  double ddvv = 0.0;
  double chen_ricci = 0.0;  // minimum over gated frame vectors
  double casorati_delta = 0.0;
  double casorati_delta_hat = 0.0;
  double identity_residual = 0.0;
  double sos_residual = 0.0;
  double decomposition_residual = 0.0;
};

InstanceOutcome evaluate_instance(std::uint64_t seed, std::uint64_t index, const SweepOptions& opts);

struct CheckTally {
  std::string name;
  std::uint64_t count = 0;
  std::uint64_t violations = 0;
  double min_slack = 0.0;
  std::uint64_t min_index = 0;
};

struct Finding {
  std::string check;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  double slack = 0.0;
  int r = 0;
  int normal_dim = 0;
  double c = 0.0;
};

struct SweepResult {
  std::uint64_t seed = 0;
  std::uint64_t n = 0;
  std::vector<CheckTally> tallies;
  double max_identity_residual = 0.0;
  double max_sos_residual = 0.0;
  double max_decomposition_residual = 0.0;
  std::vector<Finding> findings;  // ordered by instance index

  const CheckTally* tally(const std::string& name) const;
};

/// Plain loop over instances 0..n-1.
SweepResult run_sweep_serial(std::uint64_t seed, std::uint64_t n, const SweepOptions& opts = {});
/// OpenMP over instances; merged by instance index, bitwise equal to the serial result.
SweepResult run_sweep_parallel(std::uint64_t seed, std::uint64_t n, const SweepOptions& opts = {});

}  // namespace slantmap
