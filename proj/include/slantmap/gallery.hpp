#pragma once

#include "slantmap/fixtures.hpp"
#include "slantmap/report.hpp"

namespace slantmap {

/// Almost-contact and Kenmotsu residuals for one structure. `analytic` picks
/// the 1e-10 tolerance, otherwise 1e-5; a positive `tol` overrides both.
void append_structure_checks(RunReport& report, const AlmostContactStructure& s, bool analytic, double tol = -1.0);

/// Space form curvature against the computed Riemann tensor on random quadruples.
void append_spaceform_checks(RunReport& report, const AlmostContactStructure& s, double c, int quadruples,
                             std::uint64_t seed);

/// Frames, slant profile, classification, slant frame identities, Gauss and Ricci
/// equations at the base point. Geometry errors become failed checks.
void append_map_checks(RunReport& report, const RiemannianMapInstance& inst, std::uint64_t seed, int tuples = 20);

/// Chen-Ricci for every frame vector, DDVV and both Casorati bounds.
void append_inequality_checks(RunReport& report, const InequalityInput& in, std::uint64_t seed, double tol,
                              bool chen = true, bool ddvv = true, bool casorati = true);

/// Fixture regressions, warped models, random maps, synthetic suites and the
/// class rows. A non-empty config.fixture restricts the map section to it.
RunReport run_gallery(const RunConfig& config);

/// config.n random instances through Lu, Chen-Ricci, DDVV and Casorati.
RunReport run_falsification(const RunConfig& config, const LuOptions& lu = {});

/// Dispatch on config.command.
RunReport run_command(const RunConfig& config);

}  // namespace slantmap
