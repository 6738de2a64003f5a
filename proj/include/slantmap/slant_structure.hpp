#pragma once

#include <string>
#include <vector>

#include "slantmap/riemannian_map.hpp"

namespace slantmap {

/// psi on range F_* and on its complement, in the frames RG and RP.
struct TangentialNormalSplit {
  Matrix psi;    // psi at F(p), target coordinates
  Matrix P;      // (j, i) = g2(psi F_* e_i, F_* e_j)
  Matrix Q;      // (a, i) = g2(psi F_* e_i, v_a)
  Matrix phi;    // (j, a) = g2(psi v_a, F_* e_j)
  Matrix omega;  // (b, a) = g2(psi v_a, v_b)
  double range_sum_defect = 0.0;   // |P + Q - psi| on range F_*
  double normal_sum_defect = 0.0;  // |phi + omega - psi| on the complement
};

TangentialNormalSplit pq_decompose(const RiemannianMapInstance& inst, const MapFrames& frames);

struct SlantCluster {
  double eigenvalue = 0.0;  // cos^2 theta
  double theta = 0.0;
  int multiplicity = 0;
  Matrix basis;  // orthonormal coefficient columns in the RG frame
};

struct SlantProfile {
  std::vector<SlantCluster> clusters;  // D_theta1 first when there are two
  std::vector<double> spectrum;        // eigenvalues of -P^2 on range minus xi
  bool xi_in_range = false;
  int r1 = 0;
  int r2 = 0;
  bool even_multiplicities = true;
  double asymmetry = 0.0;      // |M - M^T| for M = -P^2
  double cross_defect = 0.0;   // max |g2(psi D_i, D_j)|, i != j
  int xi_index = -1;

  double theta1() const;
  double theta2() const;
};

/// Spectrum of -P^2 on range F_* minus span(xi), clustered with gap `delta`.
/// Throws SpectrumOutOfRange for eigenvalues outside [0, 1] and
/// ClusterAmbiguity for more than two clusters.
SlantProfile slant_spectrum(const TangentialNormalSplit& split, const MapFrames& frames, double delta = 1e-6);

struct SlantIdentityReport {
  // phi Q = sin^2 psi^2, QP + omega Q = 0, |P|, |Q|, |omega Q| pairings.
  double residual[5] = {0, 0, 0, 0, 0};
};

SlantIdentityReport slant_frame_identities(const MapFrames& frames, const TangentialNormalSplit& split,
                                 const SlantProfile& profile);

enum class MapClass { Invariant, AntiInvariant, SemiInvariant, ProperSlant, SemiSlant, HemiSlant, BiSlantProper };

const char* to_string(MapClass c);
MapClass map_class_from_string(const std::string& s);

/// Throws Unclassifiable when the profile has no cluster.
MapClass classify(const SlantProfile& profile, double delta = 1e-6);

/// Canonical data consumed by the curvature inequalities: Psi(i, j) =
/// g2(psi F_* e_i, F_* e_j), eta(i) = eta(F_* e_i), slant blocks.
struct BiSlantData {
  int r = 0;
  Matrix Psi;
  Vector eta;
  bool xi_in_range = false;
  int r1 = 0;
  int r2 = 0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  std::vector<int> block;  // 0 for D_theta1, 1 for D_theta2, 2 for xi

  /// r1 cos^2 theta1 + r2 cos^2 theta2
  double slant_sum() const;
  /// sum_ij Psi_ij^2
  double psi_frame_sum() const { return Psi.squaredNorm(); }
  double eta_sum() const { return eta.squaredNorm(); }
  /// cos^2 of the angle of the block holding frame index i (0 for xi).
  double block_cos2(int i) const;
};

/// Pairs e, sec(theta) P e inside each cluster and puts xi last. Returns the
/// rotated frames together with the canonical data.
struct CanonicalFrames {
  MapFrames frames;
  BiSlantData data;
};

CanonicalFrames canonicalize(const MapFrames& frames, const TangentialNormalSplit& split,
                             const SlantProfile& profile);

/// Explicit linear almost-contact model on R^{2n+1} with the standard complex
/// structure, producing canonical bi-slant data for r1 + r2 pairs.
BiSlantData canonical_bislant_model(int r1, int r2, double theta1, double theta2, bool xi_in_range);

struct RangePerpReport {
  double lhs = 0.0;  // g2(R(QX, QY)QZ, QH)
  double terms[6] = {0, 0, 0, 0, 0, 0};
  double rhs = 0.0;
  double residual = 0.0;
  double dropped_cross_terms = 0.0;
};

/// R^perp components g2(R^perp(F_* e_i, F_* e_j) v_a, v_b), indexed [i * r + j](a, b).
std::vector<Matrix> normal_curvature_tensor(const RiemannianMapInstance& inst, const MapFrames& frames);

/// Throws PreconditionUnverified unless `perp_totally_geodesic` is asserted and
/// the cross terms dropped by the identity vanish to `tol`.
RangePerpReport range_perp_curvature_identity(const RiemannianMapInstance& inst, const MapFrames& frames,
                                              const TangentialNormalSplit& split, const SffTensor& zeta,
                                              const std::vector<Matrix>& rperp, int x, int y, int z, int h,
                                              bool perp_totally_geodesic, double tol = 1e-6);

struct NormalRicciReport {
  double lhs = 0.0;                 // sum_j g2(R(Q e_j, V1)V2, Q e_j)
  double rhs_contracted = 0.0;      // the identity summed over e_j
  double rhs_equality = 0.0;        // commutators dropped, constant (1 - m + r) g2(V1, V2)
  double rhs_bound = 0.0;           // commutators kept, constant (1 - m + r) g2(V1, V2)
  double constant_deviation = 0.0;  // |sum_j (...) - (1 - m + r) g2(V1, V2)|
  double residual_contracted = 0.0;
  double residual_equality = 0.0;
};

/// For xi in range, mu = {0}: V1 = Q F_* e_x, V2 = Q F_* e_y.
/// Throws PreconditionUnverified when Q does not span the normal bundle.
NormalRicciReport normal_ricci_report(const RiemannianMapInstance& inst, const MapFrames& frames,
                                      const TangentialNormalSplit& split, const SffTensor& zeta,
                                      const std::vector<Matrix>& rperp, int x, int y);

}  // namespace slantmap
