#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "slantmap/riemannian_map.hpp"
#include "slantmap/slant_structure.hpp"
#include "slantmap/tolerances.hpp"

namespace slantmap {

/// R(i,j,k,l) = g1(R(e_i,e_j)e_k, e_l) on a horizontal orthonormal frame.
class HorizontalCurvature {
 public:
  explicit HorizontalCurvature(int r) : r_(r), data_(static_cast<size_t>(r) * r * r * r, 0.0) {}

  int dim() const { return r_; }
  double& operator()(int i, int j, int k, int l) { return data_[idx(i, j, k, l)]; }
  double operator()(int i, int j, int k, int l) const { return data_[idx(i, j, k, l)]; }

 private:
  size_t idx(int i, int j, int k, int l) const { return ((static_cast<size_t>(i) * r_ + j) * r_ + k) * r_ + l; }
  int r_;
  std::vector<double> data_;
};

/// Gauss equation with the space form curvature at parameter c on the range
/// and the supplied second fundamental form.
HorizontalCurvature assemble_horizontal_curvature(double c, const BiSlantData& data, const SffTensor& zeta);

/// Source curvature evaluated on the horizontal frame of `frames`.
HorizontalCurvature horizontal_curvature_from_source(const RiemannianMapInstance& inst, const MapFrames& frames);

struct CurvatureInvariants {
  std::vector<double> ric;  // Ric(e_i)
  double tau = 0.0;
  double rho = 0.0;
  double tau_perp = 0.0;
  double rho_perp = 0.0;
};

/// Ric(X) = sum_i R(e_i,X,X,e_i) for X in frame coordinates.
double ricci(const HorizontalCurvature& R, const Vector& x);

/// Ric, tau and rho from R; tau_perp and rho_perp are filled when zeta is given.
CurvatureInvariants horizontal_invariants(const HorizontalCurvature& R, const SffTensor* zeta = nullptr);

struct SffStats {
  double norm2 = 0.0;
  Vector trace;
  double trace_norm2 = 0.0;
};

SffStats sff_stats(const SffTensor& zeta);

/// Normal scalar curvature. The commutator and coefficient forms are computed
/// separately; InternalInconsistency when they disagree beyond 1e-10 relative.
struct NormalScalar {
  double tau_perp = 0.0;  // square root of the commutator sum
  double rho_perp = 0.0;
  double commutator_form = 0.0;
  double coefficient_form = 0.0;
};

NormalScalar normal_scalar(const SffTensor& zeta);

/// (c-3)/4 r(r-1) + (c+1)/4 (-2(r-1) sum eta^2 + 3 sum Psi^2) against
/// |zeta|^2 - |trace zeta|^2 + 2 tau.
struct ScalarIdentityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double residual_negative_tau = 0.0;  // with -2 tau on the right
  double residual_rearranged = 0.0;    // zeta terms inside the (c+1) bracket
  double frame_sum = 0.0;              // sum Psi_ij^2
  double frame_sum_deviation = 0.0;    // |frame_sum - 2 (r1 cos^2 + r2 cos^2)|
  double eta_sum = 0.0;
};

ScalarIdentityReport scalar_identity_check(double c, const BiSlantData& data, const SffTensor& zeta,
                                           const CurvatureInvariants& inv);

struct NamedValue {
  std::string name;
  double value = 0.0;
};

struct InequalityReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool holds = false;
  bool informational = false;
  std::vector<NamedValue> equality_diag;
  std::vector<NamedValue> extras;

  double extra(const std::string& key) const;
  double diag(const std::string& key) const;
};

InequalityReport make_report(std::string name, double lhs, double rhs, double tol);

/// 4 Ric(X) against (c-3)(r-1) - (c+1)[(r-2)eta_X^2 + sum eta^2] + 3(c+1) sum_i Psi_Xi^2 + |trace zeta|^2.
/// The slack is the sum of squares
/// sum_a (zeta_XX - sum_{k!=X} zeta_kk)^2 + 4 sum_a sum_{i!=X} zeta_Xi^2, exposed as extra "sos".
InequalityReport chen_ricci_check(double c, const BiSlantData& data, const SffTensor& zeta,
                                  const CurvatureInvariants& inv, int x, double tol = kDefaultTolerances.inequality);

struct LuOptions {
  bool flip_sign = false;  // test hook: negates the slack
};

/// 2r sqrt(K) <= sum_a sum_{i<j} (zeta_ii - zeta_jj)^2 + 2r sum_a sum_{i<j} zeta_ij^2.
InequalityReport lu_inequality_check(const SffTensor& zeta, double tol = kDefaultTolerances.inequality,
                                     const LuOptions& opts = {});

/// Tail of the bi-slant bound beyond |trace zeta|^2/r^2 (DDVV) or delta (Casorati):
/// (c-3)/4 - [xi in range](c+1)/(2r) + 3(c+1) S/(2r(r-1)).
double bislant_tail(double c, int r, double slant_sum, bool xi_in_range);
/// Same tail from numeric frame sums.
double frame_tail(double c, const BiSlantData& data);

struct ClassRow {
  MapClass cls = MapClass::Invariant;
  bool xi_in_range = false;
  int r = 0;
  double stated = 0.0;
  double substituted = 0.0;
  double residual = 0.0;
};

/// Slant sum S for the class, from the free parameters the row keeps.
double row_slant_sum(MapClass cls, int r1, int r2, double theta2);
/// r = 2 r1 + 2 r2 (+1 when xi lies in the range).
int row_rank(MapClass cls, int r1, int r2, bool xi_in_range);
/// Tail as stated in the class rows.
double stated_row_tail(MapClass cls, bool xi_in_range, double c, int r, int r1, int r2, double theta2);
ClassRow class_row(MapClass cls, bool xi_in_range, double c, int r1, int r2, double theta2);
const std::vector<MapClass>& all_map_classes();

/// rho_perp + rho against |trace zeta|^2/r^2 + tail. Extras: lu_slack,
/// decomposition_residual, trace_identity_residual, and row_stated_rhs /
/// row_substituted_rhs when the profile matches a class row.
InequalityReport ddvv_check(double c, const BiSlantData& data, const SffTensor& zeta, const CurvatureInvariants& inv,
                            double tol = kDefaultTolerances.inequality);

struct CasoratiSet {
  double C = 0.0;
  std::vector<double> C_of_L;  // coordinate hyperplanes first, then random probes
  std::vector<Vector> normals;
  double inf_CL = 0.0;
  double sup_CL = 0.0;
  int inf_index = 0;
  int sup_index = 0;
  double delta = 0.0;
  double delta_hat = 0.0;
  bool probe_bound = true;  // inf and sup come from a finite probe set
};

/// C(L) for the hyperplane with unit normal u (frame coordinates).
double casorati_hyperplane(const SffTensor& zeta, const Vector& u);
/// Sum of squares of zeta restricted to the hyperplane orthogonal to u.
double restricted_norm2(const SffTensor& zeta, const Vector& u);

CasoratiSet casorati_curvatures(const SffTensor& zeta, std::uint64_t seed, int random_probes = 200);

struct QuadraticMinimum {
  Vector argmin;
  double min_value = 0.0;
};

/// f(x) = b sum_{i<n} x_i^2 + d x_n^2 - 2 sum_{i<j} x_i x_j on sum x_i = k.
double hyperplane_quadratic(double b, double d, const Vector& x);
QuadraticMinimum minimize_hyperplane_quadratic(double b, double d, double k, int n);

/// P_L = (r+1)/2 (|zeta|^2 + |zeta_L|^2) - |trace zeta|^2.
double casorati_p_polynomial(const SffTensor& zeta, const Vector& u);
/// Q_L = (2r-1)(|zeta|^2 - |zeta_L|^2/2) - |trace zeta|^2.
double casorati_q_polynomial(const SffTensor& zeta, const Vector& u);

/// rho against delta_C(r-1) + tail and delta_hat_C(r-1) + tail. Rejects r < 3.
std::pair<InequalityReport, InequalityReport> casorati_bounds(double c, const BiSlantData& data,
                                                              const SffTensor& zeta, const CurvatureInvariants& inv,
                                                              std::uint64_t seed,
                                                              double tol = kDefaultTolerances.inequality);

/// Entries uniform on [-1, 1], symmetrized.
SffTensor random_zeta(int r, int normal_dim, std::mt19937_64& rng);

struct ProfileDraw {
  int r = 0;
  int normal_dim = 0;
  double c = 0.0;
  BiSlantData data;
};

/// r in {3,4,5,7} capped at max_rank, normal dimension in {1,2,3}, xi in the
/// range for odd r, angles uniform with mass 0.1 at each endpoint, c uniform on [-3, 3].
ProfileDraw random_profile(std::mt19937_64& rng, int max_rank = 7);

}  // namespace slantmap
