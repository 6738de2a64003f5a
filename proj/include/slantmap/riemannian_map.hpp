#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slantmap/kenmotsu.hpp"

namespace slantmap {

using ChartMap = std::function<Point(const Point&)>;
using JacobianField = std::function<Matrix(const Point&)>;
/// Entry k is the matrix of second partials of the k-th component of F.
using HessianField = std::function<std::vector<Matrix>(const Point&)>;

struct RiemannianMapInstance {
  MetricField source;
  AlmostContactStructure target;
  ChartMap map;
  JacobianField jacobian;  // optional, central differences otherwise
  HessianField hessian;    // optional
  bool affine = false;     // F(x) = q0 + A x
  Point base;
  /// Optional spanning set for (ker F_*)^perp, used in place of the computed frame.
  std::optional<Matrix> horizontal_hint;
  std::string label;

  int source_dim() const { return source.dim; }
  int target_dim() const { return target.dim; }
};

struct Differential {
  Matrix jacobian;
  Vector singular_values;
  int rank = 0;
};

/// Jacobian of F at p with its singular-value rank.
/// Throws RankOutOfRange unless 0 < rank < min(source dim, target dim).
Differential differential_at(const RiemannianMapInstance& inst, const Point& p);

struct FrameOptions {
  bool require_isometry = true;
  double iso_tol = kDefaultTolerances.iso;
  double xi_tol = 1e-8;
};

struct MapFrames {
  Point p;
  Point fp;
  Matrix jacobian;
  int r = 0;
  OrthonormalFrame H;   // (ker F_*)^perp under g1(p)
  OrthonormalFrame V;   // ker F_*
  OrthonormalFrame RG;  // F_* e_i under g2(F(p))
  OrthonormalFrame RP;  // (range F_*)^perp
  bool xi_in_range = false;
  double isometry_defect = 0.0;
  double xi_range_residual = 0.0;

  int normal_dim() const { return RP.size(); }
};

MapFrames build_frames(const RiemannianMapInstance& inst, const FrameOptions& opts = {});

/// zeta[a](i, j) = zeta^{r+1+a}_{ij}.
struct SffTensor {
  int r = 0;
  std::vector<Matrix> zeta;
  double symmetry_defect = 0.0;
  double range_component = 0.0;  // max |range part of (nabla F_*)(e_i, e_j)|

  SffTensor() = default;
  SffTensor(int r, int normal_dim);

  int normal_dim() const { return static_cast<int>(zeta.size()); }
  double& operator()(int a, int i, int j) { return zeta[a](i, j); }
  double operator()(int a, int i, int j) const { return zeta[a](i, j); }
  double norm2() const;
  /// Components of trace zeta along the normal frame.
  Vector trace() const;
  double trace_norm2() const;
};

/// (nabla F_*)(X, Y) at p with X, Y extended as constant coordinate fields.
Vector second_fundamental_form_at(const RiemannianMapInstance& inst, const Point& p, const Vector& x,
                                  const Vector& y);

SffTensor second_fundamental_form(const RiemannianMapInstance& inst, const MapFrames& frames);

struct ShapeOperator {
  int alpha = 0;
  Matrix duality;      // (j, i) = g2(S_V F_* e_i, F_* e_j) from zeta
  Matrix independent;  // same entries from the tangential part of nabla v_alpha
  double discrepancy = 0.0;
};

/// Throws DualityViolation when the two constructions differ by more than `tol`.
ShapeOperator shape_operator(const RiemannianMapInstance& inst, const MapFrames& frames, const SffTensor& zeta,
                             int alpha, double tol = 1e-6);

/// Orthonormal frame of (range F_*)^perp at the source point x. With a
/// reference, its columns are projected onto the complement and
/// orthonormalized, which gives a frame smooth in x.
OrthonormalFrame normal_frame_at(const RiemannianMapInstance& inst, const Point& x, int rank,
                                 const Matrix* reference = nullptr);

struct GaussTerms {
  double target_curvature = 0.0;  // g2(R^M(F_*X, F_*Y)F_*Z, F_*H)
  double source_curvature = 0.0;  // g1(R(X,Y)Z, H)
  double sff_terms = 0.0;
  double residual = 0.0;
};

GaussTerms gauss_equation_check(const RiemannianMapInstance& inst, const MapFrames& frames,
                                const SffTensor& zeta, int x, int y, int z, int h);

/// g2(R^perp(F_* e_i, F_* e_j) v_a, v_b), from the normal connection by nested differences.
double normal_curvature(const RiemannianMapInstance& inst, const MapFrames& frames, int i, int j, int a, int b);

struct RicciTerms {
  double target_curvature = 0.0;
  double normal_curvature = 0.0;
  double commutator = 0.0;  // g2([S_{V2}, S_{V1}] F_*X, F_*Y)
  double residual = 0.0;
};

RicciTerms ricci_equation_check(const RiemannianMapInstance& inst, const MapFrames& frames, const SffTensor& zeta,
                                int x, int y, int v1, int v2);

/// Shape operator matrices S_a(j, i) = zeta^a_{ij} in the range frame.
std::vector<Matrix> shape_matrices(const SffTensor& zeta);

}  // namespace slantmap
