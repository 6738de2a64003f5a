#pragma once

#include <string>
#include <vector>

#include "slantmap/manifold_geometry.hpp"

namespace slantmap {

/// (psi, xi, eta, g) fields on a chart of odd dimension 2m+1.
struct AlmostContactStructure {
  int dim = 0;
  MetricField g;
  std::function<Matrix(const Point&)> psi;
  VectorField xi;
  std::function<Vector(const Point&)> eta;  // covector components
  std::string label;
};

/// The structure tensors frozen at one point.
struct PointStructure {
  Metric g;
  Matrix psi;
  Vector xi;
  Vector eta;
};

PointStructure structure_at(const AlmostContactStructure& s, const Point& p);

struct SpaceFormParams {
  double c = -1.0;
};

struct IdentityResidual {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct StructureReport {
  std::string name;
  std::vector<IdentityResidual> residuals;
  std::vector<Point> probes;
  bool pass = false;

  const IdentityResidual* find(const std::string& id) const;
};

/// 20 Halton points in [lo, hi]^dim.
std::vector<Point> default_probes(int dim, int count = 20, double lo = 0.1, double hi = 1.1);

/// Residuals of psi^2 = -I + eta(x)xi, psi xi = 0, eta o psi = 0, eta(xi) = 1,
/// g(psi X, psi Y) = g(X,Y) - eta(X)eta(Y), g(psi X,Y) = -g(X, psi Y) and
/// eta(X) = g(X, xi), each maximized over the probes.
StructureReport check_almost_contact(const AlmostContactStructure& s, const std::vector<Point>& probes,
                                     double tol = kDefaultTolerances.structure);

/// Residuals of
///   (nabla_X psi)Y = g(psi X, Y) xi - eta(Y) psi X,
///   nabla_X xi = X - eta(X) xi,
///   R(psi X, psi Y)Z - R(X,Y)Z = g(Y,Z)X - g(X,Z)Y + g(Y, psi Z) psi X - g(X, psi Z) psi Y
/// over all coordinate basis vectors at every probe.
StructureReport check_kenmotsu(const AlmostContactStructure& s, const std::vector<Point>& probes, double tol);

/// Curvature of a Kenmotsu space form M(c) applied to (X, Y, Z).
Vector spaceform_curvature(const SpaceFormParams& params, const PointStructure& s, const Vector& x,
                           const Vector& y, const Vector& z);

/// g = e^{2w} sum(du_i^2 + dv_i^2) + dw^2 on (u_1..u_m, v_1..v_m, w) with
/// xi = d/dw, eta = dw, psi(d/du_i) = d/dv_i, psi(d/dv_i) = -d/du_i. With
/// `analytic_partials` the metric derivatives are supplied in closed form;
/// otherwise the field runs in finite-difference mode.
AlmostContactStructure build_warped_kenmotsu(int m, bool analytic_partials = true);

/// psi matrix from a signed permutation table: psi(d_i) = sign(t[i]) * scale[i] * d_{|t[i]|-1},
/// with t[i] = 0 meaning psi(d_i) = 0.
Matrix psi_from_table(const std::vector<int>& table, const std::vector<double>& scale = {});

}  // namespace slantmap
