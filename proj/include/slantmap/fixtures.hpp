#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "slantmap/riemannian_map.hpp"

namespace slantmap {

/// Constant-coefficient structure on R^n: diagonal metric, psi from a signed
/// permutation table, xi = d_{xi_index}, eta = dx_{xi_index} scaled by the metric.
AlmostContactStructure constant_structure(const std::vector<double>& diag, const std::vector<int>& psi_table,
                                          int xi_index, const std::string& label);

/// F(x) = q0 + A x from a source chart whose metric is
///   g1(x) = A^T g2(F(x)) A + K K^T,
/// where the columns of K are a Euclidean-orthonormal basis of ker A. F is then
/// a Riemannian map at every point with horizontal leaves totally geodesic.
RiemannianMapInstance pulled_back_linear_instance(const AlmostContactStructure& target, const Vector& q0,
                                                  const Matrix& a, const Point& base, const std::string& label);

enum class XiPlacement { Range, Normal, Generic };

struct RandomMapOptions {
  int m = 2;  // warped target has dimension 2m+1
  int source_dim = 6;
  int rank = 3;
  XiPlacement xi = XiPlacement::Generic;
};

RiemannianMapInstance random_warped_instance(const RandomMapOptions& opts, std::mt19937_64& rng);

/// u_1 = x_1, u_2 = x_3 - x_4/sqrt2, u_3 = x_3/sqrt2 - x_4/2, v_1 = -x_5/sqrt3 + x_6,
/// v_2 = x_5/sqrt6 - x_6/sqrt2, v_3 = 0, w = x_7, with the (v_1, v_2) metric
/// block given by `v_block`.
RiemannianMapInstance example_bislant_7(double v1_weight = 0.5, double v2_weight = 0.5,
                                        const std::string& label = "hemislant-7d");
RiemannianMapInstance example_bislant_7_literal();

/// The nine-dimensional family with parameters (alpha, beta, gamma).
RiemannianMapInstance example_bislant_9(double alpha, double beta, double gamma);

/// F(x_1, x_2, x_3) = (x_1, 0, x_3) into the warped model with m = 1.
RiemannianMapInstance totally_geodesic_instance();

struct BiSlantMapOptions {
  int r1 = 1;
  int r2 = 1;
  double theta1 = 1.0471975511965976;  // pi/3
  double theta2 = 0.7853981633974483;  // pi/4
  bool xi_in_range = true;
  double bend = 0.3;  // scale of the quadratic normal part
  std::uint64_t seed = 1;
};

/// Bi-slant Riemannian map into the warped model with m = 2(r1 + r2):
/// F(x) = A x + 1/2 sum_a nu_a x^T M_a x, with A the canonical bi-slant frame at
/// the origin, nu_a normal directions and M_a random symmetric forms on the r
/// horizontal coordinates. The source has one extra kernel coordinate.
RiemannianMapInstance bislant_warped_instance(const BiSlantMapOptions& opts);

/// Names accepted by fixture_by_name.
std::vector<std::string> fixture_names();
/// Throws FixtureMissing for unknown names.
RiemannianMapInstance fixture_by_name(const std::string& name);

/// Independent per-instance stream derived from (seed, index).
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t index);

}  // namespace slantmap
