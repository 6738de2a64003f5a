#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "slantmap/gallery.hpp"

using namespace slantmap;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = budget_s <= 0.0 || secs < budget_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("[%s] %d %s: %s; %.2fs%s\n", pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs,
              in_time ? "" : " (over budget)");
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

SlantProfile profile_of(const RiemannianMapInstance& inst) {
  const MapFrames f = build_frames(inst);
  return slant_spectrum(pq_decompose(inst, f), f);
}

Vector projected_gradient(double b, double d, double k, int n) {
  Matrix h = Matrix::Constant(n, n, -2.0);
  h.diagonal().setConstant(2.0 * b);
  h(n - 1, n - 1) = 2.0 * d;
  const Matrix p = Matrix::Identity(n, n) - Matrix::Constant(n, n, 1.0 / n);
  const double lip = (p * h * p).cwiseAbs().rowwise().sum().maxCoeff();
  Vector x = Vector::Constant(n, k / n);
  for (int it = 0; it < 500000; ++it) {
    const Vector step = p * (h * x) / lip;
    x -= step;
    if (step.norm() < 1e-16) break;
  }
  return x;
}

Outcome example_seven() {
  const SlantProfile p = profile_of(fixture_by_name("hemislant-7d"));
  const double c1 = std::cos(p.theta1()), t2 = p.theta2();
  const bool ok = std::abs(c1 - 2.0 / 3.0) <= 1e-9 && std::abs(t2 - std::numbers::pi / 2) <= 1e-9;
  return {ok, fmt("cos(theta1)=%.12f want 0.666666666667, theta2=%.12f want %.12f, tol 1e-9", c1, t2,
                  std::numbers::pi / 2)};
}

Outcome example_nine() {
  const SlantProfile p = profile_of(example_bislant_9(std::numbers::pi / 6, 1.0, 1.0));
  const double e1 = std::abs(p.theta1() - std::numbers::pi / 3), e2 = std::abs(p.theta2() - std::numbers::pi / 4);
  return {e1 <= 1e-9 && e2 <= 1e-9, fmt("|theta1-pi/3|=%.2e |theta2-pi/4|=%.2e tol 1e-9", e1, e2)};
}

Outcome warped_fixture() {
  double worst_an = 0.0, worst_fd = 0.0;
  for (int m = 1; m <= 3; ++m) {
    for (bool analytic : {true, false}) {
      const AlmostContactStructure s = build_warped_kenmotsu(m, analytic);
      const StructureReport k = check_kenmotsu(s, default_probes(s.dim), analytic ? 1e-10 : 1e-5);
      for (const auto& r : k.residuals) (analytic ? worst_an : worst_fd) = std::max(analytic ? worst_an : worst_fd, r.residual);
    }
  }
  const AlmostContactStructure s = build_warped_kenmotsu(2, true);
  RunReport rep;
  append_spaceform_checks(rep, s, -1.0, 50, kDefaultSeed);
  const double curv = rep.checks.front().value;
  return {worst_an < 1e-10 && worst_fd < 1e-5 && curv < 1e-5,
          fmt("analytic %.2e (<1e-10), finite-difference %.2e (<1e-5), space form %.2e (<1e-5) on 50 quadruples",
              worst_an, worst_fd, curv)};
}

Outcome gauss_ricci() {
  double gauss = 0.0, ricci = 0.0;
  for (int k = 0; k < 20; ++k) {
    auto rng = substream(kDefaultSeed, 1000 + k);
    RandomMapOptions o;
    o.m = 2 + k % 2;
    o.rank = 2 + k % o.m;
    o.source_dim = o.rank + 1 + k % 2;
    const RiemannianMapInstance inst = random_warped_instance(o, rng);
    const MapFrames f = build_frames(inst);
    const SffTensor z = second_fundamental_form(inst, f);
    std::uniform_int_distribution<int> pick(0, f.r - 1), pick_n(0, f.normal_dim() - 1);
    for (int t = 0; t < 20; ++t) {
      gauss = std::max(gauss, gauss_equation_check(inst, f, z, pick(rng), pick(rng), pick(rng), pick(rng)).residual);
      ricci = std::max(ricci,
                       ricci_equation_check(inst, f, z, pick(rng), pick(rng), pick_n(rng), pick_n(rng)).residual);
    }
  }
  return {gauss < 1e-5 && ricci < 1e-5,
          fmt("max Gauss residual %.2e, max Ricci residual %.2e, tol 1e-5, 20 maps x 20 tuples", gauss, ricci)};
}

Outcome identity_chain() {
  double ident = 0.0, sos = 0.0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    auto rng = substream(kDefaultSeed, i);
    const ProfileDraw d = random_profile(rng);
    const SffTensor z = random_zeta(d.r, d.normal_dim, rng);
    const CurvatureInvariants inv = horizontal_invariants(assemble_horizontal_curvature(d.c, d.data, z), &z);
    ident = std::max(ident, scalar_identity_check(d.c, d.data, z, inv).residual);
    for (int x = 0; x < d.r; ++x) {
      const InequalityReport rep = chen_ricci_check(d.c, d.data, z, inv, x);
      if (!rep.informational) sos = std::max(sos, std::abs(rep.slack - rep.extra("sos")));
    }
  }
  return {ident < 1e-9 && sos < 1e-9,
          fmt("scalar identity residual %.2e, |Chen-Ricci slack - sum of squares| %.2e, tol 1e-9, 1000 instances",
              ident, sos)};
}

Outcome lu_ddvv_sweep() {
  SweepOptions o;
  o.max_rank = 5;
  o.chen_ricci = false;
  o.casorati = false;
  const SweepResult r = run_sweep_parallel(kDefaultSeed, 100000, o);
  const CheckTally *lu = r.tally("lu"), *dd = r.tally("ddvv");
  return {lu->violations == 0 && dd->violations == 0 && lu->count == 100000,
          fmt("1e5 instances, Lu violations %.0f (min slack %.3e), DDVV violations %.0f (min slack %.3e)",
              double(lu->violations), lu->min_slack, double(dd->violations), dd->min_slack)};
}

Outcome casorati_suite() {
  SweepOptions o;
  o.chen_ricci = false;
  const SweepResult r = run_sweep_parallel(kDefaultSeed, 10000, o);
  const CheckTally *lo = r.tally("casorati-delta"), *hi = r.tally("casorati-delta-hat");

  double pattern = 0.0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    auto rng = substream(kDefaultSeed, 50000 + i);
    const ProfileDraw d = random_profile(rng);
    std::normal_distribution<double> N;
    SffTensor lower(d.r, d.normal_dim), upper(d.r, d.normal_dim);
    for (int a = 0; a < d.normal_dim; ++a) {
      const double s = N(rng);
      for (int k = 0; k + 1 < d.r; ++k) {
        lower(a, k, k) = s;
        upper(a, k, k) = 2.0 * s;
      }
      lower(a, d.r - 1, d.r - 1) = 2.0 * s;
      upper(a, d.r - 1, d.r - 1) = s;
    }
    const auto inv_l = horizontal_invariants(assemble_horizontal_curvature(d.c, d.data, lower), &lower);
    const auto inv_u = horizontal_invariants(assemble_horizontal_curvature(d.c, d.data, upper), &upper);
    pattern = std::max(pattern, std::abs(casorati_bounds(d.c, d.data, lower, inv_l, i).first.slack));
    pattern = std::max(pattern, std::abs(casorati_bounds(d.c, d.data, upper, inv_u, i).second.slack));
  }

  double minimizer_gap = 0.0;
  std::mt19937_64 rng(kDefaultSeed);
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + static_cast<int>(rng() % 7);
    std::uniform_real_distribution<double> B(n - 2 + 0.2, n + 6.0), K(-3.0, 3.0);
    const double b = B(rng), k = K(rng), d = (n - 1.0) / (b - n + 2.0);
    minimizer_gap = std::max(minimizer_gap, (projected_gradient(b, d, k, n) - minimize_hyperplane_quadratic(b, d, k, n).argmin).cwiseAbs().maxCoeff());
  }
  return {lo->violations == 0 && hi->violations == 0 && pattern < 1e-9 && minimizer_gap < 1e-8,
          fmt("1e4 instances, delta violations %.0f, delta-hat violations %.0f; equality patterns |slack| %.2e "
              "(<1e-9); minimizer vs projected gradient %.2e (<1e-8)",
              double(lo->violations), double(hi->violations), pattern, minimizer_gap)};
}

Outcome class_rows() {
  std::mt19937_64 rng(kDefaultSeed);
  std::uniform_real_distribution<double> C(-3.0, 3.0), T(0.0, std::numbers::pi / 2);
  int rows_ok = 0, rows = 0;
  double worst = 0.0;
  std::string bad;
  for (bool xi : {true, false})
    for (MapClass cls : all_map_classes()) {
      ++rows;
      bool ok = true;
      for (int t = 0; t < 20; ++t) {
        const int r1 = 1 + static_cast<int>(rng() % 3), r2 = 1 + static_cast<int>(rng() % 3);
        const ClassRow row = class_row(cls, xi, C(rng), r1, r2, T(rng));
        const double e = std::abs(row.stated - row.substituted);
        worst = std::max(worst, e);
        if (e > 1e-12) ok = false;
      }
      if (ok)
        ++rows_ok;
      else
        bad += std::string(bad.empty() ? "" : ",") + to_string(cls) + (xi ? "/xi" : "/perp");
    }
  return {rows_ok == rows, fmt("%.0f of %.0f rows exact (tol 1e-12), worst gap %.3e", rows_ok, rows, worst) +
                               (bad.empty() ? "" : "; mismatched: " + bad)};
}

Outcome determinism() {
  RunConfig c;
  c.n = 10000;
  const auto run = [&] { return report_to_json(run_gallery(c)).dump() + report_to_json(run_falsification(c)).dump(); };
  const std::string a = run(), b = run();
  return {a == b, fmt("gallery + 1e4 sweep json, %.0f bytes, identical=%.0f", double(a.size()), a == b ? 1.0 : 0.0)};
}

}  // namespace

int main() {
  criterion(1, "seven-dimensional example angles", 1.0, example_seven);
  criterion(2, "nine-dimensional example angles", 1.0, example_nine);
  criterion(3, "warped Kenmotsu fixture", 10.0, warped_fixture);
  criterion(4, "Gauss and Ricci equations", 30.0, gauss_ricci);
  criterion(5, "scalar identity chain", 0.0, identity_chain);
  criterion(6, "Lu and DDVV sweep", 60.0, lu_ddvv_sweep);
  criterion(7, "Casorati suite", 0.0, casorati_suite);
  criterion(8, "class row reductions", 0.0, class_rows);
  criterion(9, "determinism", 0.0, determinism);
  std::printf("%d of 9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
