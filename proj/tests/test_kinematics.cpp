#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "hyperkin/kinematics.hpp"
#include "hyperkin/scenario.hpp"

using namespace hyperkin;

namespace {

const double kPi = 3.14159265358979323846;

struct Built {
  SurfaceFrame f;
  KinFrame k;
};

Built build(const char* name, double t, const std::vector<double>& u0) {
  const auto& sc = find_scenario(name);
  Built b{build_surface_frame(sc.motion, t, u0), {}};
  b.k = build_kin_frame(sc.motion, b.f, sc.grid.fd_step);
  return b;
}

}  // namespace

TEST_CASE("balloon: normal speed 2 sin^2 v, stretching is the identity at t=1") {
  auto [f, k] = build("balloon", 1.0, {0.6, 0.5});
  CHECK(k.vn.value() == doctest::Approx(2.0 * std::sin(0.5) * std::sin(0.5)).epsilon(1e-12));

  // v = phi / t, so the velocity gradient equals F / t
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 2; ++i)
      CHECK(k.G[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)].value() ==
            doctest::Approx(f.F[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)].value()).scale(1.0).epsilon(1e-12));

  // all three stretching routes give D = id, D_flat = g
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double id = (i == j) ? 1.0 : 0.0;
      CHECK(k.d_flat[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].value() ==
            doctest::Approx(f.g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].value()).scale(1.0).epsilon(1e-12));
      CHECK(k.d_mixed[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].value() == doctest::Approx(id).scale(1.0).epsilon(1e-12));
      CHECK(k.d_kinematic(i, j) == doctest::Approx(id).scale(1.0).epsilon(1e-11));
      CHECK(k.d_cauchy_green(i, j) == doctest::Approx(id).scale(1.0).epsilon(1e-8));
    }
}

TEST_CASE("cylinder unroll: D_flat = diag(0, 1) at t=1, all routes agree") {
  auto [f, k] = build("cylinder-unroll", 1.0, {0.7, 0.4});
  CHECK(std::abs(k.d_flat[0][0].value()) < 1e-12);
  CHECK(std::abs(k.d_flat[0][1].value()) < 1e-12);
  CHECK(k.d_flat[1][1].value() == doctest::Approx(1.0).epsilon(1e-12));
  SmallMat dm = value_of(k.d_mixed);
  CHECK(max_abs(k.d_kinematic - dm) < 1e-11);
  CHECK(max_abs(k.d_cauchy_green - dm) < 1e-8);
}

TEST_CASE("stretching routes agree across the catalog") {
  for (const auto& sc : builtin_scenarios()) {
    CAPTURE(sc.name);
    std::vector<double> pt;
    for (const auto& iv : sc.motion.domain) pt.push_back(iv[0] + 0.37 * (iv[1] - iv[0]));
    auto f = build_surface_frame(sc.motion, sc.grid.t0, pt);
    auto k = build_kin_frame(sc.motion, f, sc.grid.fd_step);
    SmallMat dm = value_of(k.d_mixed);
    const double scale = 1.0 + max_abs(dm);
    CHECK(max_abs(k.d_kinematic - dm) / scale < 1e-9);
    CHECK(max_abs(k.d_cauchy_green - dm) / scale < 1e-7);
  }
}

TEST_CASE("kinematic diagnostics are small across the catalog") {
  for (const auto& sc : builtin_scenarios()) {
    CAPTURE(sc.name);
    std::vector<double> pt;
    for (const auto& iv : sc.motion.domain) pt.push_back(iv[0] + 0.61 * (iv[1] - iv[0]));
    auto f = build_surface_frame(sc.motion, sc.grid.t0, pt);
    auto k = build_kin_frame(sc.motion, f, sc.grid.fd_step);
    CHECK(v_split_residual(f, k) < 1e-11);
    CHECK(metric_rate_residual(f, k) < 1e-10);
    CHECK(w_antisymmetry_residual(f, k) < 1e-9);
    CHECK(normal_rate_residual(f, k) < 1e-9);
  }
}

TEST_CASE("parallel sphere: unit normal speed, no tangential drift, static normal") {
  auto [f, k] = build("parallel-sphere", 1.25, {0.9, 1.1});
  CHECK(std::abs(k.vn.value()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(k.v_par[0].value()) < 1e-12);
  CHECK(std::abs(k.v_par[1].value()) < 1e-12);
  for (int a = 0; a < 3; ++a) {
    CHECK(std::abs(k.delta_n[static_cast<std::size_t>(a)]) < 1e-12);
    CHECK(std::abs(k.w_normal[static_cast<std::size_t>(a)]) < 1e-12);
  }
}

TEST_CASE("rigid translation: zero stretching, W(n) = delta n without being trivial") {
  auto [f, k] = build("rigid-translation", 1.0, {0.8, 0.9});
  CHECK(max_abs(value_of(k.d_mixed)) < 1e-12);
  CHECK(max_abs(k.d_kinematic) < 1e-12);
  CHECK(max_abs(k.d_cauchy_green) < 1e-8);
  // v = e_z has a genuine tangential part here, so S v_par and grad vn both
  // have to show up in W(n) and cancel against the transport of n.
  double sv = 0.0;
  for (int k2 = 0; k2 < 2; ++k2) {
    double s = 0.0;
    for (int j = 0; j < 2; ++j) s += f.S[static_cast<std::size_t>(k2)][static_cast<std::size_t>(j)].value() * k.v_par[static_cast<std::size_t>(j)].value();
    sv = std::max(sv, std::abs(s));
  }
  CHECK(sv > 0.05);
  CHECK(normal_rate_residual(f, k) < 1e-11);
}

TEST_CASE("parallel motion: exact second-order metric expansion in the offset") {
  // For phi_tau = phi + (tau - t) vn nhat with vn = +-1 in euclidean space:
  // g(tau) = g - 2 eps vn B + eps^2 B g^{-1} B, exactly.
  for (const char* name : {"parallel-sphere", "parallel-ellipsoid"}) {
    CAPTURE(name);
    const auto& sc = find_scenario(name);
    const double t = sc.grid.t0;
    const std::vector<double> pt{0.85, 1.05};
    auto f = build_surface_frame(sc.motion, t, pt);
    auto k = build_kin_frame(sc.motion, f, sc.grid.fd_step);
    const double eps = 0.07;
    SmallMat g_tau = metric_values_at(sc.motion, t + eps, pt);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        double bgb = 0.0;
        for (int a = 0; a < 2; ++a)
          bgb += f.B[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)].value() *
                 f.S[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)].value();
        const double predicted = f.g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].value() -
                                 2.0 * eps * k.vn.value() * f.B[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].value() +
                                 eps * eps * bgb;
        CHECK(g_tau(i, j) == doctest::Approx(predicted).scale(1.0).epsilon(1e-11));
      }
  }
}

TEST_CASE("delta n matches a finite-difference transport of the normal") {
  const auto& sc = find_scenario("normal-vn-graded");
  const double t = 1.1, h = 1e-5;
  const std::vector<double> pt{0.7, 1.3};
  auto f = build_surface_frame(sc.motion, t, pt);
  auto k = build_kin_frame(sc.motion, f, sc.grid.fd_step);
  auto fp = build_surface_frame(sc.motion, t + h, pt);
  auto fm = build_surface_frame(sc.motion, t - h, pt);
  for (int a = 0; a < 3; ++a) {
    const double fd = (fp.n[static_cast<std::size_t>(a)].value() - fm.n[static_cast<std::size_t>(a)].value()) / (2.0 * h);
    CHECK(k.delta_n[static_cast<std::size_t>(a)] == doctest::Approx(fd).scale(1.0).epsilon(1e-7));
    CHECK(k.w_normal[static_cast<std::size_t>(a)] == doctest::Approx(fd).scale(1.0).epsilon(1e-7));
  }
}

TEST_CASE("hyperbolic circle: curved-ambient kinematics stay consistent") {
  auto [f, k] = build("hyperbolic-circle", 1.1, {0.85});
  CHECK(v_split_residual(f, k) < 1e-12);
  CHECK(metric_rate_residual(f, k) < 1e-12);
  CHECK(w_antisymmetry_residual(f, k) < 1e-11);
  CHECK(normal_rate_residual(f, k) < 1e-11);
  // the offset is euclidean-radial, which is hyperbolic-orthogonal to the
  // circle; the normal speed must be visibly nonzero
  CHECK(std::abs(k.vn.value()) > 0.1);
  CHECK(std::abs(k.v_par[0].value()) < 1e-12);
}

TEST_CASE("killing rotation: tangential motion, zero normal speed") {
  auto [f, k] = build("sphere-killing-rotation", 1.0, {0.4, 0.9});
  CHECK(std::abs(k.vn.value()) < 1e-13);
  CHECK(max_abs(value_of(k.d_mixed)) < 1e-12);
  double vpar = std::max(std::abs(k.v_par[0].value()), std::abs(k.v_par[1].value()));
  CHECK(vpar > 0.1);
}

TEST_CASE("balloon at the chart point u=0: explicit velocity split") {
  auto [f, k] = build("balloon", 1.0, {0.0, kPi / 8.0});
  // v = (cos u sin 2v, sin u sin 2v, 2 sin^2 v)
  const double s2v = std::sin(kPi / 4.0);
  CHECK(k.v[0].value() == doctest::Approx(s2v).epsilon(1e-14));
  CHECK(std::abs(k.v[1].value()) < 1e-14);
  CHECK(k.v[2].value() == doctest::Approx(2.0 * std::sin(kPi / 8.0) * std::sin(kPi / 8.0)).epsilon(1e-13));
  CHECK(k.vn.value() == doctest::Approx(2.0 * std::sin(kPi / 8.0) * std::sin(kPi / 8.0)).epsilon(1e-12));
  CHECK(v_split_residual(f, k) < 1e-13);
}
