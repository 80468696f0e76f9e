#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hyperkin/chart_ops.hpp"
#include "hyperkin/jet_linalg.hpp"
#include "hyperkin/smallmat.hpp"

using namespace hyperkin;

namespace {

SmallMat random_mat(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  SmallMat m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = dist(rng);
  return m;
}

// random symmetric positive definite metric jets in n variables, degree 3:
// g = M^T M + 2 I where M has affine jet entries
JetMat random_metric_jets(std::mt19937& rng, const VarsPtr& vars,
                          const std::vector<Jet>& seeds) {
  std::uniform_real_distribution<double> dist(-0.4, 0.4);
  const int n = static_cast<int>(seeds.size());
  JetMat m = jet_mat(vars, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Jet e = Jet::constant(vars, dist(rng));
      for (int k = 0; k < n; ++k) e += dist(rng) * seeds[static_cast<std::size_t>(k)];
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = e;
    }
  JetMat g = jet_mat(vars, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Jet s = Jet::constant(vars, i == j ? 2.0 : 0.0);
      for (int k = 0; k < n; ++k)
        s += m[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] *
             m[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
      g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s;
    }
  return g;
}

}  // namespace

TEST_CASE("inverse times original is the identity") {
  std::mt19937 rng(11u);
  for (int n = 1; n <= 4; ++n) {
    for (int rep = 0; rep < 10; ++rep) {
      SmallMat a = random_mat(rng, n);
      if (std::abs(det(a)) < 0.05) continue;
      SmallMat p = a * inverse(a);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          CHECK(p(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-10).scale(1.0));
    }
  }
}

TEST_CASE("determinant oracles") {
  SmallMat a(3);
  a(0, 0) = 2;  a(0, 1) = 0;  a(0, 2) = 1;
  a(1, 0) = 1;  a(1, 1) = 3;  a(1, 2) = 2;
  a(2, 0) = 0;  a(2, 1) = 1;  a(2, 2) = 1;
  CHECK(det(a) == doctest::Approx(2 * (3 - 2) - 0 + 1 * (1 - 0)).epsilon(1e-15));
  std::mt19937 rng(5u);
  // det(AB) = det(A) det(B)
  for (int rep = 0; rep < 8; ++rep) {
    SmallMat x = random_mat(rng, 4), y = random_mat(rng, 4);
    CHECK(det(x * y) == doctest::Approx(det(x) * det(y)).epsilon(1e-9));
  }
}

TEST_CASE("positive definiteness check") {
  std::mt19937 rng(7u);
  for (int n = 2; n <= 4; ++n) {
    SmallMat a = random_mat(rng, n);
    SmallMat spd = transpose(a) * a + SmallMat::identity(n);
    CHECK(is_positive_definite(spd));
  }
  SmallMat lorentz = SmallMat::identity(2);
  lorentz(1, 1) = -1.0;
  CHECK_FALSE(is_positive_definite(lorentz));
  SmallMat zero(3);
  CHECK_FALSE(is_positive_definite(zero));
}

TEST_CASE("symmetric eigenvalues: known and characteristic checks") {
  SmallMat a(2);
  a(0, 0) = 2; a(0, 1) = 1; a(1, 0) = 1; a(1, 1) = 2;
  auto ev = symmetric_eigenvalues(a);
  CHECK(ev[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ev[1] == doctest::Approx(3.0).epsilon(1e-12));

  std::mt19937 rng(3u);
  for (int n = 2; n <= 4; ++n) {
    SmallMat r = random_mat(rng, n);
    SmallMat s = transpose(r) * r;  // symmetric PSD
    auto vals = symmetric_eigenvalues(s);
    double sum = 0.0, prod = 1.0;
    for (double v : vals) {
      sum += v;
      prod *= v;
      CHECK(v >= -1e-10);
      // each eigenvalue annihilates det(S - v I)
      SmallMat shifted = s - v * SmallMat::identity(n);
      CHECK(std::abs(det(shifted)) < 1e-8 * (1.0 + std::abs(det(s))));
    }
    CHECK(sum == doctest::Approx(trace(s)).epsilon(1e-10));
    CHECK(prod == doctest::Approx(det(s)).epsilon(1e-8));
  }
}

TEST_CASE("generalized eigenvalues of a symmetric pencil") {
  // diag pencil with a known answer
  SmallMat b(2), g(2);
  b(0, 0) = 3; b(1, 1) = -2; b(0, 1) = b(1, 0) = 0;
  g(0, 0) = 4; g(1, 1) = 1; g(0, 1) = g(1, 0) = 0;
  auto ev = generalized_sym_eigenvalues(b, g);
  CHECK(ev[0] == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(ev[1] == doctest::Approx(0.75).epsilon(1e-12));

  // random pencils: each eigenvalue must annihilate det(b - lambda g)
  std::mt19937 rng(17u);
  for (int n = 2; n <= 4; ++n) {
    SmallMat r = random_mat(rng, n);
    SmallMat gp = transpose(r) * r + 2.0 * SmallMat::identity(n);
    SmallMat r2 = random_mat(rng, n);
    SmallMat bs = transpose(r2) + r2;  // symmetric, indefinite in general
    auto vals = generalized_sym_eigenvalues(bs, gp);
    for (double v : vals) {
      SmallMat shifted = bs - v * gp;
      CHECK(std::abs(det(shifted)) < 1e-8 * (1.0 + std::abs(det(gp))));
    }
    for (std::size_t i = 1; i < vals.size(); ++i) CHECK(vals[i - 1] <= vals[i]);
  }

  SmallMat bad(2);
  bad(0, 0) = 1; bad(1, 1) = -1;
  CHECK_THROWS_AS((void)generalized_sym_eigenvalues(b, bad), DegenerateFrameError);
}

TEST_CASE("singular matrix inversion throws") {
  SmallMat a(2);
  a(0, 0) = 1; a(0, 1) = 2; a(1, 0) = 2; a(1, 1) = 4;
  CHECK_THROWS_AS((void)inverse(a), DegenerateFrameError);
}

TEST_CASE("jet matrix inverse is an inverse coefficientwise") {
  auto vars = VariableSet::make({"u", "v"});
  auto s = Jet::seed(vars, std::vector<double>{0.3, -0.2});
  std::mt19937 rng(17u);
  JetMat g = random_metric_jets(rng, vars, s);
  JetMat gi = jet_mat_inverse(g);
  JetMat p = jet_mat_mul(g, gi);
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) {
      const Jet& e = p[i][j];
      CHECK(e.value() == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12).scale(1.0));
      // all derivative coefficients of the identity are zero
      for (int a = 0; a < 2; ++a) {
        CHECK(e.deriv({a}) == doctest::Approx(0.0).scale(1.0).epsilon(1e-11));
        for (int b = a; b < 2; ++b)
          CHECK(e.deriv({a, b}) == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
      }
    }
}

TEST_CASE("jet determinant matches value-level determinant along a path") {
  auto vars = VariableSet::make({"x"});
  Jet x = Jet::variable(vars, 0, 0.4);
  JetMat a = jet_mat(vars, 3);
  a[0][0] = sin(x) + 2.0; a[0][1] = x;            a[0][2] = Jet::constant(vars, 1.0);
  a[1][0] = x * x;        a[1][1] = cos(x) + 1.5; a[1][2] = 0.5 * x;
  a[2][0] = Jet::constant(vars, 0.25); a[2][1] = exp(0.3 * x); a[2][2] = 2.0 - x;
  Jet d = jet_det(a);
  auto det_at = [](double t) {
    SmallMat m(3);
    m(0, 0) = std::sin(t) + 2.0; m(0, 1) = t;                m(0, 2) = 1.0;
    m(1, 0) = t * t;             m(1, 1) = std::cos(t) + 1.5; m(1, 2) = 0.5 * t;
    m(2, 0) = 0.25;              m(2, 1) = std::exp(0.3 * t); m(2, 2) = 2.0 - t;
    return det(m);
  };
  CHECK(d.value() == doctest::Approx(det_at(0.4)).epsilon(1e-13));
  const double h = 1e-5;
  const double fd1 = (det_at(0.4 + h) - det_at(0.4 - h)) / (2.0 * h);
  CHECK(d.deriv({0}) == doctest::Approx(fd1).epsilon(1e-8));
}

TEST_CASE("singular jet matrix inversion throws") {
  auto vars = VariableSet::make({"x"});
  Jet x = Jet::variable(vars, 0, 1.0);
  JetMat a = jet_mat(vars, 2);
  a[0][0] = x; a[0][1] = x;
  a[1][0] = x; a[1][1] = x;
  CHECK_THROWS_AS((void)jet_mat_inverse(a), DegenerateFrameError);
}

TEST_CASE("Poincare half-plane: Christoffel symbols and curvature -1") {
  auto vars = VariableSet::make({"x1", "x2"});
  const double y0 = 2.0;
  auto s = Jet::seed(vars, std::vector<double>{0.7, y0});
  JetMat g = jet_mat(vars, 2);
  Jet inv_y2 = 1.0 / (s[1] * s[1]);
  g[0][0] = inv_y2;
  g[1][1] = inv_y2;
  g[0][1] = Jet::constant(vars, 0.0);
  g[1][0] = Jet::constant(vars, 0.0);
  JetMat gi = jet_mat_inverse(g);
  const std::vector<int> dvar{0, 1};
  Jets3 gamma = christoffel_jets(g, gi, dvar);
  CHECK(gamma[0][0][1].value() == doctest::Approx(-1.0 / y0).epsilon(1e-13));
  CHECK(gamma[0][1][0].value() == doctest::Approx(-1.0 / y0).epsilon(1e-13));
  CHECK(gamma[1][0][0].value() == doctest::Approx(1.0 / y0).epsilon(1e-13));
  CHECK(gamma[1][1][1].value() == doctest::Approx(-1.0 / y0).epsilon(1e-13));
  CHECK(gamma[0][0][0].value() == doctest::Approx(0.0).scale(1.0));
  CHECK(gamma[1][0][1].value() == doctest::Approx(0.0).scale(1.0));

  Jets4 r = riemann_jets(gamma, dvar);
  // sectional curvature K = g_{1a} R^a_{212} / det(g)
  const double detg = g[0][0].value() * g[1][1].value();
  double num = 0.0;
  for (int a = 0; a < 2; ++a) num += g[0][static_cast<std::size_t>(a)].value() *
                                     r[static_cast<std::size_t>(a)][1][0][1].value();
  CHECK(num / detg == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("stereographic sphere chart: curvature +1 away from the origin") {
  auto vars = VariableSet::make({"x1", "x2"});
  const std::vector<double> pts[] = {{0.0, 0.0}, {0.3, -0.2}, {-0.8, 0.5}};
  const std::vector<int> dvar{0, 1};
  for (const auto& p : pts) {
    auto s = Jet::seed(vars, p);
    Jet r2 = s[0] * s[0] + s[1] * s[1];
    Jet denom = (1.0 + r2) * (1.0 + r2);
    Jet lam = 4.0 / denom;
    JetMat g = jet_mat(vars, 2);
    g[0][0] = lam;
    g[1][1] = lam;
    JetMat gi = jet_mat_inverse(g);
    Jets3 gamma = christoffel_jets(g, gi, dvar);
    if (p[0] == 0.0 && p[1] == 0.0) {
      for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            CHECK(gamma[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]
                       [static_cast<std::size_t>(j)].value() ==
                  doctest::Approx(0.0).scale(1.0));
    }
    Jets4 rm = riemann_jets(gamma, dvar);
    const double detg = g[0][0].value() * g[1][1].value();
    double num = 0.0;
    for (int a = 0; a < 2; ++a)
      num += g[0][static_cast<std::size_t>(a)].value() *
             rm[static_cast<std::size_t>(a)][1][0][1].value();
    CHECK(num / detg == doctest::Approx(1.0).epsilon(1e-11));
  }
}

TEST_CASE("random metrics: Bianchi, antisymmetry, metric compatibility") {
  std::mt19937 rng(23u);
  for (int n = 2; n <= 3; ++n) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
    auto vars = VariableSet::make(names);
    std::vector<int> dvar(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) dvar[static_cast<std::size_t>(i)] = i;
    for (int rep = 0; rep < 6; ++rep) {
      std::uniform_real_distribution<double> pd(-0.8, 0.8);
      std::vector<double> p(static_cast<std::size_t>(n));
      for (auto& x : p) x = pd(rng);
      auto seeds = Jet::seed(vars, p);
      JetMat g = random_metric_jets(rng, vars, seeds);
      JetMat gi = jet_mat_inverse(g);
      Jets3 gamma = christoffel_jets(g, gi, dvar);
      Jets4 r = riemann_jets(gamma, dvar);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c)
            for (int d = 0; d < n; ++d) {
              const double rabcd =
                  r[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]
                   [static_cast<std::size_t>(c)][static_cast<std::size_t>(d)].value();
              // antisymmetry in the last two slots
              CHECK(rabcd == doctest::Approx(
                        -r[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]
                           [static_cast<std::size_t>(d)][static_cast<std::size_t>(c)].value())
                        .epsilon(1e-10).scale(1.0));
              // first Bianchi identity
              const double cyc =
                  rabcd +
                  r[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)]
                   [static_cast<std::size_t>(d)][static_cast<std::size_t>(b)].value() +
                  r[static_cast<std::size_t>(a)][static_cast<std::size_t>(d)]
                   [static_cast<std::size_t>(b)][static_cast<std::size_t>(c)].value();
              CHECK(cyc == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
            }
      // nabla g = 0
      Vals3 cg = cov_deriv_02(gamma, g, dvar);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int l = 0; l < n; ++l)
            CHECK(cg[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                    [static_cast<std::size_t>(l)] ==
                  doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("covariant derivative raising commutes with the metric") {
  // T = g^{-1} B  =>  (nabla T)^k_j = g^{kl} (nabla B)_{lj}
  std::mt19937 rng(31u);
  auto vars = VariableSet::make({"x1", "x2"});
  auto seeds = Jet::seed(vars, std::vector<double>{0.2, 0.5});
  const std::vector<int> dvar{0, 1};
  JetMat g = random_metric_jets(rng, vars, seeds);
  JetMat gi = jet_mat_inverse(g);
  Jets3 gamma = christoffel_jets(g, gi, dvar);
  // a random symmetric (0,2) field with jet entries
  JetMat b = random_metric_jets(rng, vars, seeds);
  JetMat t = jet_mat_mul(gi, b);
  Vals3 ct = cov_deriv_11(gamma, t, dvar);
  Vals3 cb = cov_deriv_02(gamma, b, dvar);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      for (int j = 0; j < 2; ++j) {
        double raised = 0.0;
        for (int l = 0; l < 2; ++l)
          raised += gi[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)].value() *
                    cb[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)]
                      [static_cast<std::size_t>(j)];
        CHECK(ct[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]
                [static_cast<std::size_t>(j)] ==
              doctest::Approx(raised).epsilon(1e-10).scale(1.0));
      }
}

TEST_CASE("covariant derivative of a vector against finite differences of parallel data") {
  // flat metric in curvilinear disguise: pull the Euclidean metric back
  // through (x, y) -> (x, y + 0.3 x^2); covariant and partial derivatives
  // then differ by the Christoffel correction, which cov_deriv_vec applies
  auto vars = VariableSet::make({"x1", "x2"});
  auto s = Jet::seed(vars, std::vector<double>{0.4, 0.1});
  Jet j11 = Jet::constant(vars, 1.0), j12 = Jet::constant(vars, 0.0);
  Jet j21 = 0.6 * s[0], j22 = Jet::constant(vars, 1.0);
  JetMat g = jet_mat(vars, 2);
  g[0][0] = j11 * j11 + j21 * j21;
  g[0][1] = j11 * j12 + j21 * j22;
  g[1][0] = g[0][1];
  g[1][1] = j12 * j12 + j22 * j22;
  JetMat gi = jet_mat_inverse(g);
  const std::vector<int> dvar{0, 1};
  Jets3 gamma = christoffel_jets(g, gi, dvar);
  // X with constant push-forward (parallel in the flat sense):
  // solve J X = const vector c
  std::vector<Jet> c{Jet::constant(vars, 1.0), Jet::constant(vars, -0.5)};
  JetMat jmat = jet_mat(vars, 2);
  jmat[0][0] = j11; jmat[0][1] = j12; jmat[1][0] = j21; jmat[1][1] = j22;
  std::vector<Jet> x = jet_mat_vec(jet_mat_inverse(jmat), c);
  Vals2 cd = cov_deriv_vec(gamma, x, dvar);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k)
      CHECK(cd[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] ==
            doctest::Approx(0.0).scale(1.0).epsilon(1e-11));
}
