#include "hyperkin/surface.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "hyperkin/error.hpp"

namespace hyperkin {

namespace {

std::size_t u(int i) { return static_cast<std::size_t>(i); }

int permutation_sign(const std::vector<int>& p) {
  int inv = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

}  // namespace

std::vector<std::string> param_names(int m) {
  switch (m) {
    case 1: return {"u"};
    case 2: return {"u", "v"};
    case 3: return {"u", "v", "w"};
    default: throw ValidationError("surface dimension must be 1..3, got " + std::to_string(m));
  }
}

void validate_motion(const MotionSpec& motion) {
  const auto params = param_names(motion.m);
  const int n = motion.m + 1;
  if (motion.ambient.dim != n)
    throw ValidationError("ambient dimension must be m+1 = " + std::to_string(n) + ", got " +
                          std::to_string(motion.ambient.dim));
  if (static_cast<int>(motion.components.size()) != n)
    throw ValidationError("motion needs " + std::to_string(n) + " components, got " +
                          std::to_string(static_cast<int>(motion.components.size())));
  std::set<std::string> allowed(params.begin(), params.end());
  allowed.insert("t");
  for (int a = 0; a < n; ++a) {
    if (!motion.components[u(a)])
      throw ValidationError("component " + std::to_string(a + 1) + " is null");
    for (const auto& fv : expr::free_vars(*motion.components[u(a)]))
      if (!allowed.count(fv))
        throw ValidationError("component " + std::to_string(a + 1) +
                              " references unknown variable '" + fv + "'");
  }
  if (static_cast<int>(motion.domain.size()) != motion.m)
    throw ValidationError("domain needs one interval per parameter");
  for (int i = 0; i < motion.m; ++i)
    if (!(motion.domain[u(i)][0] < motion.domain[u(i)][1]))
      throw ValidationError("domain interval for " + params[u(i)] + " is empty");
  for (const auto& e : motion.exclusions) {
    if (!e) throw ValidationError("exclusion expression is null");
    for (const auto& fv : expr::free_vars(*e))
      if (!allowed.count(fv))
        throw ValidationError("exclusion references unknown variable '" + fv + "'");
  }
}

SurfaceFrame build_surface_frame(const MotionSpec& motion, double t,
                                 std::span<const double> u0, double tol_sing) {
  validate_motion(motion);
  const int m = motion.m;
  const int n = m + 1;
  if (static_cast<int>(u0.size()) != m)
    throw ValidationError("evaluation point dimension mismatch");

  SurfaceFrame f;
  f.m = m;
  f.euclidean = motion.ambient.euclidean;
  f.t = t;
  f.u0.assign(u0.begin(), u0.end());
  auto names = param_names(m);
  names.push_back("t");
  f.uvars = VariableSet::make(names);
  f.dsurf.resize(u(m));
  std::iota(f.dsurf.begin(), f.dsurf.end(), 0);
  f.tvar = m;

  std::map<std::string, Jet> env;
  for (int i = 0; i < m; ++i)
    env.emplace(names[u(i)], Jet::variable(f.uvars, i, u0[u(i)]));
  env.emplace("t", Jet::variable(f.uvars, m, t));

  f.phi.reserve(u(n));
  for (int a = 0; a < n; ++a)
    f.phi.push_back(expr::eval_jet(*motion.components[u(a)], f.uvars, env));

  f.F.assign(u(n), std::vector<Jet>(u(m), Jet()));
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < m; ++i) f.F[u(a)][u(i)] = f.phi[u(a)].partial(i);

  // ambient tensors along the motion
  const Jet zero = Jet::constant(f.uvars, 0.0);
  if (f.euclidean) {
    f.gbar = jet_identity(f.uvars, n);
    f.gbar_inv = jet_identity(f.uvars, n);
    f.gammabar.assign(u(n), std::vector<std::vector<Jet>>(u(n), std::vector<Jet>(u(n), zero)));
    f.riembar.assign(u(n), Jets3(u(n), std::vector<std::vector<Jet>>(
                                           u(n), std::vector<Jet>(u(n), zero))));
  } else {
    std::vector<double> x0;
    x0.reserve(u(n));
    for (int a = 0; a < n; ++a) x0.push_back(f.phi[u(a)].value());
    AmbientFrame af = ambient_frame(motion.ambient, x0);

    // the metric itself composes exactly by evaluating its entries at the
    // phi jets; Christoffels and curvature carry x-derivatives of gbar and
    // go through the chain rule
    std::map<std::string, Jet> xenv;
    const auto xnames = ambient_coord_names(n);
    for (int a = 0; a < n; ++a) xenv.emplace(xnames[u(a)], f.phi[u(a)]);
    f.gbar = jet_mat(f.uvars, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        f.gbar[u(a)][u(b)] = expr::eval_jet(*motion.ambient.metric[u(a)][u(b)], f.uvars, xenv);
    f.gbar_inv = jet_mat_inverse(f.gbar, tol_sing);

    JetComposer comp(af.xvars, f.phi, x0);
    f.gammabar.assign(u(n), std::vector<std::vector<Jet>>(u(n), std::vector<Jet>(u(n), zero)));
    f.riembar.assign(u(n), Jets3(u(n), std::vector<std::vector<Jet>>(
                                           u(n), std::vector<Jet>(u(n), zero))));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          f.gammabar[u(a)][u(b)][u(c)] = comp.apply(af.gamma[u(a)][u(b)][u(c)]);
          for (int d = 0; d < n; ++d)
            f.riembar[u(a)][u(b)][u(c)][u(d)] = comp.apply(af.riemann[u(a)][u(b)][u(c)][u(d)]);
        }
  }

  // induced metric
  f.g = jet_mat(f.uvars, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Jet s = zero;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          s += f.gbar[u(a)][u(b)] * f.F[u(a)][u(i)] * f.F[u(b)][u(j)];
      f.g[u(i)][u(j)] = s;
    }
  if (std::abs(jet_det(f.g).value()) <= tol_sing)
    throw DegenerateFrameError("immersion degenerates: det g below tolerance");
  f.g_inv = jet_mat_inverse(f.g, tol_sing);

  // normal: covector n~_a = sqrt(det gbar) eps_{a b1..bm} F^{b1}_1 .. F^{bm}_m,
  // raised with gbar^{-1} and normalized
  Jet sqrt_detg = sqrt(jet_det(f.gbar));
  std::vector<Jet> n_cov(u(n), zero);
  std::vector<int> perm(u(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end());
  do {
    const int sign = permutation_sign(perm);
    Jet term = Jet::constant(f.uvars, static_cast<double>(sign));
    for (int r = 1; r < n; ++r) term = term * f.F[u(perm[u(r)])][u(r - 1)];
    n_cov[u(perm[0])] += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (int a = 0; a < n; ++a) n_cov[u(a)] = sqrt_detg * n_cov[u(a)];

  std::vector<Jet> n_up(u(n), zero);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) n_up[u(a)] += f.gbar_inv[u(a)][u(b)] * n_cov[u(b)];
  Jet norm2 = zero;
  for (int a = 0; a < n; ++a) norm2 += n_up[u(a)] * n_cov[u(a)];
  if (norm2.value() <= tol_sing)
    throw DegenerateFrameError("immersion degenerates: normal has vanishing length");
  Jet inv_len = 1.0 / sqrt(norm2);
  f.n.reserve(u(n));
  for (int a = 0; a < n; ++a) f.n.push_back(n_up[u(a)] * inv_len);

  // second fundamental form B_ij = gbar( nablabar_{Fe_i} Fe_j , n )
  f.B = jet_mat(f.uvars, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Jet s = zero;
      for (int a = 0; a < n; ++a) {
        Jet h = f.F[u(a)][u(j)].partial(i);
        if (!f.euclidean)
          for (int c = 0; c < n; ++c)
            for (int d = 0; d < n; ++d)
              h += f.gammabar[u(a)][u(c)][u(d)] * f.F[u(c)][u(i)] * f.F[u(d)][u(j)];
        for (int b = 0; b < n; ++b) s += f.gbar[u(a)][u(b)] * h * f.n[u(b)];
      }
      f.B[u(i)][u(j)] = s;
    }
  f.S = jet_mat_mul(f.g_inv, f.B);

  f.gamma = christoffel_jets(f.g, f.g_inv, f.dsurf);
  f.riemann = riemann_jets(f.gamma, f.dsurf);
  return f;
}

std::vector<Jet> tangential_components(const SurfaceFrame& f, const std::vector<Jet>& x) {
  const int m = f.m, n = m + 1;
  const Jet zero = Jet::constant(f.uvars, 0.0);
  std::vector<Jet> covar(u(m), zero);  // gbar_ab X^a F^b_j
  for (int j = 0; j < m; ++j) {
    Jet s = zero;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) s += f.gbar[u(a)][u(b)] * x[u(a)] * f.F[u(b)][u(j)];
    covar[u(j)] = s;
  }
  std::vector<Jet> out(u(m), zero);
  for (int i = 0; i < m; ++i) {
    Jet s = zero;
    for (int j = 0; j < m; ++j) s += f.g_inv[u(i)][u(j)] * covar[u(j)];
    out[u(i)] = s;
  }
  return out;
}

std::vector<double> tangential_components_values(const SurfaceFrame& f,
                                                 const std::vector<double>& x) {
  const int m = f.m, n = m + 1;
  std::vector<double> covar(u(m), 0.0);
  for (int j = 0; j < m; ++j)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        covar[u(j)] += f.gbar[u(a)][u(b)].value() * x[u(a)] * f.F[u(b)][u(j)].value();
  std::vector<double> out(u(m), 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out[u(i)] += f.g_inv[u(i)][u(j)].value() * covar[u(j)];
  return out;
}

double ambient_dot(const SurfaceFrame& f, const std::vector<double>& x,
                   const std::vector<double>& y) {
  const int n = f.m + 1;
  double s = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) s += f.gbar[u(a)][u(b)].value() * x[u(a)] * y[u(b)];
  return s;
}

double gauss_residual_sup(const SurfaceFrame& f) {
  const int m = f.m, n = m + 1;
  double sup = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int l = 0; l < m; ++l) {
        std::vector<double> w(u(n), 0.0);
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
              for (int d = 0; d < n; ++d)
                w[u(a)] += f.riembar[u(a)][u(b)][u(c)][u(d)].value() * f.F[u(b)][u(l)].value() *
                           f.F[u(c)][u(i)].value() * f.F[u(d)][u(j)].value();
        const std::vector<double> lhs = tangential_components_values(f, w);
        for (int k = 0; k < m; ++k) {
          const double rhs = f.riemann[u(k)][u(l)][u(i)][u(j)].value() +
                             f.B[u(i)][u(l)].value() * f.S[u(k)][u(j)].value() -
                             f.B[u(j)][u(l)].value() * f.S[u(k)][u(i)].value();
          sup = std::max(sup, std::abs(lhs[u(k)] - rhs));
        }
      }
  return sup;
}

double codazzi_residual_sup(const SurfaceFrame& f) {
  const int m = f.m, n = m + 1;
  const Vals3 nb = cov_deriv_02(f.gamma, f.B, f.dsurf);
  double sup = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int l = 0; l < m; ++l) {
        double rhs = 0.0;
        for (int a = 0; a < n; ++a) {
          double w = 0.0;
          for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
              for (int d = 0; d < n; ++d)
                w += f.riembar[u(a)][u(b)][u(c)][u(d)].value() * f.F[u(b)][u(l)].value() *
                     f.F[u(c)][u(i)].value() * f.F[u(d)][u(j)].value();
          for (int e = 0; e < n; ++e) rhs += f.gbar[u(e)][u(a)].value() * w * f.n[u(e)].value();
        }
        const double lhs = nb[u(i)][u(j)][u(l)] - nb[u(j)][u(i)][u(l)];
        sup = std::max(sup, std::abs(lhs - rhs));
      }
  return sup;
}

}  // namespace hyperkin
