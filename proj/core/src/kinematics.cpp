#include "hyperkin/kinematics.hpp"

#include <cmath>
#include <map>

#include "hyperkin/error.hpp"

namespace hyperkin {

namespace {

std::size_t u(int i) { return static_cast<std::size_t>(i); }

SmallMat cg_difference(const MotionSpec& motion, double t, std::span<const double> u0,
                       double h) {
  SmallMat gp = metric_values_at(motion, t + h, u0);
  SmallMat gm = metric_values_at(motion, t - h, u0);
  SmallMat d(gp.dim());
  for (int i = 0; i < gp.dim(); ++i)
    for (int j = 0; j < gp.dim(); ++j) d(i, j) = (gp(i, j) - gm(i, j)) / (2.0 * h);
  return d;
}

}  // namespace

SmallMat metric_values_at(const MotionSpec& motion, double t, std::span<const double> u0) {
  const int m = motion.m, n = m + 1;
  auto names = param_names(m);
  names.push_back("t");
  auto uvars = VariableSet::make(names);
  std::map<std::string, Jet> env;
  for (int i = 0; i < m; ++i)
    env.emplace(names[u(i)], Jet::variable(uvars, i, u0[u(i)]));
  env.emplace("t", Jet::variable(uvars, m, t));

  std::vector<Jet> phi;
  phi.reserve(u(n));
  for (int a = 0; a < n; ++a)
    phi.push_back(expr::eval_jet(*motion.components[u(a)], uvars, env));

  Vals2 fv(u(n), std::vector<double>(u(m), 0.0));
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < m; ++i) fv[u(a)][u(i)] = phi[u(a)].deriv({i});

  SmallMat gbar(n);
  if (motion.ambient.euclidean) {
    gbar = SmallMat::identity(n);
  } else {
    std::map<std::string, double> xenv;
    const auto xnames = ambient_coord_names(n);
    for (int a = 0; a < n; ++a) xenv.emplace(xnames[u(a)], phi[u(a)].value());
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        gbar(a, b) = expr::eval_scalar(*motion.ambient.metric[u(a)][u(b)], xenv);
  }

  SmallMat g(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double s = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) s += gbar(a, b) * fv[u(a)][u(i)] * fv[u(b)][u(j)];
      g(i, j) = s;
    }
  return g;
}

KinFrame build_kin_frame(const MotionSpec& motion, const SurfaceFrame& f, double fd_step) {
  const int m = f.m, n = m + 1;
  const Jet zero = Jet::constant(f.uvars, 0.0);
  KinFrame k;

  k.v.reserve(u(n));
  for (int a = 0; a < n; ++a) k.v.push_back(f.phi[u(a)].partial(f.tvar));

  k.vn = zero;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) k.vn += f.gbar[u(a)][u(b)] * k.v[u(a)] * f.n[u(b)];

  k.v_par = tangential_components(f, k.v);

  k.G.assign(u(n), std::vector<Jet>(u(m), zero));
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < m; ++i) {
      Jet s = k.v[u(a)].partial(i);
      if (!f.euclidean)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d)
            s += f.gammabar[u(a)][u(c)][u(d)] * f.F[u(c)][u(i)] * k.v[u(d)];
      k.G[u(a)][u(i)] = s;
    }

  // route 1: exact time derivative of the induced metric
  k.d_flat = jet_mat(f.uvars, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) k.d_flat[u(i)][u(j)] = 0.5 * f.g[u(i)][u(j)].partial(f.tvar);
  k.d_mixed = jet_mat_mul(f.g_inv, k.d_flat);

  // route 2: symmetrized tangential velocity gradient minus vn S
  const Vals2 cdv = cov_deriv_vec(f.gamma, k.v_par, f.dsurf);  // [i][k]
  const SmallMat gv = value_of(f.g), giv = value_of(f.g_inv);
  k.d_kinematic = SmallMat(m);
  for (int kk = 0; kk < m; ++kk)
    for (int i = 0; i < m; ++i) {
      double adj = 0.0;  // (A*)^k_i = g^{kl} A^m_l g_mi
      for (int l = 0; l < m; ++l)
        for (int mm = 0; mm < m; ++mm)
          adj += giv(kk, l) * cdv[u(l)][u(mm)] * gv(mm, i);
      k.d_kinematic(kk, i) = 0.5 * (cdv[u(i)][u(kk)] + adj) -
                             k.vn.value() * f.S[u(kk)][u(i)].value();
    }

  // route 3: Cauchy-Green probe, central difference with one Richardson step.
  // C(tau) = g(t)^{-1} g(tau), so D = 1/2 C'(t); the metric values at the
  // probe times come from fresh evaluations, independent of the jet t-slot.
  {
    const SmallMat d1 = cg_difference(motion, f.t, f.u0, fd_step);
    const SmallMat d2 = cg_difference(motion, f.t, f.u0, 0.5 * fd_step);
    SmallMat rich(m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) rich(i, j) = (4.0 * d2(i, j) - d1(i, j)) / 3.0;
    k.d_cauchy_green = SmallMat(m);
    for (int kk = 0; kk < m; ++kk)
      for (int i = 0; i < m; ++i) {
        double s = 0.0;
        for (int l = 0; l < m; ++l) s += giv(kk, l) * rich(l, i);
        k.d_cauchy_green(kk, i) = 0.5 * s;
      }
  }

  k.grad_vn.assign(u(m), 0.0);
  for (int kk = 0; kk < m; ++kk)
    for (int l = 0; l < m; ++l) k.grad_vn[u(kk)] += giv(kk, l) * k.vn.deriv({l});

  k.w_frame.assign(u(m), std::vector<double>(u(n), 0.0));
  for (int i = 0; i < m; ++i)
    for (int a = 0; a < n; ++a) {
      double s = k.G[u(a)][u(i)].value();
      for (int kk = 0; kk < m; ++kk)
        s -= f.F[u(a)][u(kk)].value() * k.d_mixed[u(kk)][u(i)].value();
      k.w_frame[u(i)][u(a)] = s;
    }

  k.w_normal.assign(u(n), 0.0);
  for (int a = 0; a < n; ++a) {
    double s = 0.0;
    for (int kk = 0; kk < m; ++kk) {
      double tang = k.grad_vn[u(kk)];
      for (int j = 0; j < m; ++j) tang += f.S[u(kk)][u(j)].value() * k.v_par[u(j)].value();
      s -= f.F[u(a)][u(kk)].value() * tang;
    }
    k.w_normal[u(a)] = s;
  }

  k.delta_n.assign(u(n), 0.0);
  for (int a = 0; a < n; ++a) {
    double s = f.n[u(a)].deriv({f.tvar});
    if (!f.euclidean)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          s += f.gammabar[u(a)][u(c)][u(d)].value() * k.v[u(c)].value() * f.n[u(d)].value();
    k.delta_n[u(a)] = s;
  }

  return k;
}

double v_split_residual(const SurfaceFrame& f, const KinFrame& k) {
  const int m = f.m, n = m + 1;
  double sup = 0.0;
  for (int a = 0; a < n; ++a) {
    double rec = k.vn.value() * f.n[u(a)].value();
    for (int i = 0; i < m; ++i) rec += f.F[u(a)][u(i)].value() * k.v_par[u(i)].value();
    sup = std::max(sup, std::abs(k.v[u(a)].value() - rec));
  }
  return sup;
}

double w_antisymmetry_residual(const SurfaceFrame& f, const KinFrame& k) {
  const int m = f.m, n = m + 1;
  // basis: Fe_1..Fe_m, n; W acts by w_frame and w_normal
  std::vector<std::vector<double>> basis, wofbasis;
  for (int i = 0; i < m; ++i) {
    std::vector<double> e(u(n), 0.0), we = k.w_frame[u(i)];
    for (int a = 0; a < n; ++a) e[u(a)] = f.F[u(a)][u(i)].value();
    basis.push_back(e);
    wofbasis.push_back(we);
  }
  {
    std::vector<double> e(u(n), 0.0);
    for (int a = 0; a < n; ++a) e[u(a)] = f.n[u(a)].value();
    basis.push_back(e);
    wofbasis.push_back(k.w_normal);
  }
  double sup = 0.0;
  for (int p = 0; p <= m; ++p)
    for (int q = 0; q <= m; ++q) {
      const double om = ambient_dot(f, wofbasis[u(p)], basis[u(q)]) +
                        ambient_dot(f, basis[u(p)], wofbasis[u(q)]);
      sup = std::max(sup, std::abs(om));
    }
  return sup;
}

double metric_rate_residual(const SurfaceFrame& f, const KinFrame& k) {
  const int m = f.m, n = m + 1;
  double sup = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double gi = 0.0, gj = 0.0;
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          gi += f.gbar[u(a)][u(b)].value() * k.G[u(a)][u(i)].value() * f.F[u(b)][u(j)].value();
          gj += f.gbar[u(a)][u(b)].value() * k.G[u(a)][u(j)].value() * f.F[u(b)][u(i)].value();
        }
      sup = std::max(sup, std::abs(0.5 * (gi + gj) - k.d_flat[u(i)][u(j)].value()));
    }
  return sup;
}

double normal_rate_residual(const SurfaceFrame& f, const KinFrame& k) {
  double sup = 0.0;
  for (std::size_t a = 0; a < k.w_normal.size(); ++a)
    sup = std::max(sup, std::abs(k.w_normal[a] - k.delta_n[a]));
  return sup;
}

}  // namespace hyperkin
