#include "hyperkin/variation.hpp"

#include <cmath>

#include "hyperkin/error.hpp"

namespace hyperkin {

namespace {

std::size_t u(int i) { return static_cast<std::size_t>(i); }

Vals3 zeros3(int m) {
  return Vals3(u(m), Vals2(u(m), std::vector<double>(u(m), 0.0)));
}

// g^{kl} [ a_{i,jl} + a_{j,il} - a_{l,ij} ] for a (0,2)-valued derivative
// array a[i][j][l]; the Koszul shape shared by the stretch and normal routes.
Vals3 koszul_raise(const SurfaceFrame& f, const Vals3& a) {
  const int m = f.m;
  Vals3 out = zeros3(m);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        double s = 0.0;
        for (int l = 0; l < m; ++l)
          s += f.g_inv[u(k)][u(l)].value() *
               (a[u(i)][u(j)][u(l)] + a[u(j)][u(i)][u(l)] - a[u(l)][u(i)][u(j)]);
        out[u(k)][u(i)][u(j)] = s;
      }
  return out;
}

// tangential components of Rbar(Y, Fe_i) Fe_j for an ambient vector Y given
// by values: P[ Rbar^a_bcd F^b_j Y^c F^d_i ]
std::vector<double> curvature_term(const SurfaceFrame& f, const std::vector<double>& y,
                                   int i, int j) {
  const int n = f.m + 1;
  std::vector<double> w(u(n), 0.0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          w[u(a)] += f.riembar[u(a)][u(b)][u(c)][u(d)].value() * f.F[u(b)][u(j)].value() *
                     y[u(c)] * f.F[u(d)][u(i)].value();
  return tangential_components_values(f, w);
}

}  // namespace

Vals3 lie_derivative_conn(const SurfaceFrame& f, const std::vector<Jet>& x) {
  const int m = f.m;
  Vals3 out = zeros3(m);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        double s = x[u(k)].deriv({i, j});
        for (int l = 0; l < m; ++l) {
          s += x[u(l)].value() * f.gamma[u(k)][u(i)][u(j)].deriv({l});
          s -= x[u(k)].deriv({l}) * f.gamma[u(l)][u(i)][u(j)].value();
          s += x[u(l)].deriv({i}) * f.gamma[u(k)][u(l)][u(j)].value();
          s += x[u(l)].deriv({j}) * f.gamma[u(k)][u(i)][u(l)].value();
        }
        out[u(k)][u(i)][u(j)] = s;
      }
  return out;
}

RouteSet delta_conn_routes(const SurfaceFrame& f, const KinFrame& k,
                           const RouteFlags& flags) {
  const int m = f.m, n = m + 1;
  RouteSet r;

  // route 1: differentiate the Christoffel jets in t
  r.definition = zeros3(m);
  for (int kk = 0; kk < m; ++kk)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        r.definition[u(kk)][u(i)][u(j)] = f.gamma[u(kk)][u(i)][u(j)].deriv({f.tvar});

  // route 2: Koszul combination of nabla d_flat
  const Vals3 nd_flat = cov_deriv_02(f.gamma, k.d_flat, f.dsurf);
  r.stretch = koszul_raise(f, nd_flat);

  // route 3: project the ambient derivative of the velocity gradient
  r.projection = zeros3(m);
  {
    // P W(n) in tangential components: -(S v_par + grad vn)
    std::vector<double> pwn(u(m), 0.0);
    for (int kk = 0; kk < m; ++kk) {
      double s = k.grad_vn[u(kk)];
      for (int j = 0; j < m; ++j) s += f.S[u(kk)][u(j)].value() * k.v_par[u(j)].value();
      pwn[u(kk)] = -s;
    }
    std::vector<double> vval(u(n), 0.0);
    for (int a = 0; a < n; ++a) vval[u(a)] = k.v[u(a)].value();

    // P(G e_l), hoisted
    Vals2 pg(u(m));
    for (int l = 0; l < m; ++l) {
      std::vector<double> gcol(u(n), 0.0);
      for (int a = 0; a < n; ++a) gcol[u(a)] = k.G[u(a)][u(l)].value();
      pg[u(l)] = tangential_components_values(f, gcol);
    }

    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        // nablabar_{e_i} (G e_j) in ambient components
        std::vector<double> dg(u(n), 0.0);
        for (int a = 0; a < n; ++a) {
          double s = k.G[u(a)][u(j)].deriv({i});
          if (!f.euclidean)
            for (int c = 0; c < n; ++c)
              for (int d = 0; d < n; ++d)
                s += f.gammabar[u(a)][u(c)][u(d)].value() * f.F[u(c)][u(i)].value() *
                     k.G[u(d)][u(j)].value();
          dg[u(a)] = s;
        }
        const std::vector<double> pdg = tangential_components_values(f, dg);
        const std::vector<double> curv = curvature_term(f, vval, i, j);
        for (int kk = 0; kk < m; ++kk) {
          double s = pdg[u(kk)] + curv[u(kk)] - f.B[u(i)][u(j)].value() * pwn[u(kk)];
          for (int l = 0; l < m; ++l)
            s -= f.gamma[u(l)][u(i)][u(j)].value() * pg[u(l)][u(kk)];
          r.projection[u(kk)][u(i)][u(j)] = s;
        }
      }
  }

  // route 4: geometric split into shape-operator, curvature and Lie parts
  r.lie_conn = lie_derivative_conn(f, k.v_par);
  r.geometric = zeros3(m);
  {
    const Vals3 ns = cov_deriv_11(f.gamma, f.S, f.dsurf);  // [i][k][j]
    std::vector<double> nval(u(n), 0.0);
    for (int a = 0; a < n; ++a) nval[u(a)] = f.n[u(a)].value();
    const double vn = k.vn.value();
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const std::vector<double> curv = curvature_term(f, nval, i, j);
        for (int kk = 0; kk < m; ++kk) {
          double s = -vn * ns[u(i)][u(kk)][u(j)];
          s -= k.vn.deriv({j}) * f.S[u(kk)][u(i)].value();
          s -= k.vn.deriv({i}) * f.S[u(kk)][u(j)].value();
          s += f.B[u(i)][u(j)].value() * k.grad_vn[u(kk)];
          s += vn * curv[u(kk)];
          s += r.lie_conn[u(kk)][u(i)][u(j)];
          r.geometric[u(kk)][u(i)][u(j)] = s;
        }
      }
  }

  // special forms
  if (flags.normal) {
    // nabla (vn B) = dvn (x) B + vn nabla B, fed through the Koszul shape
    // with an overall minus sign from d_flat = -vn B
    const Vals3 nb = cov_deriv_02(f.gamma, f.B, f.dsurf);
    Vals3 nvnb = zeros3(m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int l = 0; l < m; ++l)
          nvnb[u(i)][u(j)][u(l)] = -(k.vn.deriv({i}) * f.B[u(j)][u(l)].value() +
                                     k.vn.value() * nb[u(i)][u(j)][u(l)]);
    r.normal_form = koszul_raise(f, nvnb);
  }
  if (flags.euclidean_normal) {
    Vals3 en = zeros3(m);
    const Vals3 nb = cov_deriv_02(f.gamma, f.B, f.dsurf);
    for (int kk = 0; kk < m; ++kk)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          double s = 0.0;
          for (int l = 0; l < m; ++l) {
            const double flat = -k.vn.value() * nb[u(i)][u(j)][u(l)] -
                                (k.vn.deriv({i}) * f.B[u(j)][u(l)].value() +
                                 k.vn.deriv({j}) * f.B[u(i)][u(l)].value() -
                                 k.vn.deriv({l}) * f.B[u(i)][u(j)].value());
            s += f.g_inv[u(kk)][u(l)].value() * flat;
          }
          en[u(kk)][u(i)][u(j)] = s;
        }
    r.euclidean_normal = en;
  }
  if (flags.parallel) {
    const Vals3 ns = cov_deriv_11(f.gamma, f.S, f.dsurf);
    Vals3 pf = zeros3(m);
    for (int kk = 0; kk < m; ++kk)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          pf[u(kk)][u(i)][u(j)] = -k.vn.value() * ns[u(i)][u(kk)][u(j)];
    r.parallel_form = pf;
  }

  r.nabla_d = cov_deriv_11(f.gamma, k.d_mixed, f.dsurf);
  return r;
}

double sup_abs(const Vals3& t) {
  double s = 0.0;
  for (const auto& a : t)
    for (const auto& b : a)
      for (double c : b) s = std::max(s, std::abs(c));
  return s;
}

double sup_abs_diff(const Vals3& a, const Vals3& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j)
      for (std::size_t l = 0; l < a[i][j].size(); ++l)
        s = std::max(s, std::abs(a[i][j][l] - b[i][j][l]));
  return s;
}

double route_disagreement(const RouteSet& r) {
  std::vector<const Vals3*> routes{&r.definition, &r.stretch, &r.projection, &r.geometric};
  if (r.normal_form) routes.push_back(&*r.normal_form);
  if (r.euclidean_normal) routes.push_back(&*r.euclidean_normal);
  if (r.parallel_form) routes.push_back(&*r.parallel_form);
  const double scale = 1.0 + sup_abs(r.definition);
  double worst = 0.0;
  for (std::size_t a = 0; a < routes.size(); ++a)
    for (std::size_t b = a + 1; b < routes.size(); ++b)
      worst = std::max(worst, sup_abs_diff(*routes[a], *routes[b]) / scale);
  return worst;
}

double symmetry_residual(const RouteSet& r) {
  std::vector<const Vals3*> routes{&r.definition, &r.stretch, &r.projection, &r.geometric};
  if (r.normal_form) routes.push_back(&*r.normal_form);
  if (r.euclidean_normal) routes.push_back(&*r.euclidean_normal);
  if (r.parallel_form) routes.push_back(&*r.parallel_form);
  double worst = 0.0;
  for (const Vals3* t : routes) {
    const int m = static_cast<int>(t->size());
    for (int k = 0; k < m; ++k)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          worst = std::max(worst, std::abs((*t)[u(k)][u(i)][u(j)] - (*t)[u(k)][u(j)][u(i)]));
  }
  return worst;
}

Verdict classify(const MotionClass& cls, double sup_d, double sup_nabla_d,
                 double sup_delta_conn, double sup_lie_conn, const Tolerances& tol) {
  Verdict v;
  v.sup_d = sup_d;
  v.sup_nabla_d = sup_nabla_d;
  v.sup_delta_conn = sup_delta_conn;
  v.sup_lie_conn = cls.tangential ? sup_lie_conn : 0.0;
  v.affine = sup_nabla_d / (1.0 + sup_d) < tol.tol_affine;
  v.isometric = sup_d < tol.tol_iso;
  return v;
}

}  // namespace hyperkin
