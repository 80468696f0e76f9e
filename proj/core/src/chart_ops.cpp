#include "hyperkin/chart_ops.hpp"

#include "hyperkin/error.hpp"

namespace hyperkin {

namespace {

std::size_t u(int i) { return static_cast<std::size_t>(i); }

}  // namespace

Jets3 christoffel_jets(const JetMat& g, const JetMat& g_inv, std::span<const int> dvar) {
  const int n = static_cast<int>(dvar.size());
  if (static_cast<int>(g.size()) != n || static_cast<int>(g_inv.size()) != n)
    throw ValidationError("christoffel_jets: metric dimension does not match dvar");
  const VarsPtr vars = g[0][0].vars();

  // dg[i][j][l] = d_i g_jl as a jet
  Jets3 dg(u(n), std::vector<std::vector<Jet>>(u(n), std::vector<Jet>(u(n), Jet())));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        dg[u(i)][u(j)][u(l)] = g[u(j)][u(l)].partial(dvar[u(i)]);

  Jets3 gamma(u(n), std::vector<std::vector<Jet>>(u(n), std::vector<Jet>(u(n), Jet())));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Jet s = Jet::constant(vars, 0.0);
        for (int l = 0; l < n; ++l)
          s += g_inv[u(k)][u(l)] *
               (dg[u(i)][u(j)][u(l)] + dg[u(j)][u(i)][u(l)] - dg[u(l)][u(i)][u(j)]);
        gamma[u(k)][u(i)][u(j)] = 0.5 * s;
      }
  return gamma;
}

Jets4 riemann_jets(const Jets3& gamma, std::span<const int> dvar) {
  const int n = static_cast<int>(dvar.size());
  if (static_cast<int>(gamma.size()) != n)
    throw ValidationError("riemann_jets: connection dimension does not match dvar");
  const VarsPtr vars = gamma[0][0][0].vars();

  Jets4 r(u(n), Jets3(u(n), std::vector<std::vector<Jet>>(u(n), std::vector<Jet>(u(n), Jet()))));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          Jet s = gamma[u(a)][u(d)][u(b)].partial(dvar[u(c)]) -
                  gamma[u(a)][u(c)][u(b)].partial(dvar[u(d)]);
          for (int e = 0; e < n; ++e)
            s += gamma[u(a)][u(c)][u(e)] * gamma[u(e)][u(d)][u(b)] -
                 gamma[u(a)][u(d)][u(e)] * gamma[u(e)][u(c)][u(b)];
          r[u(a)][u(b)][u(c)][u(d)] = s;
        }
  return r;
}

Vals2 cov_deriv_vec(const Jets3& gamma, const std::vector<Jet>& x, std::span<const int> dvar) {
  const int n = static_cast<int>(dvar.size());
  Vals2 r(u(n), std::vector<double>(u(n), 0.0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      double s = x[u(k)].deriv({dvar[u(i)]});
      for (int l = 0; l < n; ++l) s += gamma[u(k)][u(i)][u(l)].value() * x[u(l)].value();
      r[u(i)][u(k)] = s;
    }
  return r;
}

Vals3 cov_deriv_11(const Jets3& gamma, const JetMat& t, std::span<const int> dvar) {
  const int n = static_cast<int>(dvar.size());
  Vals3 r(u(n), Vals2(u(n), std::vector<double>(u(n), 0.0)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        double s = t[u(k)][u(j)].deriv({dvar[u(i)]});
        for (int l = 0; l < n; ++l)
          s += gamma[u(k)][u(i)][u(l)].value() * t[u(l)][u(j)].value() -
               gamma[u(l)][u(i)][u(j)].value() * t[u(k)][u(l)].value();
        r[u(i)][u(k)][u(j)] = s;
      }
  return r;
}

Vals3 cov_deriv_02(const Jets3& gamma, const JetMat& b, std::span<const int> dvar) {
  const int n = static_cast<int>(dvar.size());
  Vals3 r(u(n), Vals2(u(n), std::vector<double>(u(n), 0.0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        double s = b[u(j)][u(l)].deriv({dvar[u(i)]});
        for (int m = 0; m < n; ++m)
          s -= gamma[u(m)][u(i)][u(j)].value() * b[u(m)][u(l)].value() +
               gamma[u(m)][u(i)][u(l)].value() * b[u(j)][u(m)].value();
        r[u(i)][u(j)][u(l)] = s;
      }
  return r;
}

}  // namespace hyperkin
