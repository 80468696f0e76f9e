#include "hyperkin/ambient.hpp"

#include <cmath>
#include <map>
#include <set>

#include "hyperkin/error.hpp"

namespace hyperkin {

namespace {

std::size_t u(int i) { return static_cast<std::size_t>(i); }

void check_dim(int dim) {
  if (dim < 2 || dim > 4)
    throw ValidationError("ambient dimension must be 2..4, got " + std::to_string(dim));
}

}  // namespace

std::vector<std::string> ambient_coord_names(int dim) {
  check_dim(dim);
  std::vector<std::string> names;
  for (int i = 1; i <= dim; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

AmbientSpec AmbientSpec::make_euclidean(int dim) {
  check_dim(dim);
  AmbientSpec s;
  s.dim = dim;
  s.euclidean = true;
  return s;
}

AmbientSpec AmbientSpec::make_metric(
    int dim, const std::vector<std::tuple<int, int, expr::ExprPtr>>& entries) {
  check_dim(dim);
  AmbientSpec s;
  s.dim = dim;
  s.euclidean = false;
  s.metric.assign(u(dim), std::vector<expr::ExprPtr>(u(dim), nullptr));
  const auto names = ambient_coord_names(dim);
  const std::set<std::string> allowed(names.begin(), names.end());
  for (const auto& [i, j, e] : entries) {
    if (i < 0 || i >= dim || j < 0 || j >= dim)
      throw ValidationError("metric entry index out of range: (" + std::to_string(i + 1) +
                            ", " + std::to_string(j + 1) + ")");
    if (!e) throw ValidationError("metric entry expression is null");
    if (s.metric[u(i)][u(j)])
      throw ValidationError("duplicate metric entry (" + std::to_string(i + 1) + ", " +
                            std::to_string(j + 1) + ")");
    for (const auto& fv : expr::free_vars(*e))
      if (!allowed.count(fv))
        throw ValidationError("metric entry (" + std::to_string(i + 1) + ", " +
                              std::to_string(j + 1) + ") references unknown variable '" +
                              fv + "'");
    s.metric[u(i)][u(j)] = e;
    if (i != j && !s.metric[u(j)][u(i)]) s.metric[u(j)][u(i)] = e;
  }
  for (int i = 0; i < dim; ++i) {
    if (!s.metric[u(i)][u(i)])
      throw ValidationError("metric diagonal entry (" + std::to_string(i + 1) + ", " +
                            std::to_string(i + 1) + ") is required");
    for (int j = 0; j < dim; ++j)
      if (!s.metric[u(i)][u(j)])
        s.metric[u(i)][u(j)] = expr::parse("0");
  }
  return s;
}

AmbientFrame ambient_frame(const AmbientSpec& spec, const std::vector<double>& x0) {
  check_dim(spec.dim);
  if (static_cast<int>(x0.size()) != spec.dim)
    throw ValidationError("ambient point dimension mismatch");
  AmbientFrame f;
  f.xvars = VariableSet::make(ambient_coord_names(spec.dim));
  const int n = spec.dim;
  std::vector<int> dvar(u(n));
  for (int i = 0; i < n; ++i) dvar[u(i)] = i;

  if (spec.euclidean) {
    f.g = jet_identity(f.xvars, n);
    f.g_inv = jet_identity(f.xvars, n);
    const Jet zero = Jet::constant(f.xvars, 0.0);
    f.gamma.assign(u(n), std::vector<std::vector<Jet>>(u(n), std::vector<Jet>(u(n), zero)));
    f.riemann.assign(u(n), Jets3(u(n), std::vector<std::vector<Jet>>(
                                           u(n), std::vector<Jet>(u(n), zero))));
    return f;
  }

  std::map<std::string, Jet> env;
  const auto names = ambient_coord_names(n);
  for (int i = 0; i < n; ++i)
    env.emplace(names[u(i)], Jet::variable(f.xvars, i, x0[u(i)]));

  f.g = jet_mat(f.xvars, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      f.g[u(i)][u(j)] = expr::eval_jet(*spec.metric[u(i)][u(j)], f.xvars, env);

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double a = f.g[u(i)][u(j)].value(), b = f.g[u(j)][u(i)].value();
      if (std::abs(a - b) > 1e-12 * (1.0 + std::abs(a)))
        throw ValidationError("ambient metric is not symmetric at the evaluation point");
    }
  if (!is_positive_definite(value_of(f.g)))
    throw ValidationError("ambient metric is not positive definite at the evaluation point");

  f.g_inv = jet_mat_inverse(f.g);
  f.gamma = christoffel_jets(f.g, f.g_inv, dvar);
  f.riemann = riemann_jets(f.gamma, dvar);
  return f;
}

}  // namespace hyperkin
