#include "hyperkin/runner.hpp"

#include <algorithm>
#include <cmath>

namespace hyperkin {

namespace {

// g-norm of a contravariant vector given by values.
double g_norm(const SurfaceFrame& f, const std::vector<double>& x) {
  double s = 0.0;
  for (int i = 0; i < f.m; ++i)
    for (int j = 0; j < f.m; ++j)
      s += f.g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].value() *
           x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)];
  return std::sqrt(std::max(0.0, s));
}

Vals3 values_of(const Jets3& j) {
  Vals3 out(j.size());
  for (std::size_t a = 0; a < j.size(); ++a) {
    out[a].resize(j[a].size());
    for (std::size_t b = 0; b < j[a].size(); ++b) {
      out[a][b].resize(j[a][b].size());
      for (std::size_t c = 0; c < j[a][b].size(); ++c) out[a][b][c] = j[a][b][c].value();
    }
  }
  return out;
}

// Central-difference time derivative of the induced Christoffels with one
// Richardson sweep; fully independent of the jet t-slot.
Vals3 fd_delta_conn(const MotionSpec& motion, double t, std::span<const double> u0,
                    double h, double tol_sing) {
  auto gamma_at = [&](double tau) {
    SurfaceFrame f = build_surface_frame(motion, tau, u0, tol_sing);
    return values_of(f.gamma);
  };
  auto diff = [&](double step) {
    Vals3 p = gamma_at(t + step), m = gamma_at(t - step);
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t b = 0; b < p[a].size(); ++b)
        for (std::size_t c = 0; c < p[a][b].size(); ++c)
          p[a][b][c] = (p[a][b][c] - m[a][b][c]) / (2.0 * step);
    return p;
  };
  Vals3 d1 = diff(h), d2 = diff(h / 2.0);
  for (std::size_t a = 0; a < d1.size(); ++a)
    for (std::size_t b = 0; b < d1[a].size(); ++b)
      for (std::size_t c = 0; c < d1[a][b].size(); ++c)
        d2[a][b][c] = (4.0 * d2[a][b][c] - d1[a][b][c]) / 3.0;
  return d2;
}

}  // namespace

std::vector<std::vector<double>> grid_axes(const Scenario& sc,
                                           const std::vector<int>& override_counts) {
  const auto& dom = sc.motion.domain;
  std::vector<int> counts = override_counts.empty() ? sc.grid.counts : override_counts;
  if (counts.empty()) counts.assign(dom.size(), 17);
  if (counts.size() == 1 && dom.size() > 1) counts.assign(dom.size(), counts[0]);
  if (counts.size() != dom.size())
    throw ValidationError("grid override needs 1 or " + std::to_string(dom.size()) +
                          " counts, got " + std::to_string(counts.size()));
  std::vector<std::vector<double>> axes;
  for (std::size_t p = 0; p < dom.size(); ++p) {
    const int n = counts[p];
    if (n < 1) throw ValidationError("grid count must be >= 1");
    const double width = dom[p][1] - dom[p][0];
    const double lo = dom[p][0] + sc.grid.shrink * width;
    const double hi = dom[p][1] - sc.grid.shrink * width;
    std::vector<double> axis;
    if (n == 1) {
      axis.push_back(0.5 * (lo + hi));
    } else {
      for (int i = 0; i < n; ++i) axis.push_back(lo + (hi - lo) * i / (n - 1));
    }
    axes.push_back(std::move(axis));
  }
  return axes;
}

RunResult run_grid(const Scenario& sc, const RunOptions& opt) {
  RunResult r;
  r.scenario = sc;
  r.t = opt.t.value_or(sc.grid.t0);
  r.tol = opt.tol;
  auto axes = grid_axes(sc, opt.grid);
  for (const auto& a : axes) r.grid_counts.push_back(static_cast<int>(a.size()));

  // enumerate grid points, first axis fastest
  std::vector<std::vector<double>> pts;
  std::vector<std::size_t> idx(axes.size(), 0);
  for (;;) {
    std::vector<double> u(axes.size());
    for (std::size_t p = 0; p < axes.size(); ++p) u[p] = axes[p][idx[p]];
    pts.push_back(std::move(u));
    std::size_t p = 0;
    while (p < axes.size() && ++idx[p] == axes[p].size()) {
      idx[p] = 0;
      ++p;
    }
    if (p == axes.size()) break;
  }

  const auto params = param_names(sc.motion.m);

  // phase 1: build frames, classify the motion over the whole grid
  struct Cached {
    SurfaceFrame f;
    KinFrame k;
  };
  std::vector<std::optional<Cached>> cache(pts.size());
  r.points.resize(pts.size());

  for (std::size_t pi = 0; pi < pts.size(); ++pi) {
    PointRecord& rec = r.points[pi];
    rec.u = pts[pi];

    std::map<std::string, double> env;
    for (std::size_t p = 0; p < params.size(); ++p) env[params[p]] = pts[pi][p];
    env["t"] = r.t;
    bool excluded = false;
    for (const auto& e : sc.motion.exclusions)
      if (std::abs(expr::eval_scalar(*e, env)) < opt.tol.tol_excl) {
        excluded = true;
        break;
      }
    if (excluded) {
      rec.skipped = true;
      rec.skip_reason = "exclusion predicate below threshold";
      ++r.skipped;
      continue;
    }

    try {
      SurfaceFrame f = build_surface_frame(sc.motion, r.t, pts[pi], opt.tol.tol_sing);
      KinFrame k = build_kin_frame(sc.motion, f, opt.tol.fd_step);
      cache[pi] = Cached{std::move(f), std::move(k)};
    } catch (const DegenerateFrameError& e) {
      rec.skipped = true;
      rec.skip_reason = e.what();
      ++r.skipped;
      continue;
    }

    const Cached& c = *cache[pi];
    std::vector<double> vpar(static_cast<std::size_t>(c.f.m));
    for (int i = 0; i < c.f.m; ++i) vpar[static_cast<std::size_t>(i)] = c.k.v_par[static_cast<std::size_t>(i)].value();
    r.cls.sup_vn = std::max(r.cls.sup_vn, std::abs(c.k.vn.value()));
    r.cls.sup_vpar = std::max(r.cls.sup_vpar, g_norm(c.f, vpar));
    r.cls.sup_grad_vn = std::max(r.cls.sup_grad_vn, g_norm(c.f, c.k.grad_vn));
  }

  if (static_cast<std::size_t>(r.skipped) == pts.size())
    throw ValidationError("grid for scenario '" + sc.name +
                          "' has no usable points (all excluded or degenerate)");

  r.cls.tangential = r.cls.sup_vn < opt.tol.tol_class;
  r.cls.normal = r.cls.sup_vpar < opt.tol.tol_class;
  r.cls.parallel_normal = r.cls.normal && r.cls.sup_grad_vn < opt.tol.tol_class;

  r.flags.normal = r.cls.normal;
  r.flags.euclidean_normal = r.cls.normal && sc.motion.ambient.euclidean;
  // the parallel form differentiates only the shape operator; beyond m = 1
  // that is sound when Codazzi has no ambient contribution
  r.flags.parallel =
      r.cls.parallel_normal && (sc.motion.m == 1 || sc.motion.ambient.euclidean);

  // phase 2: every route, every residual
  for (std::size_t pi = 0; pi < pts.size(); ++pi) {
    if (!cache[pi]) continue;
    const SurfaceFrame& f = cache[pi]->f;
    const KinFrame& k = cache[pi]->k;
    PointRecord& rec = r.points[pi];
    const int m = f.m;

    rec.g.assign(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(m), 0.0));
    rec.d = rec.g;
    rec.gamma.assign(static_cast<std::size_t>(m), rec.g);
    SmallMat dm = value_of(k.d_mixed);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        rec.g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = f.g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].value();
        rec.d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = dm(i, j);
        for (int l = 0; l < m; ++l)
          rec.gamma[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(l)] =
              f.gamma[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(l)].value();
      }
    rec.d_sup = max_abs(dm);

    for (double ev : generalized_sym_eigenvalues(value_of(f.B), value_of(f.g)))
      rec.shape_eigs.push_back(std::abs(ev));
    std::sort(rec.shape_eigs.begin(), rec.shape_eigs.end());

    rec.vn = k.vn.value();
    std::vector<double> vpar(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) vpar[static_cast<std::size_t>(i)] = k.v_par[static_cast<std::size_t>(i)].value();
    rec.vpar_norm = g_norm(f, vpar);
    rec.grad_vn_norm = g_norm(f, k.grad_vn);

    RouteSet rs = delta_conn_routes(f, k, r.flags);
    rec.nabla_d_sup = sup_abs(rs.nabla_d);
    rec.delta_conn_sup = sup_abs(rs.definition);
    rec.delta_definition = rs.definition;
    rec.delta_stretch = rs.stretch;
    rec.delta_projection = rs.projection;
    rec.delta_geometric = rs.geometric;
    rec.delta_lie = rs.lie_conn;
    rec.delta_normal = rs.normal_form;
    rec.delta_euclidean_normal = rs.euclidean_normal;
    rec.delta_parallel = rs.parallel_form;

    const double dscale = 1.0 + rec.d_sup;
    rec.res.route_disagreement = route_disagreement(rs);
    rec.res.symmetry = symmetry_residual(rs);
    rec.res.d_kinematic = max_abs(k.d_kinematic - dm) / dscale;
    rec.res.d_cauchy_green = max_abs(k.d_cauchy_green - dm) / dscale;
    rec.res.v_split = v_split_residual(f, k);
    rec.res.w_antisymmetry = w_antisymmetry_residual(f, k);
    rec.res.metric_rate = metric_rate_residual(f, k);
    rec.res.normal_rate = normal_rate_residual(f, k);
    rec.res.gauss = gauss_residual_sup(f);
    rec.res.codazzi = codazzi_residual_sup(f);
    if (opt.fd_validate) {
      Vals3 fd = fd_delta_conn(sc.motion, r.t, rec.u, opt.tol.fd_step, opt.tol.tol_sing);
      rec.res.fd_delta_conn =
          sup_abs_diff(rs.definition, fd) / (1.0 + sup_abs(rs.definition));
    }

    r.sup_d = std::max(r.sup_d, rec.d_sup);
    r.sup_nabla_d = std::max(r.sup_nabla_d, rec.nabla_d_sup);
    r.sup_delta_conn = std::max(r.sup_delta_conn, rec.delta_conn_sup);
    r.sup_lie_conn = std::max(r.sup_lie_conn, sup_abs(rs.lie_conn));
    r.sup_route_disagreement = std::max(r.sup_route_disagreement, rec.res.route_disagreement);
    r.sup_symmetry = std::max(r.sup_symmetry, rec.res.symmetry);
    r.sup_d_kinematic = std::max(r.sup_d_kinematic, rec.res.d_kinematic);
    r.sup_d_cauchy_green = std::max(r.sup_d_cauchy_green, rec.res.d_cauchy_green);
    r.sup_v_split = std::max(r.sup_v_split, rec.res.v_split);
    r.sup_w_antisymmetry = std::max(r.sup_w_antisymmetry, rec.res.w_antisymmetry);
    r.sup_metric_rate = std::max(r.sup_metric_rate, rec.res.metric_rate);
    r.sup_normal_rate = std::max(r.sup_normal_rate, rec.res.normal_rate);
    r.sup_gauss = std::max(r.sup_gauss, rec.res.gauss);
    r.sup_codazzi = std::max(r.sup_codazzi, rec.res.codazzi);
    r.sup_def_vs_lie =
        std::max(r.sup_def_vs_lie, sup_abs_diff(rs.definition, rs.lie_conn));
    if (rs.normal_form && rs.euclidean_normal)
      r.sup_normal_pair = std::max(r.sup_normal_pair.value_or(0.0),
                                   sup_abs_diff(*rs.normal_form, *rs.euclidean_normal));
    if (rec.res.fd_delta_conn)
      r.sup_fd_delta_conn = std::max(r.sup_fd_delta_conn.value_or(0.0), *rec.res.fd_delta_conn);
  }

  r.verdict = classify(r.cls, r.sup_d, r.sup_nabla_d, r.sup_delta_conn,
                       r.sup_lie_conn, opt.tol);
  return r;
}

}  // namespace hyperkin
