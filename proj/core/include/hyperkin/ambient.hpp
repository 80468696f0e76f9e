#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "hyperkin/chart_ops.hpp"
#include "hyperkin/expr.hpp"

namespace hyperkin {

// Ambient Riemannian chart: Euclidean R^n or a metric given entrywise by
// expressions in the chart coordinates x1..xn.
struct AmbientSpec {
  int dim = 0;
  bool euclidean = true;
  std::vector<std::vector<expr::ExprPtr>> metric;  // dim x dim when not euclidean

  static AmbientSpec make_euclidean(int dim);
  // Entries are (i, j, expression) with 0-based indices. A missing (j, i)
  // mirrors (i, j); a fully absent off-diagonal pair is zero; every diagonal
  // entry must be present.
  static AmbientSpec make_metric(
      int dim, const std::vector<std::tuple<int, int, expr::ExprPtr>>& entries);
};

std::vector<std::string> ambient_coord_names(int dim);

// Jets of the ambient geometry in the x-chart at a point. Degrees: g and
// its inverse carry full order 3, Christoffels 2, curvature 1; that is
// exactly the headroom the pullback to the surface chart consumes.
struct AmbientFrame {
  VarsPtr xvars;
  JetMat g;
  JetMat g_inv;
  Jets3 gamma;
  Jets4 riemann;
};

// Validates symmetry and positive definiteness at x0.
AmbientFrame ambient_frame(const AmbientSpec& spec, const std::vector<double>& x0);

}  // namespace hyperkin
