#pragma once

#include <optional>
#include <string>

#include "hyperkin/scenario.hpp"
#include "hyperkin/variation.hpp"

namespace hyperkin {

// Everything recorded for one grid point. Skipped points keep only the
// coordinates and the reason.
struct PointResiduals {
  double route_disagreement = 0.0;  // pairwise delta nabla routes, normalized
  double symmetry = 0.0;            // i <-> j over all routes
  double d_kinematic = 0.0;         // vs metric route, normalized
  double d_cauchy_green = 0.0;      // vs metric route, normalized
  double v_split = 0.0;             // v = J v_par + vn n reconstruction
  double w_antisymmetry = 0.0;      // spin over the adapted basis
  double metric_rate = 0.0;         // sym gbar(G, F) vs d_flat
  double normal_rate = 0.0;         // W(n) vs delta n
  double gauss = 0.0;
  double codazzi = 0.0;
  std::optional<double> fd_delta_conn;  // central-difference oracle, on demand
};

struct PointRecord {
  std::vector<double> u;
  bool skipped = false;
  std::string skip_reason;

  Vals2 g;                          // induced metric values
  Vals3 gamma;                      // induced Christoffel values
  std::vector<double> shape_eigs;   // |eigenvalues| of S, ascending
  double vn = 0.0;
  double vpar_norm = 0.0;           // g-norm of the tangential velocity
  double grad_vn_norm = 0.0;        // g-norm of grad vn
  Vals2 d;                          // stretching (1,1), metric route
  double d_sup = 0.0;
  double nabla_d_sup = 0.0;
  double delta_conn_sup = 0.0;      // definition route
  Vals3 delta_definition, delta_stretch, delta_projection, delta_geometric, delta_lie;
  std::optional<Vals3> delta_normal, delta_euclidean_normal, delta_parallel;
  PointResiduals res;
};

struct RunOptions {
  std::optional<double> t;          // override the scenario's t0
  std::vector<int> grid;            // override per-axis counts; empty keeps scenario
  Tolerances tol;
  bool fd_validate = false;         // add the finite-difference connection oracle
};

struct RunResult {
  Scenario scenario;                // echo
  double t = 0.0;
  Tolerances tol;                   // echo of the tolerances in force
  std::vector<int> grid_counts;
  MotionClass cls;
  RouteFlags flags;
  std::vector<PointRecord> points;  // grid order, first axis fastest
  int skipped = 0;

  double sup_d = 0.0;
  double sup_nabla_d = 0.0;
  double sup_delta_conn = 0.0;
  double sup_lie_conn = 0.0;
  double sup_route_disagreement = 0.0;
  double sup_symmetry = 0.0;
  double sup_d_kinematic = 0.0;
  double sup_d_cauchy_green = 0.0;
  double sup_v_split = 0.0;
  double sup_w_antisymmetry = 0.0;
  double sup_metric_rate = 0.0;
  double sup_normal_rate = 0.0;
  double sup_gauss = 0.0;
  double sup_codazzi = 0.0;
  double sup_def_vs_lie = 0.0;      // |definition - lie| (the tangential reduction)
  std::optional<double> sup_normal_pair;  // |normal_form - euclidean_normal|
  std::optional<double> sup_fd_delta_conn;
  Verdict verdict;
};

// Two-phase grid run: classify the motion over the whole grid first, then
// evaluate every route with the flags the classification earned. Throws
// ValidationError when no grid point survives exclusions and degeneracies.
RunResult run_grid(const Scenario& sc, const RunOptions& opt);

// The grid itself: per-axis sample positions after boundary shrink.
std::vector<std::vector<double>> grid_axes(const Scenario& sc,
                                           const std::vector<int>& override_counts);

}  // namespace hyperkin
