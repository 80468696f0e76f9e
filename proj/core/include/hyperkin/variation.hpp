#pragma once

#include <optional>

#include "hyperkin/kinematics.hpp"

namespace hyperkin {

// Which special-case routes apply to the motion as a whole. Special forms
// assume a property of the motion everywhere, so the flags are set from
// motion-level classification, never from a single point.
struct RouteFlags {
  bool normal = false;            // sup ||v_par|| below tol_class
  bool euclidean_normal = false;  // normal and Euclidean ambient
  bool parallel = false;          // normal with constant vn, space-form-safe
};

// delta nabla at one point by every applicable route, indexed [k][i][j],
// plus the covariant derivative of the stretching used by the classifier.
struct RouteSet {
  Vals3 definition;    // d_t of the induced Christoffels
  Vals3 stretch;       // Koszul-type combination of nabla d_flat
  Vals3 projection;    // tangential projection of the second variation
  Vals3 geometric;     // shape-operator/curvature/Lie split
  Vals3 lie_conn;      // (Lie_{v_par} Gamma); also the tangential route
  std::optional<Vals3> normal_form;
  std::optional<Vals3> euclidean_normal;
  std::optional<Vals3> parallel_form;
  Vals3 nabla_d;       // [i][k][j] = (nabla_i D)^k_j, route-1 D
};

RouteSet delta_conn_routes(const SurfaceFrame& f, const KinFrame& k,
                           const RouteFlags& flags);

// Chart formula for the Lie derivative of the connection along a tangential
// field given by jet components (degree >= 2).
Vals3 lie_derivative_conn(const SurfaceFrame& f, const std::vector<Jet>& x);

double sup_abs(const Vals3& t);
double sup_abs_diff(const Vals3& a, const Vals3& b);

// Max over route pairs of sup|r_a - r_b| / (1 + sup|definition|).
double route_disagreement(const RouteSet& r);
// Max over routes of sup over (i,j) swaps.
double symmetry_residual(const RouteSet& r);

struct Tolerances {
  double tol_route = 1e-7;
  double tol_d_routes = 1e-8;
  double tol_affine = 1e-6;
  double tol_iso = 1e-8;
  double tol_class = 1e-9;
  double tol_excl = 1e-3;
  double tol_sing = 1e-10;
  double fd_step = 1e-4;
};

struct MotionClass {
  bool tangential = false;
  bool normal = false;
  bool parallel_normal = false;
  double sup_vn = 0.0;
  double sup_vpar = 0.0;
  double sup_grad_vn = 0.0;
};

struct Verdict {
  bool affine = false;
  bool isometric = false;
  double sup_d = 0.0;
  double sup_nabla_d = 0.0;
  double sup_delta_conn = 0.0;
  double sup_lie_conn = 0.0;  // affine-Killing measure for tangential motions
};

// affine  <=>  sup||nabla D|| / (1 + sup||D||) < tol_affine
// isometric  <=>  sup||D|| < tol_iso
Verdict classify(const MotionClass& cls, double sup_d, double sup_nabla_d,
                 double sup_delta_conn, double sup_lie_conn, const Tolerances& tol);

}  // namespace hyperkin
