#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "hyperkin/ambient.hpp"

namespace hyperkin {

// A closed-form motion of an m-surface (1 <= m <= 3) immersed in an
// (m+1)-dimensional ambient chart. Components are expressions in the
// parameters (u, v, w as applicable) and the time t.
struct MotionSpec {
  int m = 0;
  AmbientSpec ambient;
  std::vector<expr::ExprPtr> components;              // m+1 entries
  std::vector<std::array<double, 2>> domain;          // per-parameter [lo, hi]
  std::vector<expr::ExprPtr> exclusions;              // skip where |e(u,t)| < tol_excl
};

std::vector<std::string> param_names(int m);

// Free-variable, dimension and domain checks; throws ValidationError.
void validate_motion(const MotionSpec& motion);

// Everything the kinematics and variation layers need at one (u, t) point,
// carried as jets in the chart variables (params..., t). Degrees decrease
// down the list exactly as each object consumes derivatives of the one
// above it: phi 3, F 2, g 2, n 2, B/S 1, Gamma 1, R 0.
struct SurfaceFrame {
  int m = 0;
  bool euclidean = true;
  VarsPtr uvars;                 // params..., then t
  std::vector<int> dsurf;        // 0..m-1
  int tvar = 0;                  // index m
  double t = 0.0;                // evaluation point
  std::vector<double> u0;

  std::vector<Jet> phi;          // m+1 components
  std::vector<std::vector<Jet>> F;  // [a][i] = d_i phi^a
  JetMat gbar, gbar_inv;         // ambient metric along phi, (m+1)^2
  Jets3 gammabar;                // ambient Christoffels along phi
  Jets4 riembar;                 // ambient curvature along phi
  JetMat g, g_inv;               // induced metric, m^2
  std::vector<Jet> n;            // unit normal, m+1 components
  JetMat B;                      // second fundamental form (0,2)
  JetMat S;                      // shape operator g^{-1} B
  Jets3 gamma;                   // induced Christoffels
  Jets4 riemann;                 // induced curvature
};

SurfaceFrame build_surface_frame(const MotionSpec& motion, double t,
                                 std::span<const double> u0, double tol_sing = 1e-10);

// Tangential components of an ambient vector along the frame:
// X^i = g^{ij} gbar_ab X^a F^b_j.
std::vector<Jet> tangential_components(const SurfaceFrame& f, const std::vector<Jet>& x);

// Same projection at value level.
std::vector<double> tangential_components_values(const SurfaceFrame& f,
                                                 const std::vector<double>& x);

// gbar(x, y) at the base point.
double ambient_dot(const SurfaceFrame& f, const std::vector<double>& x,
                   const std::vector<double>& y);

// Structure-equation residuals at the base point (sup over free indices).
// Gauss:   P Rbar(Fe_i, Fe_j) Fe_l = [R^k_lij + B_il S^k_j - B_jl S^k_i] e_k
// Codazzi: (nabla_i B)_jl - (nabla_j B)_il = gbar(Rbar(Fe_i, Fe_j) Fe_l, n)
double gauss_residual_sup(const SurfaceFrame& f);
double codazzi_residual_sup(const SurfaceFrame& f);

}  // namespace hyperkin
