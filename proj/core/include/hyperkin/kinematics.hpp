#pragma once

#include "hyperkin/surface.hpp"

namespace hyperkin {

// Pointwise kinematics of the motion: velocity and its splitting, velocity
// gradient, stretching by three independent routes, and the spin action.
struct KinFrame {
  std::vector<Jet> v;                  // velocity d_t phi, ambient components
  Jet vn;                              // normal speed gbar(v, n)
  std::vector<Jet> v_par;              // tangential components of v
  std::vector<std::vector<Jet>> G;     // [a][i]: nablabar_{e_i} v along the surface

  JetMat d_flat;                       // stretching (0,2): 1/2 d_t g  (metric route)
  JetMat d_mixed;                      // stretching (1,1): g^{-1} d_flat
  SmallMat d_kinematic;                // route: sym(nabla v_par) - vn S
  SmallMat d_cauchy_green;             // route: 1/2 d_tau [g(t)^{-1} g(tau)]

  Vals2 w_frame;                       // [i][a]: W(Fe_i) = G e_i - J D e_i
  std::vector<double> w_normal;        // W(n) = -J(S v_par + grad vn)
  std::vector<double> delta_n;         // exact transport d_t n + Gammabar(v, n)
  std::vector<double> grad_vn;         // (grad vn)^k = g^{kl} d_l vn
};

KinFrame build_kin_frame(const MotionSpec& motion, const SurfaceFrame& f,
                         double fd_step = 1e-4);

// Induced metric values at (u0, t); used by the Cauchy-Green probe and by
// finite-difference validation.
SmallMat metric_values_at(const MotionSpec& motion, double t, std::span<const double> u0);

// Diagnostics (sup norms at the point).
double v_split_residual(const SurfaceFrame& f, const KinFrame& k);       // v = J v_par + vn n
double w_antisymmetry_residual(const SurfaceFrame& f, const KinFrame& k);
double metric_rate_residual(const SurfaceFrame& f, const KinFrame& k);   // sym gbar(G, F) = d_flat
double normal_rate_residual(const SurfaceFrame& f, const KinFrame& k);   // W(n) = delta_n

}  // namespace hyperkin
