#pragma once

#include <span>
#include <vector>

#include "hyperkin/jet_linalg.hpp"

namespace hyperkin {

using Jets3 = std::vector<std::vector<std::vector<Jet>>>;                // [k][i][j]
using Jets4 = std::vector<std::vector<std::vector<std::vector<Jet>>>>;   // [a][b][c][d]
using Vals2 = std::vector<std::vector<double>>;
using Vals3 = std::vector<std::vector<std::vector<double>>>;

// Shared chart-level differential geometry. All functions take the list
// dvar of jet-variable indices that realize the chart directions, so the
// same code serves the ambient chart (all spatial variables) and the
// surface chart (the leading parameter variables, with t left untouched).

// Gamma^k_ij = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij).
// Result jets lose one degree relative to g.
Jets3 christoffel_jets(const JetMat& g, const JetMat& g_inv, std::span<const int> dvar);

// R^a_bcd = d_c Gamma^a_db - d_d Gamma^a_cb
//           + Gamma^a_ce Gamma^e_db - Gamma^a_de Gamma^e_cb,
// so that (R(X,Y)Z)^a = R^a_bcd Z^b X^c Y^d.
Jets4 riemann_jets(const Jets3& gamma, std::span<const int> dvar);

// Covariant derivatives, evaluated at the base point. The connection enters
// through gamma values; the field is differentiated through its jets.
Vals2 cov_deriv_vec(const Jets3& gamma, const std::vector<Jet>& x,
                    std::span<const int> dvar);            // [i][k] = (nabla_i X)^k
Vals3 cov_deriv_11(const Jets3& gamma, const JetMat& t,
                   std::span<const int> dvar);             // [i][k][j] = (nabla_i T)^k_j
Vals3 cov_deriv_02(const Jets3& gamma, const JetMat& b,
                   std::span<const int> dvar);             // [i][j][l] = (nabla_i B)_jl

}  // namespace hyperkin
