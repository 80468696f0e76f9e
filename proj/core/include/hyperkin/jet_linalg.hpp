#pragma once

#include <vector>

#include "hyperkin/jet.hpp"
#include "hyperkin/smallmat.hpp"

namespace hyperkin {

// Square matrices with jet entries. Dimensions stay at <= 4, so determinants
// and inverses go through cofactor expansion; that keeps every entry of the
// inverse an exact jet (division happens once, by det).
using JetMat = std::vector<std::vector<Jet>>;

JetMat jet_mat(const VarsPtr& vars, int n);
JetMat jet_identity(const VarsPtr& vars, int n);

JetMat jet_mat_mul(const JetMat& a, const JetMat& b);
std::vector<Jet> jet_mat_vec(const JetMat& a, const std::vector<Jet>& v);

Jet jet_det(const JetMat& a);

// Adjugate over determinant; throws DegenerateFrameError when |det| at the
// base point is below tol.
JetMat jet_mat_inverse(const JetMat& a, double tol = 1e-10);

// Entry values at the base point.
SmallMat value_of(const JetMat& a);

}  // namespace hyperkin
