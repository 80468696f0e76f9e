#pragma once

#include <array>
#include <vector>

namespace hyperkin {

// Dense square matrix of doubles with dimension 1..4. Everything in this
// project lives in at most 4 dimensions, so the storage is a fixed block
// and the algorithms are direct (cofactors, Gauss-Jordan, cyclic Jacobi).
class SmallMat {
 public:
  SmallMat() = default;
  explicit SmallMat(int n);
  static SmallMat identity(int n);

  int dim() const { return n_; }
  double& operator()(int i, int j) { return a_[i][j]; }
  double operator()(int i, int j) const { return a_[i][j]; }

 private:
  int n_ = 0;
  std::array<std::array<double, 4>, 4> a_{};
};

SmallMat operator*(const SmallMat& a, const SmallMat& b);
SmallMat operator+(const SmallMat& a, const SmallMat& b);
SmallMat operator-(const SmallMat& a, const SmallMat& b);
SmallMat operator*(double s, const SmallMat& a);
SmallMat transpose(const SmallMat& a);

std::vector<double> mat_vec(const SmallMat& a, const std::vector<double>& v);

double det(const SmallMat& a);
double trace(const SmallMat& a);

// Gauss-Jordan with partial pivoting; throws DegenerateFrameError when the
// pivot falls below tol.
SmallMat inverse(const SmallMat& a, double tol = 1e-12);

// True iff the symmetric part passes a Cholesky factorization with every
// pivot > tol.
bool is_positive_definite(const SmallMat& a, double tol = 1e-12);

// Eigenvalues of a symmetric matrix by cyclic Jacobi, ascending.
std::vector<double> symmetric_eigenvalues(const SmallMat& a);

// Eigenvalues of g^{-1} b for symmetric b and positive definite g, via the
// Cholesky factor of g (the self-adjoint pencil (b, g)), ascending.
std::vector<double> generalized_sym_eigenvalues(const SmallMat& b, const SmallMat& g);

// Max |a_ij| over all entries.
double max_abs(const SmallMat& a);

}  // namespace hyperkin
