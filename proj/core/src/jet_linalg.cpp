#include "hyperkin/jet_linalg.hpp"

#include <cmath>
#include <cstdlib>

#include "hyperkin/error.hpp"

namespace hyperkin {

namespace {

int checked_dim(const JetMat& a) {
  const int n = static_cast<int>(a.size());
  if (n < 1 || n > 4) throw ValidationError("jet matrix dimension must be 1..4");
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != n)
      throw ValidationError("jet matrix is not square");
  return n;
}

JetMat minor_of(const JetMat& a, int row, int col) {
  const int n = static_cast<int>(a.size());
  JetMat m;
  m.reserve(static_cast<std::size_t>(n - 1));
  for (int r = 0; r < n; ++r) {
    if (r == row) continue;
    std::vector<Jet> line;
    line.reserve(static_cast<std::size_t>(n - 1));
    for (int c = 0; c < n; ++c) {
      if (c == col) continue;
      line.push_back(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
    }
    m.push_back(std::move(line));
  }
  return m;
}

}  // namespace

JetMat jet_mat(const VarsPtr& vars, int n) {
  if (n < 1 || n > 4) throw ValidationError("jet matrix dimension must be 1..4");
  return JetMat(static_cast<std::size_t>(n),
                std::vector<Jet>(static_cast<std::size_t>(n), Jet::constant(vars, 0.0)));
}

JetMat jet_identity(const VarsPtr& vars, int n) {
  JetMat m = jet_mat(vars, n);
  for (int i = 0; i < n; ++i)
    m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Jet::constant(vars, 1.0);
  return m;
}

JetMat jet_mat_mul(const JetMat& a, const JetMat& b) {
  const int n = checked_dim(a);
  if (checked_dim(b) != n) throw ValidationError("jet matrix dimension mismatch");
  JetMat r = jet_mat(a[0][0].vars(), n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Jet s = a[static_cast<std::size_t>(i)][0] * b[0][static_cast<std::size_t>(j)];
      for (int k = 1; k < n; ++k)
        s += a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
             b[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
      r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s;
    }
  return r;
}

std::vector<Jet> jet_mat_vec(const JetMat& a, const std::vector<Jet>& v) {
  const int n = checked_dim(a);
  if (static_cast<int>(v.size()) != n)
    throw ValidationError("jet matrix/vector dimension mismatch");
  std::vector<Jet> r;
  r.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Jet s = a[static_cast<std::size_t>(i)][0] * v[0];
    for (int k = 1; k < n; ++k)
      s += a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
           v[static_cast<std::size_t>(k)];
    r.push_back(std::move(s));
  }
  return r;
}

Jet jet_det(const JetMat& a) {
  const int n = checked_dim(a);
  if (n == 1) return a[0][0];
  if (n == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
  Jet d = Jet::constant(a[0][0].vars(), 0.0);
  for (int j = 0; j < n; ++j) {
    Jet term = a[0][static_cast<std::size_t>(j)] * jet_det(minor_of(a, 0, j));
    if (j % 2 == 0)
      d += term;
    else
      d -= term;
  }
  return d;
}

JetMat jet_mat_inverse(const JetMat& a, double tol) {
  const int n = checked_dim(a);
  Jet d = jet_det(a);
  if (std::abs(d.value()) < tol)
    throw DegenerateFrameError("jet matrix is singular at the base point");
  JetMat inv = jet_mat(a[0][0].vars(), n);
  if (n == 1) {
    inv[0][0] = 1.0 / a[0][0];
    return inv;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Jet cof = jet_det(minor_of(a, j, i));
      if ((i + j) % 2 != 0) cof = -cof;
      inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = cof / d;
    }
  return inv;
}

SmallMat value_of(const JetMat& a) {
  const int n = checked_dim(a);
  SmallMat m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].value();
  return m;
}

}  // namespace hyperkin
