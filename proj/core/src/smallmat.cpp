#include "hyperkin/smallmat.hpp"

#include <cmath>
#include <cstdlib>

#include "hyperkin/error.hpp"

namespace hyperkin {

SmallMat::SmallMat(int n) : n_(n) {
  if (n < 1 || n > 4) throw ValidationError("matrix dimension must be 1..4");
}

SmallMat SmallMat::identity(int n) {
  SmallMat m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

SmallMat operator*(const SmallMat& a, const SmallMat& b) {
  const int n = a.dim();
  if (n != b.dim()) throw ValidationError("matrix dimension mismatch");
  SmallMat r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

SmallMat operator+(const SmallMat& a, const SmallMat& b) {
  const int n = a.dim();
  if (n != b.dim()) throw ValidationError("matrix dimension mismatch");
  SmallMat r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

SmallMat operator-(const SmallMat& a, const SmallMat& b) {
  const int n = a.dim();
  if (n != b.dim()) throw ValidationError("matrix dimension mismatch");
  SmallMat r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

SmallMat operator*(double s, const SmallMat& a) {
  SmallMat r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r(i, j) = s * a(i, j);
  return r;
}

SmallMat transpose(const SmallMat& a) {
  SmallMat r(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) r(i, j) = a(j, i);
  return r;
}

std::vector<double> mat_vec(const SmallMat& a, const std::vector<double>& v) {
  const int n = a.dim();
  if (static_cast<int>(v.size()) != n) throw ValidationError("matrix/vector dimension mismatch");
  std::vector<double> r(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[static_cast<std::size_t>(i)] += a(i, j) * v[static_cast<std::size_t>(j)];
  return r;
}

double det(const SmallMat& a) {
  switch (a.dim()) {
    case 1:
      return a(0, 0);
    case 2:
      return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    case 3:
      return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
             a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
             a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    case 4: {
      double d = 0.0;
      for (int j = 0; j < 4; ++j) {
        SmallMat m(3);
        for (int r = 1; r < 4; ++r) {
          int cc = 0;
          for (int c = 0; c < 4; ++c) {
            if (c == j) continue;
            m(r - 1, cc++) = a(r, c);
          }
        }
        d += ((j % 2 == 0) ? 1.0 : -1.0) * a(0, j) * det(m);
      }
      return d;
    }
    default:
      throw ValidationError("matrix dimension must be 1..4");
  }
}

double trace(const SmallMat& a) {
  double s = 0.0;
  for (int i = 0; i < a.dim(); ++i) s += a(i, i);
  return s;
}

SmallMat inverse(const SmallMat& a, double tol) {
  const int n = a.dim();
  SmallMat w = a;
  SmallMat inv = SmallMat::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(w(r, col)) > std::abs(w(piv, col))) piv = r;
    if (std::abs(w(piv, col)) <= tol)
      throw DegenerateFrameError("matrix is singular to working precision");
    if (piv != col) {
      for (int c = 0; c < n; ++c) {
        std::swap(w(piv, c), w(col, c));
        std::swap(inv(piv, c), inv(col, c));
      }
    }
    const double d = w(col, col);
    for (int c = 0; c < n; ++c) {
      w(col, c) /= d;
      inv(col, c) /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = w(r, col);
      if (f == 0.0) continue;
      for (int c = 0; c < n; ++c) {
        w(r, c) -= f * w(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

bool is_positive_definite(const SmallMat& a, double tol) {
  const int n = a.dim();
  SmallMat s(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s(i, j) = 0.5 * (a(i, j) + a(j, i));
  // in-place lower Cholesky
  SmallMat l(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double sum = s(i, j);
      for (int k = 0; k < j; ++k) sum -= l(i, k) * l(j, k);
      if (i == j) {
        if (sum <= tol) return false;
        l(i, i) = std::sqrt(sum);
      } else {
        l(i, j) = sum / l(j, j);
      }
    }
  }
  return true;
}

std::vector<double> symmetric_eigenvalues(const SmallMat& a) {
  const int n = a.dim();
  SmallMat w(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w(i, j) = 0.5 * (a(i, j) + a(j, i));
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += w(p, q) * w(p, q);
    if (off < 1e-30) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (w(p, q) == 0.0) continue;
        const double theta = (w(q, q) - w(p, p)) / (2.0 * w(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double wkp = w(k, p), wkq = w(k, q);
          w(k, p) = c * wkp - s * wkq;
          w(k, q) = s * wkp + c * wkq;
        }
        for (int k = 0; k < n; ++k) {
          const double wpk = w(p, k), wqk = w(q, k);
          w(p, k) = c * wpk - s * wqk;
          w(q, k) = s * wpk + c * wqk;
        }
      }
  }
  std::vector<double> ev(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = w(i, i);
  for (std::size_t i = 1; i < ev.size(); ++i)
    for (std::size_t j = i; j > 0 && ev[j] < ev[j - 1]; --j) std::swap(ev[j], ev[j - 1]);
  return ev;
}

std::vector<double> generalized_sym_eigenvalues(const SmallMat& b, const SmallMat& g) {
  const int n = g.dim();
  if (b.dim() != n) throw ValidationError("matrix dimension mismatch");
  // g = L L^T
  SmallMat l(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      double sum = 0.5 * (g(i, j) + g(j, i));
      for (int k = 0; k < j; ++k) sum -= l(i, k) * l(j, k);
      if (i == j) {
        if (sum <= 0.0) throw DegenerateFrameError("pencil metric is not positive definite");
        l(i, i) = std::sqrt(sum);
      } else {
        l(i, j) = sum / l(j, j);
      }
    }
  // M = L^{-1} b L^{-T}: solve L X = b, then L M^T = X^T column by column
  SmallMat x(n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) {
      double s = 0.5 * (b(r, c) + b(c, r));
      for (int k = 0; k < r; ++k) s -= l(r, k) * x(k, c);
      x(r, c) = s / l(r, r);
    }
  SmallMat mt(n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) {
      double s = x(c, r);
      for (int k = 0; k < r; ++k) s -= l(r, k) * mt(k, c);
      mt(r, c) = s / l(r, r);
    }
  return symmetric_eigenvalues(mt);
}

double max_abs(const SmallMat& a) {
  double m = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

}  // namespace hyperkin
