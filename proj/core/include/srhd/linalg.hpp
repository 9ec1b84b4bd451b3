//! \file linalg.hpp
//! Dense helpers for the small (Dim+2)-square systems that show up in the
//! characteristic decomposition. Deterministic pivoting, no allocation.

#ifndef SRHD_LINALG_HPP_
#define SRHD_LINALG_HPP_

#include <cmath>

#include "srhd/vec.hpp"

namespace srhd {

template <int N>
struct Mat {
  double a[N][N] = {};

  static constexpr Mat identity() {
    Mat I;
    for (int i = 0; i < N; ++i) I.a[i][i] = 1.0;
    return I;
  }
};

template <int N>
inline Vec<N> matvec(const Mat<N>& A, const Vec<N>& x) {
  Vec<N> y;
  for (int i = 0; i < N; ++i) {
    double s = 0.0;
    for (int j = 0; j < N; ++j) s += A.a[i][j] * x[j];
    y[i] = s;
  }
  return y;
}

template <int N>
inline Mat<N> matmul(const Mat<N>& A, const Mat<N>& B) {
  Mat<N> C;
  for (int i = 0; i < N; ++i) {
    for (int k = 0; k < N; ++k) {
      const double aik = A.a[i][k];
      for (int j = 0; j < N; ++j) C.a[i][j] += aik * B.a[k][j];
    }
  }
  return C;
}

template <int N>
inline double mat_norm_inf(const Mat<N>& A) {
  double best = 0.0;
  for (int i = 0; i < N; ++i) {
    double row = 0.0;
    for (int j = 0; j < N; ++j) row += std::fabs(A.a[i][j]);
    best = std::max(best, row);
  }
  return best;
}

// Gauss-Jordan inverse with partial pivoting. Returns false when a pivot
// degenerates relative to the matrix scale.
template <int N>
inline bool invert(Mat<N> A, Mat<N>& out) {
  double scale = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) scale = std::max(scale, std::fabs(A.a[i][j]));
  if (scale == 0.0) return false;

  out = Mat<N>::identity();
  for (int col = 0; col < N; ++col) {
    int piv = col;
    for (int i = col + 1; i < N; ++i)
      if (std::fabs(A.a[i][col]) > std::fabs(A.a[piv][col])) piv = i;
    if (std::fabs(A.a[piv][col]) <= 1e-14 * scale) return false;
    if (piv != col) {
      for (int j = 0; j < N; ++j) {
        std::swap(A.a[piv][j], A.a[col][j]);
        std::swap(out.a[piv][j], out.a[col][j]);
      }
    }
    const double inv = 1.0 / A.a[col][col];
    for (int j = 0; j < N; ++j) {
      A.a[col][j] *= inv;
      out.a[col][j] *= inv;
    }
    for (int i = 0; i < N; ++i) {
      if (i == col) continue;
      const double f = A.a[i][col];
      if (f == 0.0) continue;
      for (int j = 0; j < N; ++j) {
        A.a[i][j] -= f * A.a[col][j];
        out.a[i][j] -= f * out.a[col][j];
      }
    }
  }
  return true;
}

// Nullspace basis of M by full-pivot elimination. Pivots below tol * max|M|
// count as zero. Writes up to max_vecs unit-norm vectors (sign fixed by the
// largest-magnitude component) and returns how many were found.
template <int N>
inline int nullspace(Mat<N> M, double tol, Vec<N>* out, int max_vecs) {
  double scale = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) scale = std::max(scale, std::fabs(M.a[i][j]));
  if (scale == 0.0) scale = 1.0;

  int perm[N];
  for (int j = 0; j < N; ++j) perm[j] = j;

  int rank = N;
  for (int k = 0; k < N; ++k) {
    int pr = k, pc = k;
    double best = 0.0;
    for (int i = k; i < N; ++i) {
      for (int j = k; j < N; ++j) {
        const double v = std::fabs(M.a[i][j]);
        if (v > best) {
          best = v;
          pr = i;
          pc = j;
        }
      }
    }
    if (best <= tol * scale) {
      rank = k;
      break;
    }
    if (pr != k)
      for (int j = 0; j < N; ++j) std::swap(M.a[pr][j], M.a[k][j]);
    if (pc != k) {
      for (int i = 0; i < N; ++i) std::swap(M.a[i][pc], M.a[i][k]);
      std::swap(perm[pc], perm[k]);
    }
    for (int i = k + 1; i < N; ++i) {
      const double f = M.a[i][k] / M.a[k][k];
      M.a[i][k] = 0.0;
      for (int j = k + 1; j < N; ++j) M.a[i][j] -= f * M.a[k][j];
    }
  }

  int found = 0;
  for (int free = rank; free < N && found < max_vecs; ++free, ++found) {
    double xp[N] = {};  // solution in permuted coordinates
    xp[free] = 1.0;
    for (int i = rank - 1; i >= 0; --i) {
      double s = 0.0;
      for (int j = i + 1; j < N; ++j) s += M.a[i][j] * xp[j];
      xp[i] = -s / M.a[i][i];
    }
    Vec<N>& x = out[found];
    for (int j = 0; j < N; ++j) x[perm[j]] = xp[j];
    double nrm = norm2(x);
    int imax = 0;
    for (int j = 1; j < N; ++j)
      if (std::fabs(x[j]) > std::fabs(x[imax])) imax = j;
    const double sgn = x[imax] < 0.0 ? -1.0 : 1.0;
    x *= sgn / nrm;
  }
  return found;
}

}  // namespace srhd

#endif  // SRHD_LINALG_HPP_
