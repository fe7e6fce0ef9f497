#pragma once

// Small dense matrices: exact rational determinants and characteristic
// polynomials, floating determinants, inverses and symmetric eigenvalues.

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstddef>
#include <utility>
#include <vector>

#include "arinv/arith.hpp"

namespace arinv {

template <class T>
using Matrix = std::vector<std::vector<T>>;

template <class T>
Matrix<T> zeros(std::size_t rows, std::size_t cols) {
  return Matrix<T>(rows, std::vector<T>(cols, T(0)));
}

/// Exact determinant by Gaussian elimination over Q.
inline Rational determinant(Matrix<Rational> a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t row = col + 1; row < n; ++row) {
      if (a[row][col] == 0) continue;
      Rational f = a[row][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] -= f * a[col][k];
    }
  }
  return det;
}

/// Characteristic polynomial det(xI - A), constant term first (Faddeev-LeVerrier).
inline RatPoly characteristic_polynomial(const Matrix<Rational>& a) {
  const std::size_t n = a.size();
  RatPoly coeffs(n + 1, Rational(0));
  coeffs[n] = 1;
  Matrix<Rational> m = zeros<Rational>(n, n);  // M_0 = 0
  Matrix<Rational> am;
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I
    Matrix<Rational> next = zeros<Rational>(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rational s = 0;
        for (std::size_t l = 0; l < n; ++l) s += a[i][l] * m[l][j];
        next[i][j] = s;
      }
    for (std::size_t i = 0; i < n; ++i) next[i][i] += coeffs[n - k + 1];
    m = std::move(next);
    Rational trace = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) trace += a[i][l] * m[l][i];
    coeffs[n - k] = -trace / Rational(static_cast<long>(k));
  }
  return coeffs;
}

/// Determinant with partial pivoting.
template <class Real>
Real determinant(Matrix<Real> a) {
  using std::abs;
  const std::size_t n = a.size();
  Real det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row)
      if (abs(a[row][col]) > abs(a[pivot][col])) pivot = row;
    if (a[pivot][col] == 0) return Real(0);
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t row = col + 1; row < n; ++row) {
      Real f = a[row][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[row][k] -= f * a[col][k];
    }
  }
  return det;
}

/// Inverse by Gauss-Jordan; the caller guarantees nonsingularity.
template <class Real>
Matrix<Real> inverse(Matrix<Real> a) {
  using std::abs;
  const std::size_t n = a.size();
  Matrix<Real> inv = zeros<Real>(n, n);
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row)
      if (abs(a[row][col]) > abs(a[pivot][col])) pivot = row;
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    Real p = a[col][col];
    for (std::size_t k = 0; k < n; ++k) {
      a[col][k] /= p;
      inv[col][k] /= p;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col) continue;
      Real f = a[row][col];
      for (std::size_t k = 0; k < n; ++k) {
        a[row][k] -= f * a[col][k];
        inv[row][k] -= f * inv[col][k];
      }
    }
  }
  return inv;
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
template <class Real>
std::vector<Real> symmetric_eigenvalues(Matrix<Real> a) {
  using std::abs;
  using std::sqrt;
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    Real off = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < std::numeric_limits<Real>::min() * Real(1e4) ||
        off <= std::numeric_limits<Real>::epsilon() * std::numeric_limits<Real>::epsilon())
      break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0) continue;
        Real theta = (a[q][q] - a[p][p]) / (Real(2) * a[p][q]);
        Real t = (theta >= 0 ? Real(1) : Real(-1)) / (abs(theta) + sqrt(theta * theta + Real(1)));
        Real c = Real(1) / sqrt(t * t + Real(1));
        Real s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          Real akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          Real apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::vector<Real> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace arinv
