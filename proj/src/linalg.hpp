#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace dunkl {

// Dense solve A x = b by Gaussian elimination with partial pivoting.
// A is row-major n x n and is destroyed; b becomes the solution.
// Returns the smallest pivot magnitude encountered (conditioning hint).
inline double solve_dense(std::vector<double>& A, std::vector<double>& b, int n) {
  double min_pivot = 1e300;
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(A[static_cast<std::size_t>(r * n + c)]) > std::abs(A[static_cast<std::size_t>(p * n + c)])) p = r;
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(A[static_cast<std::size_t>(c * n + j)], A[static_cast<std::size_t>(p * n + j)]);
      std::swap(b[static_cast<std::size_t>(c)], b[static_cast<std::size_t>(p)]);
    }
    double piv = A[static_cast<std::size_t>(c * n + c)];
    if (piv == 0.0) throw std::runtime_error("solve_dense: singular matrix");
    min_pivot = std::min(min_pivot, std::abs(piv));
    for (int r = c + 1; r < n; ++r) {
      double f = A[static_cast<std::size_t>(r * n + c)] / piv;
      if (f == 0.0) continue;
      A[static_cast<std::size_t>(r * n + c)] = 0.0;
      for (int j = c + 1; j < n; ++j)
        A[static_cast<std::size_t>(r * n + j)] -= f * A[static_cast<std::size_t>(c * n + j)];
      b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(c)];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    double s = b[static_cast<std::size_t>(r)];
    for (int j = r + 1; j < n; ++j) s -= A[static_cast<std::size_t>(r * n + j)] * b[static_cast<std::size_t>(j)];
    b[static_cast<std::size_t>(r)] = s / A[static_cast<std::size_t>(r * n + r)];
  }
  return min_pivot;
}

// Inverse of a small dense matrix (row-major), same pivoting.
inline std::vector<double> invert_dense(std::vector<double> A, int n) {
  std::vector<double> inv(static_cast<std::size_t>(n * n), 0.0);
  for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(i * n + i)] = 1.0;
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(A[static_cast<std::size_t>(r * n + c)]) > std::abs(A[static_cast<std::size_t>(p * n + c)])) p = r;
    for (int j = 0; j < n; ++j) {
      std::swap(A[static_cast<std::size_t>(c * n + j)], A[static_cast<std::size_t>(p * n + j)]);
      std::swap(inv[static_cast<std::size_t>(c * n + j)], inv[static_cast<std::size_t>(p * n + j)]);
    }
    double piv = A[static_cast<std::size_t>(c * n + c)];
    if (piv == 0.0) throw std::runtime_error("invert_dense: singular matrix");
    for (int j = 0; j < n; ++j) {
      A[static_cast<std::size_t>(c * n + j)] /= piv;
      inv[static_cast<std::size_t>(c * n + j)] /= piv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      double f = A[static_cast<std::size_t>(r * n + c)];
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        A[static_cast<std::size_t>(r * n + j)] -= f * A[static_cast<std::size_t>(c * n + j)];
        inv[static_cast<std::size_t>(r * n + j)] -= f * inv[static_cast<std::size_t>(c * n + j)];
      }
    }
  }
  return inv;
}

}  // namespace dunkl
