#ifndef EO_LINALG_HPP
#define EO_LINALG_HPP

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "eo/jet.hpp"

namespace eo {

// Dense Gaussian elimination with partial pivoting, templated on the scalar
// so the structure-equation solve can run in jet arithmetic.  Pivots compare
// the underlying double magnitude; a vanishing pivot means the coframe is
// degenerate at the evaluation point.
struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class T>
std::vector<T> solve_dense(std::vector<T> a, std::vector<T> rhs, int n) {
  double amax = 0;
  for (const T& v : a) amax = std::max(amax, std::abs(scalar_value(v)));
  double floor = std::max(amax * 1e-13, 1e-300);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(scalar_value(a[col * n + col]));
    for (int r = col + 1; r < n; ++r) {
      double cand = std::abs(scalar_value(a[r * n + col]));
      if (cand > best) {
        best = cand;
        piv = r;
      }
    }
    if (best < floor) throw SingularMatrixError("singular linear system");
    if (piv != col) {
      for (int k = col; k < n; ++k) std::swap(a[col * n + k], a[piv * n + k]);
      std::swap(rhs[col], rhs[piv]);
    }
    for (int r = col + 1; r < n; ++r) {
      T factor = a[r * n + col] / a[col * n + col];
      for (int k = col; k < n; ++k)
        a[r * n + k] = a[r * n + k] - factor * a[col * n + k];
      rhs[r] = rhs[r] - factor * rhs[col];
    }
  }
  std::vector<T> x(n, T(0.0));
  for (int r = n - 1; r >= 0; --r) {
    T acc = rhs[r];
    for (int k = r + 1; k < n; ++k) acc = acc - a[r * n + k] * x[k];
    x[r] = acc / a[r * n + r];
  }
  return x;
}

// Inverse and determinant of a small (n <= 4) double matrix.
inline double invert_small(const std::array<std::array<double, 4>, 4>& m,
                           std::array<std::array<double, 4>, 4>& inv, int n) {
  std::array<std::array<double, 8>, 4> aug{};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1.0;
  }
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(aug[r][col]) > std::abs(aug[piv][col])) piv = r;
    if (piv != col) {
      std::swap(aug[piv], aug[col]);
      det = -det;
    }
    double p = aug[col][col];
    if (std::abs(p) < 1e-300) return 0.0;
    det *= p;
    for (int k = 0; k < 2 * n; ++k) aug[col][k] /= p;
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = aug[r][col];
      if (f == 0.0) continue;
      for (int k = 0; k < 2 * n; ++k) aug[r][k] -= f * aug[col][k];
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return det;
}

}  // namespace eo

#endif  // EO_LINALG_HPP
