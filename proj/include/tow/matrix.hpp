#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace tow {

// Dense M-players × N-machines matrix, row-major. Small fixed shapes only
// (M, N are single digits in every experiment), so no linear-algebra library
// is warranted.
struct Matrix {
  std::size_t m = 0, n = 0;
  std::vector<double> a;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : m(rows), n(cols), a(rows * cols, 0.0) {}

  double& at(std::size_t i, std::size_t k) { return a[i * n + k]; }
  double at(std::size_t i, std::size_t k) const { return a[i * n + k]; }

  double row_sum(std::size_t i) const {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += at(i, k);
    return s;
  }
  double col_sum(std::size_t k) const {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += at(i, k);
    return s;
  }
  double max_abs() const {
    double v = 0.0;
    for (double x : a) v = std::max(v, std::abs(x));
    return v;
  }
};

}  // namespace tow
