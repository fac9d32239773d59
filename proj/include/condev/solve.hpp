#pragma once

#include <condev/rational.hpp>

#include <vector>

namespace condev {

/// Solves A x = b exactly by Gauss-Jordan elimination. A may have more rows
/// than columns (redundant equations are tolerated); the system must be
/// consistent and determine x uniquely, otherwise internal_error is thrown.
inline std::vector<rat> solve_unique(std::vector<std::vector<rat>> a, std::vector<rat> b) {
  const std::size_t rows = a.size();
  if (b.size() != rows)
    throw internal_error("solve_unique: shape mismatch");
  const std::size_t cols = rows == 0 ? 0 : a[0].size();

  std::size_t pivot_row = 0;
  std::vector<std::size_t> pivot_of_col(cols, SIZE_MAX);
  for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
    std::size_t sel = SIZE_MAX;
    for (std::size_t r = pivot_row; r < rows; ++r)
      if (a[r][col] != 0) {
        sel = r;
        break;
      }
    if (sel == SIZE_MAX)
      continue;
    std::swap(a[sel], a[pivot_row]);
    std::swap(b[sel], b[pivot_row]);
    const rat inv = a[pivot_row][col];
    for (std::size_t c = col; c < cols; ++c)
      a[pivot_row][c] /= inv;
    b[pivot_row] /= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pivot_row || a[r][col] == 0)
        continue;
      const rat factor = a[r][col];
      for (std::size_t c = col; c < cols; ++c)
        a[r][c] -= factor * a[pivot_row][c];
      b[r] -= factor * b[pivot_row];
    }
    pivot_of_col[col] = pivot_row;
    ++pivot_row;
  }

  for (std::size_t col = 0; col < cols; ++col)
    if (pivot_of_col[col] == SIZE_MAX)
      throw internal_error("solve_unique: system is underdetermined");
  for (std::size_t r = pivot_row; r < rows; ++r)
    if (b[r] != 0)
      throw internal_error("solve_unique: system is inconsistent");

  std::vector<rat> x(cols);
  for (std::size_t col = 0; col < cols; ++col)
    x[col] = b[pivot_of_col[col]];
  return x;
}

} // namespace condev
