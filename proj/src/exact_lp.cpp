#include "mtrans/exact_lp.hpp"

#include "mtrans/error.hpp"

namespace mtrans {

std::optional<std::vector<Rational>> find_nonnegative_solution(const RationalMatrix& A, const std::vector<Rational>& b) {
  const std::size_t rows = b.size();
  if (A.size() != rows) {
    throw PreconditionError("constraint matrix and right-hand side disagree in length");
  }
  const std::size_t cols = rows == 0 ? 0 : A.front().size();
  for (const auto& row : A) {
    if (row.size() != cols) {
      throw PreconditionError("ragged constraint matrix");
    }
  }

  // Tableau columns: original variables, then one artificial per row, then rhs.
  const std::size_t width = cols + rows + 1;
  const std::size_t rhs = width - 1;
  std::vector<std::vector<Rational>> t(rows, std::vector<Rational>(width, Rational(0)));
  std::vector<std::size_t> basis(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const bool flip = b[i] < Rational(0);
    for (std::size_t j = 0; j < cols; ++j) t[i][j] = flip ? -A[i][j] : A[i][j];
    t[i][cols + i] = Rational(1);
    t[i][rhs] = flip ? -b[i] : b[i];
    basis[i] = cols + i;
  }

  // Reduced costs of the phase-one objective (sum of artificials).
  std::vector<Rational> z(width, Rational(0));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) z[j] -= t[i][j];
    z[rhs] -= t[i][rhs];
  }

  while (true) {
    std::size_t enter = width;
    for (std::size_t j = 0; j < rhs; ++j) {
      if (z[j] < Rational(0)) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;

    std::size_t leave = rows;
    Rational best_ratio;
    for (std::size_t i = 0; i < rows; ++i) {
      if (!(t[i][enter] > Rational(0))) continue;
      Rational ratio = t[i][rhs];
      ratio /= t[i][enter];
      if (leave == rows || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == rows) break;  // cannot happen for a bounded phase-one problem

    const Rational pivot = t[leave][enter];
    for (auto& x : t[leave]) x /= pivot;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == leave || t[i][enter] == Rational(0)) continue;
      const Rational factor = t[i][enter];
      for (std::size_t j = 0; j < width; ++j) {
        if (t[leave][j] != Rational(0)) t[i][j] -= factor * t[leave][j];
      }
    }
    if (z[enter] != Rational(0)) {
      const Rational factor = z[enter];
      for (std::size_t j = 0; j < width; ++j) {
        if (t[leave][j] != Rational(0)) z[j] -= factor * t[leave][j];
      }
    }
    basis[leave] = enter;
  }

  if (z[rhs] != Rational(0)) return std::nullopt;
  std::vector<Rational> x(cols, Rational(0));
  for (std::size_t i = 0; i < rows; ++i) {
    if (basis[i] < cols) x[basis[i]] = t[i][rhs];
  }
  return x;
}

}  // namespace mtrans
