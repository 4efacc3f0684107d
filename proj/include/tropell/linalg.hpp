#pragma once

// Exact linear solves: Gaussian elimination over Q and integer solutions of
// A x = b via a column Hermite reduction.

#include <optional>
#include <utility>
#include <vector>

#include "tropell/number.hpp"

namespace tropell::linalg {

template <typename T>
using Matrix = std::vector<std::vector<T>>;

/// Some solution of A x = b over Q (free variables set to 0), or nullopt when
/// the system is inconsistent.
inline std::optional<std::vector<Rational>> solve_rational(Matrix<Rational> a, std::vector<Rational> b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    Rational inv = Rational(1) / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
      b[i] -= f * b[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;
  std::vector<Rational> x(cols, Rational(0));
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
  return x;
}

/// Some integer solution of A x = b, or nullopt when none exists.
inline std::optional<std::vector<Integer>> solve_integer(const Matrix<Integer>& a, const std::vector<Integer>& b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  Matrix<Integer> h = a;
  Matrix<Integer> u(cols, std::vector<Integer>(cols, Integer(0)));
  for (std::size_t i = 0; i < cols; ++i) u[i][i] = 1;

  auto column_combine = [&](std::size_t c1, std::size_t c2, const Integer& s, const Integer& t, const Integer& p,
                            const Integer& q) {
    // (col c1, col c2) <- (s*c1 + t*c2, p*c1 + q*c2)
    for (auto* m : {&h, &u}) {
      for (auto& row : *m) {
        Integer x = row[c1], y = row[c2];
        row[c1] = s * x + t * y;
        row[c2] = p * x + q * y;
      }
    }
  };

  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  std::size_t c = 0;
  for (std::size_t i = 0; i < rows && c < cols; ++i) {
    for (std::size_t j = c + 1; j < cols; ++j) {
      if (h[i][j] == 0) continue;
      if (h[i][c] == 0) {
        column_combine(c, j, 0, 1, 1, 0);
        continue;
      }
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h[i][c].get_mpz_t(), h[i][j].get_mpz_t());
      Integer p = -h[i][j] / g;
      Integer q = h[i][c] / g;
      column_combine(c, j, s, t, p, q);
    }
    if (h[i][c] != 0) {
      pivots.emplace_back(i, c);
      ++c;
    }
  }

  // Pivot k sits in column k; columns past the current pivot count are zero
  // in every row already visited.
  std::vector<Integer> y(cols, Integer(0));
  std::size_t next_pivot = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    Integer rest = b[i];
    for (std::size_t j = 0; j < next_pivot; ++j) rest -= h[i][j] * y[j];
    if (next_pivot < pivots.size() && pivots[next_pivot].first == i) {
      const Integer& piv = h[i][next_pivot];
      if (rest % piv != 0) return std::nullopt;
      y[next_pivot] = rest / piv;
      ++next_pivot;
    } else if (rest != 0) {
      return std::nullopt;
    }
  }
  std::vector<Integer> x(cols, Integer(0));
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = 0; j < cols; ++j) x[i] += u[i][j] * y[j];
  return x;
}

}  // namespace tropell::linalg
