#pragma once

// Independent reference computations used to check the library.

#include <algorithm>
#include <random>
#include <vector>

#include "tac/exact_algebra.hpp"

namespace tac::oracle {

// Determinant by cofactor expansion (only for the small sizes used in tests).
inline Int cofactor_det(const Matrix& A) {
  const std::size_t n = A.rows();
  if (n == 0) return 1;
  if (n == 1) return A(0, 0);
  Int d = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (A(0, j) == 0) continue;
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 1; i < n; ++i) rows.push_back(i);
    for (std::size_t c = 0; c < n; ++c)
      if (c != j) cols.push_back(c);
    Int m = cofactor_det(A.submatrix(rows, cols));
    d += ((j % 2) ? -1 : 1) * A(0, j) * m;
  }
  return d;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Elementary divisors as ratios of gcds of all k x k minors.
inline IntVec minor_gcd_divisors(const Matrix& A) {
  IntVec out;
  Int prev = 1;
  for (std::size_t k = 1; k <= std::min(A.rows(), A.cols()); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(A.rows(), k, 0, cur, rs);
    subsets(A.cols(), k, 0, cur, cs);
    Int g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        Int m = cofactor_det(A.submatrix(r, c));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m.get_mpz_t());
      }
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

inline Matrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int range) {
  std::uniform_int_distribution<int> dist(-range, range);
  Matrix M(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) M(i, j) = dist(rng);
  return M;
}

// Random element of GL_n(Z) with determinant +1 built from elementary moves.
inline Matrix random_unimodular(std::mt19937& rng, std::size_t n, int steps = 8) {
  Matrix M = Matrix::identity(n);
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int s = 0; s < steps; ++s) {
    std::size_t i = idx(rng), j = idx(rng);
    if (i == j) continue;
    int c = coef(rng);
    for (std::size_t k = 0; k < n; ++k) M(i, k) += c * M(j, k);
  }
  return M;
}

}  // namespace tac::oracle
