#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace tac {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;

/// Dense integer matrix with arbitrary-precision entries (row-major).
/// Values are treated as immutable by every algorithm in the library: all
/// operations return new matrices.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::initializer_list<std::initializer_list<long>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_columns(const std::vector<IntVec>& columns, std::size_t rows);
  static Matrix from_rows(const std::vector<IntVec>& rows, std::size_t cols);
  static Matrix diagonal(const IntVec& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  IntVec column(std::size_t j) const;
  IntVec row(std::size_t i) const;
  Matrix transpose() const;
  Matrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  Matrix column_range(std::size_t begin, std::size_t end) const;
  Matrix row_range(std::size_t begin, std::size_t end) const;
  Matrix hstack(const Matrix& other) const;
  Matrix vstack(const Matrix& other) const;

  Matrix operator*(const Matrix& other) const;
  IntVec operator*(const IntVec& v) const;
  Matrix operator+(const Matrix& other) const;
  Matrix operator-(const Matrix& other) const;
  Matrix operator-() const;
  bool operator==(const Matrix& other) const;
  bool operator!=(const Matrix& other) const { return !(*this == other); }

  bool is_zero() const;
  bool is_identity() const;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

using ExactMatrix = Matrix;

/// U*A*V = diag(divisors, 0, ...), with U, V unimodular. The inverses of the
/// transforms are returned as well since homology generators need them.
struct SmithDecomposition {
  Matrix U, V;
  Matrix U_inv, V_inv;
  IntVec divisors;  // positive, d_i | d_{i+1}
  std::size_t rank = 0;
};

SmithDecomposition smith_normal_form(const Matrix& A);

/// Nonzero elementary divisors of A (sorted by divisibility). Uses sparse unit
/// pivot elimination before a dense Smith reduction of the remainder.
IntVec elementary_divisors(const Matrix& A);

/// Rank by fraction-free (Bareiss) elimination.
std::size_t rank_fraction_free(const Matrix& A);
Int determinant(const Matrix& A);

/// Inverse of a matrix with determinant +1 or -1; throws otherwise.
Matrix inverse_unimodular(const Matrix& A);

/// Column Hermite normal form of the column span of A, zero columns removed:
/// pivot rows strictly increase, pivots are positive, and entries of a pivot
/// row to the left of its pivot lie in [0, pivot).
Matrix hermite_column_form(const Matrix& A);

/// Some x with A*x = b over the integers, if one exists.
std::optional<IntVec> solve_integer(const Matrix& A, const IntVec& b);

/// Sublattice of Z^N given by a Hermite-normalized column basis.
class Lattice {
 public:
  Lattice() = default;
  /// Lattice spanned by the columns of generators (need not be independent).
  static Lattice span(const Matrix& generators);
  static Lattice full(std::size_t n);
  static Lattice zero(std::size_t n);

  std::size_t ambient_rank() const { return ambient_; }
  std::size_t rank() const { return basis_.cols(); }
  const Matrix& basis() const { return basis_; }
  bool saturated() const { return saturated_; }
  bool is_full() const { return rank() == ambient_ && saturated_; }

  bool contains(const IntVec& v) const;
  bool contains(const Lattice& other) const;
  /// Coordinates of v in the stored basis, or nullopt when v is not in the lattice.
  std::optional<IntVec> coordinates(const IntVec& v) const;
  /// Coordinates of every column of M; throws if some column is outside.
  Matrix coordinates(const Matrix& M) const;

  bool operator==(const Lattice& other) const {
    return ambient_ == other.ambient_ && basis_ == other.basis_;
  }

 private:
  std::size_t ambient_ = 0;
  Matrix basis_;
  bool saturated_ = true;
  std::vector<std::size_t> pivot_rows_;
  friend Lattice make_lattice(std::size_t, Matrix, bool);
};

/// Saturated lattice {v : A v = 0}.
Lattice kernel_lattice(const Matrix& A);
Lattice intersect(const Lattice& a, const Lattice& b);
Lattice saturation(const Lattice& L);

struct CokernelInvariants {
  std::size_t betti = 0;
  IntVec torsion;  // divisors greater than 1
};
CokernelInvariants cokernel_invariants(const Matrix& A);

/// Lexicographically ordered p-subsets of {0, ..., n-1}.
const std::vector<std::vector<std::size_t>>& wedge_basis(std::size_t n, std::size_t p);
std::size_t binomial(std::size_t n, std::size_t k);

/// Matrix of the p-th exterior power in the lexicographic wedge basis.
Matrix exterior_power_matrix(const Matrix& T, std::size_t p);

/// xi ^ eta in the lexicographic basis of the (p+q)-th exterior power.
IntVec wedge(const IntVec& xi, std::size_t p, const IntVec& eta, std::size_t q, std::size_t n);

/// The integer k with xi ^ eta = k * Omega, where Omega = omega * e_1^...^e_n.
Int wedge_ratio(const IntVec& xi, std::size_t p, const IntVec& eta, std::size_t n, const Int& omega);

/// For a saturated lattice L, a complement of its annihilator inside the dual
/// ambient lattice; restriction to L identifies it with Hom(L, Z). Throws
/// std::invalid_argument when L is not saturated.
Lattice dual_lattice_map(const Lattice& L);

/// Row-major P with P*B = identity for a basis B of a saturated lattice.
Matrix left_inverse(const Lattice& L);

std::string to_string(const IntVec& v);

}  // namespace tac
