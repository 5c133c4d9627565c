#include "tac/exact_algebra.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "tac/sparse_elimination.hpp"

namespace tac {

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
    for (long v : r) data_.emplace_back(v);
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix I(n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
  return I;
}

Matrix Matrix::from_columns(const std::vector<IntVec>& columns, std::size_t rows) {
  Matrix M(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw std::invalid_argument("Matrix::from_columns: length mismatch");
    for (std::size_t i = 0; i < rows; ++i) M(i, j) = columns[j][i];
  }
  return M;
}

Matrix Matrix::from_rows(const std::vector<IntVec>& rows, std::size_t cols) {
  Matrix M(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("Matrix::from_rows: length mismatch");
    for (std::size_t j = 0; j < cols; ++j) M(i, j) = rows[i][j];
  }
  return M;
}

Matrix Matrix::diagonal(const IntVec& d) {
  Matrix M(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) M(i, i) = d[i];
  return M;
}

IntVec Matrix::column(std::size_t j) const {
  IntVec c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

IntVec Matrix::row(std::size_t i) const {
  return IntVec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

Matrix Matrix::transpose() const {
  Matrix T(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) T(j, i) = (*this)(i, j);
  return T;
}

Matrix Matrix::submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
  Matrix S(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) S(i, j) = (*this)(rows[i], cols[j]);
  return S;
}

Matrix Matrix::column_range(std::size_t begin, std::size_t end) const {
  Matrix S(rows_, end - begin);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = begin; j < end; ++j) S(i, j - begin) = (*this)(i, j);
  return S;
}

Matrix Matrix::row_range(std::size_t begin, std::size_t end) const {
  Matrix S(end - begin, cols_);
  for (std::size_t i = begin; i < end; ++i)
    for (std::size_t j = 0; j < cols_; ++j) S(i - begin, j) = (*this)(i, j);
  return S;
}

Matrix Matrix::hstack(const Matrix& other) const {
  if (rows_ != other.rows_) throw std::invalid_argument("Matrix::hstack: row mismatch");
  Matrix S(rows_, cols_ + other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) S(i, j) = (*this)(i, j);
    for (std::size_t j = 0; j < other.cols_; ++j) S(i, cols_ + j) = other(i, j);
  }
  return S;
}

Matrix Matrix::vstack(const Matrix& other) const {
  if (cols_ != other.cols_) throw std::invalid_argument("Matrix::vstack: column mismatch");
  Matrix S(rows_ + other.rows_, cols_);
  std::copy(data_.begin(), data_.end(), S.data_.begin());
  std::copy(other.data_.begin(), other.data_.end(), S.data_.begin() + static_cast<std::ptrdiff_t>(data_.size()));
  return S;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw std::invalid_argument("Matrix::operator*: shape mismatch");
  Matrix P(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j)
        if (other(k, j) != 0) P(i, j) += a * other(k, j);
    }
  return P;
}

IntVec Matrix::operator*(const IntVec& v) const {
  if (cols_ != v.size()) throw std::invalid_argument("Matrix::operator*: vector length mismatch");
  IntVec r(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (v[j] != 0) r[i] += (*this)(i, j) * v[j];
  return r;
}

Matrix Matrix::operator+(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("Matrix::operator+: shape mismatch");
  Matrix S(*this);
  for (std::size_t k = 0; k < data_.size(); ++k) S.data_[k] += other.data_[k];
  return S;
}

Matrix Matrix::operator-(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("Matrix::operator-: shape mismatch");
  Matrix S(*this);
  for (std::size_t k = 0; k < data_.size(); ++k) S.data_[k] -= other.data_[k];
  return S;
}

Matrix Matrix::operator-() const {
  Matrix S(*this);
  for (auto& v : S.data_) v = -v;
  return S;
}

bool Matrix::operator==(const Matrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Int& v) { return v == 0; });
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j).get_str();
  }
  os << "]";
  return os.str();
}

std::string to_string(const IntVec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

int cmpabs(const Int& a, const Int& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

// Quotient with remainder of least absolute value.
Int nearest_quotient(const Int& a, const Int& b) {
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  Int twice_r = 2 * abs(r);
  if (twice_r > abs(b)) q += 1;
  return q;
}

class SmithWorker {
 public:
  SmithWorker(const Matrix& A, bool transforms) : D(A), track(transforms) {
    if (track) {
      U = Matrix::identity(A.rows());
      Ui = U;
      V = Matrix::identity(A.cols());
      Vi = V;
    }
  }

  Matrix D, U, Ui, V, Vi;
  bool track;

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < D.cols(); ++j) std::swap(D(a, j), D(b, j));
    if (track) {
      for (std::size_t j = 0; j < U.cols(); ++j) std::swap(U(a, j), U(b, j));
      for (std::size_t i = 0; i < Ui.rows(); ++i) std::swap(Ui(i, a), Ui(i, b));
    }
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < D.rows(); ++i) std::swap(D(i, a), D(i, b));
    if (track) {
      for (std::size_t i = 0; i < V.rows(); ++i) std::swap(V(i, a), V(i, b));
      for (std::size_t j = 0; j < Vi.cols(); ++j) std::swap(Vi(a, j), Vi(b, j));
    }
  }
  // row_i += c * row_k
  void add_row(std::size_t i, std::size_t k, const Int& c, std::size_t from_col) {
    if (c == 0) return;
    for (std::size_t j = from_col; j < D.cols(); ++j)
      if (D(k, j) != 0) D(i, j) += c * D(k, j);
    if (track) {
      for (std::size_t j = 0; j < U.cols(); ++j)
        if (U(k, j) != 0) U(i, j) += c * U(k, j);
      for (std::size_t r = 0; r < Ui.rows(); ++r)
        if (Ui(r, i) != 0) Ui(r, k) -= c * Ui(r, i);
    }
  }
  // col_j += c * col_k
  void add_col(std::size_t j, std::size_t k, const Int& c, std::size_t from_row) {
    if (c == 0) return;
    for (std::size_t i = from_row; i < D.rows(); ++i)
      if (D(i, k) != 0) D(i, j) += c * D(i, k);
    if (track) {
      for (std::size_t r = 0; r < V.rows(); ++r)
        if (V(r, k) != 0) V(r, j) += c * V(r, k);
      for (std::size_t s = 0; s < Vi.cols(); ++s)
        if (Vi(j, s) != 0) Vi(k, s) -= c * Vi(j, s);
    }
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < D.cols(); ++j) D(i, j) = -D(i, j);
    if (track) {
      for (std::size_t j = 0; j < U.cols(); ++j) U(i, j) = -U(i, j);
      for (std::size_t r = 0; r < Ui.rows(); ++r) Ui(r, i) = -Ui(r, i);
    }
  }

  // Minimal nonzero |entry| in the trailing block, row-major tie-break.
  bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const {
    bool found = false;
    Int best;
    for (std::size_t i = t; i < D.rows(); ++i)
      for (std::size_t j = t; j < D.cols(); ++j) {
        const Int& v = D(i, j);
        if (v == 0) continue;
        if (!found || cmpabs(v, best) < 0) {
          best = abs(v);
          pi = i;
          pj = j;
          found = true;
          if (best == 1) return true;
        }
      }
    return found;
  }

  IntVec run() {
    IntVec divisors;
    const std::size_t m = D.rows(), n = D.cols();
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
      std::size_t pi = 0, pj = 0;
      if (!find_pivot(t, pi, pj)) break;
      swap_rows(t, pi);
      swap_cols(t, pj);
      for (;;) {
        bool dirty = false;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (D(i, t) == 0) continue;
          add_row(i, t, -nearest_quotient(D(i, t), D(t, t)), t);
          if (D(i, t) != 0) dirty = true;
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (D(t, j) == 0) continue;
          add_col(j, t, -nearest_quotient(D(t, j), D(t, t)), t);
          if (D(t, j) != 0) dirty = true;
        }
        if (dirty) {
          // A smaller remainder exists in row t or column t; make it the pivot.
          std::size_t bi = t, bj = t;
          for (std::size_t i = t + 1; i < m; ++i)
            if (D(i, t) != 0 && cmpabs(D(i, t), D(bi, bj)) < 0) bi = i, bj = t;
          for (std::size_t j = t + 1; j < n; ++j)
            if (D(t, j) != 0 && cmpabs(D(t, j), D(bi, bj)) < 0) bi = t, bj = j;
          swap_rows(t, bi);
          swap_cols(t, bj);
          continue;
        }
        // Enforce divisibility of the trailing block by the pivot.
        bool fixed = false;
        for (std::size_t i = t + 1; i < m && !fixed; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (D(i, j) % D(t, t) != 0) {
              add_row(t, i, 1, t);
              fixed = true;
              break;
            }
        if (!fixed) break;
      }
      if (D(t, t) < 0) negate_row(t);
      divisors.push_back(D(t, t));
    }
    return divisors;
  }
};

}  // namespace

SmithDecomposition smith_normal_form(const Matrix& A) {
  SmithWorker w(A, true);
  SmithDecomposition s;
  s.divisors = w.run();
  s.rank = s.divisors.size();
  s.U = std::move(w.U);
  s.U_inv = std::move(w.Ui);
  s.V = std::move(w.V);
  s.V_inv = std::move(w.Vi);
  return s;
}

namespace {
IntVec dense_divisors(const Matrix& A) {
  SmithWorker w(A, false);
  return w.run();
}
}  // namespace

IntVec elementary_divisors(const Matrix& A) {
  if (A.rows() * A.cols() <= 64) return dense_divisors(A);
  std::vector<SparseMatrix> d(2);
  d[1] = SparseMatrix::from_dense(A);
  ReducedComplex r = reduce_chain_complex(std::move(d), {A.rows(), A.cols()}, false);
  IntVec divisors(r.eliminated[1], Int(1));
  IntVec rest = dense_divisors(r.differentials[1]);
  divisors.insert(divisors.end(), rest.begin(), rest.end());
  return divisors;
}

// ---------------------------------------------------------------------------
// Fraction-free elimination

namespace {
// Bareiss elimination in place; returns rank and the sign of the row permutation.
std::size_t bareiss(Matrix& M, int& perm_sign) {
  perm_sign = 1;
  const std::size_t m = M.rows(), n = M.cols();
  Int prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && M(p, c) == 0) ++p;
    if (p == m) continue;
    if (p != r) {
      for (std::size_t j = 0; j < n; ++j) std::swap(M(p, j), M(r, j));
      perm_sign = -perm_sign;
    }
    for (std::size_t i = r + 1; i < m; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) {
        Int v = M(r, c) * M(i, j) - M(i, c) * M(r, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        M(i, j) = v;
      }
      M(i, c) = 0;
    }
    prev = M(r, c);
    ++r;
  }
  return r;
}
}  // namespace

std::size_t rank_fraction_free(const Matrix& A) {
  Matrix M(A);
  int s;
  return bareiss(M, s);
}

Int determinant(const Matrix& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("determinant: matrix not square");
  if (A.rows() == 0) return 1;
  Matrix M(A);
  int s;
  std::size_t r = bareiss(M, s);
  if (r < A.rows()) return 0;
  // With full rank the pivots sit on the diagonal and the last one is the determinant.
  return s * M(A.rows() - 1, A.cols() - 1);
}

Matrix inverse_unimodular(const Matrix& A) {
  if (A.rows() != A.cols()) throw std::invalid_argument("inverse_unimodular: matrix not square");
  SmithDecomposition s = smith_normal_form(A);
  if (s.rank != A.rows() || (s.rank && s.divisors.back() != 1))
    throw std::invalid_argument("inverse_unimodular: determinant is not +-1");
  // U A V = I  =>  A^{-1} = V U.
  return s.V * s.U;
}

// ---------------------------------------------------------------------------
// Hermite normal form and lattices

namespace {

Matrix hermite_impl(const Matrix& A, std::vector<std::size_t>& pivots) {
  Matrix H(A);
  const std::size_t m = H.rows(), n = H.cols();
  auto add_col = [&](std::size_t j, std::size_t k, const Int& c) {
    if (c == 0) return;
    for (std::size_t i = 0; i < m; ++i)
      if (H(i, k) != 0) H(i, j) += c * H(i, k);
  };
  auto swap_col = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m; ++i) std::swap(H(i, a), H(i, b));
  };
  std::size_t c = 0;  // next pivot column
  pivots.clear();
  for (std::size_t r = 0; r < m && c < n; ++r) {
    // gcd-reduce row r over columns c..n-1 into column c.
    for (;;) {
      std::size_t best = n;
      for (std::size_t j = c; j < n; ++j)
        if (H(r, j) != 0 && (best == n || cmpabs(H(r, j), H(r, best)) < 0)) best = j;
      if (best == n) break;
      swap_col(c, best);
      bool done = true;
      for (std::size_t j = c + 1; j < n; ++j) {
        if (H(r, j) == 0) continue;
        add_col(j, c, -nearest_quotient(H(r, j), H(r, c)));
        if (H(r, j) != 0) done = false;
      }
      if (done) break;
    }
    if (H(r, c) == 0) continue;
    if (H(r, c) < 0)
      for (std::size_t i = 0; i < m; ++i) H(i, c) = -H(i, c);
    for (std::size_t j = 0; j < c; ++j) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), H(r, j).get_mpz_t(), H(r, c).get_mpz_t());
      add_col(j, c, -q);
    }
    pivots.push_back(r);
    ++c;
  }
  return H.column_range(0, c);
}

}  // namespace

Matrix hermite_column_form(const Matrix& A) {
  std::vector<std::size_t> p;
  return hermite_impl(A, p);
}

Lattice make_lattice(std::size_t ambient, Matrix generators, bool check_saturation) {
  Lattice L;
  L.ambient_ = ambient;
  if (generators.cols() == 0) {
    L.basis_ = Matrix(ambient, 0);
    L.saturated_ = true;
    return L;
  }
  L.basis_ = hermite_impl(generators, L.pivot_rows_);
  if (check_saturation) {
    IntVec d = elementary_divisors(L.basis_);
    L.saturated_ = std::all_of(d.begin(), d.end(), [](const Int& v) { return v == 1; });
  } else {
    L.saturated_ = true;
  }
  return L;
}

Lattice Lattice::span(const Matrix& generators) { return make_lattice(generators.rows(), generators, true); }
Lattice Lattice::full(std::size_t n) { return make_lattice(n, Matrix::identity(n), false); }
Lattice Lattice::zero(std::size_t n) { return make_lattice(n, Matrix(n, 0), false); }

std::optional<IntVec> Lattice::coordinates(const IntVec& v) const {
  if (v.size() != ambient_) throw std::invalid_argument("Lattice::coordinates: ambient mismatch");
  IntVec rest(v);
  IntVec x(rank());
  for (std::size_t k = 0; k < rank(); ++k) {
    std::size_t r = pivot_rows_[k];
    // Rows above the pivot have been cleared already; the pivot row fixes x_k.
    if (rest[r] % basis_(r, k) != 0) return std::nullopt;
    x[k] = rest[r] / basis_(r, k);
    if (x[k] != 0)
      for (std::size_t i = r; i < ambient_; ++i) rest[i] -= x[k] * basis_(i, k);
  }
  for (const Int& e : rest)
    if (e != 0) return std::nullopt;
  return x;
}

Matrix Lattice::coordinates(const Matrix& M) const {
  Matrix X(rank(), M.cols());
  for (std::size_t j = 0; j < M.cols(); ++j) {
    auto c = coordinates(M.column(j));
    if (!c) throw std::runtime_error("Lattice::coordinates: vector outside lattice");
    for (std::size_t i = 0; i < rank(); ++i) X(i, j) = (*c)[i];
  }
  return X;
}

bool Lattice::contains(const IntVec& v) const { return coordinates(v).has_value(); }

bool Lattice::contains(const Lattice& other) const {
  for (std::size_t j = 0; j < other.rank(); ++j)
    if (!contains(other.basis_.column(j))) return false;
  return true;
}

Lattice kernel_lattice(const Matrix& A) {
  const std::size_t n = A.cols();
  if (A.rows() == 0 || A.is_zero()) return Lattice::full(n);
  SmithDecomposition s = smith_normal_form(A);
  return make_lattice(n, s.V.column_range(s.rank, n), false);
}

Lattice intersect(const Lattice& a, const Lattice& b) {
  if (a.ambient_rank() != b.ambient_rank()) throw std::invalid_argument("intersect: ambient mismatch");
  if (a.is_full()) return b;
  if (b.is_full()) return a;
  // Solutions of A x = B y give the intersection as A x.
  Matrix M = a.basis().hstack(-b.basis());
  Lattice k = kernel_lattice(M);
  Matrix X = k.basis().row_range(0, a.rank());
  Matrix gens = a.basis() * X;
  Lattice out = Lattice::span(gens);
  return out;
}

Lattice saturation(const Lattice& L) {
  if (L.rank() == 0) return L;
  // The saturation is the kernel of the annihilator of the lattice.
  Lattice ann = kernel_lattice(L.basis().transpose());
  if (ann.rank() == 0) return Lattice::full(L.ambient_rank());
  return kernel_lattice(ann.basis().transpose());
}

CokernelInvariants cokernel_invariants(const Matrix& A) {
  IntVec d = elementary_divisors(A);
  CokernelInvariants c;
  c.betti = A.rows() - d.size();
  for (const Int& v : d)
    if (v > 1) c.torsion.push_back(v);
  return c;
}

std::optional<IntVec> solve_integer(const Matrix& A, const IntVec& b) {
  if (b.size() != A.rows()) throw std::invalid_argument("solve_integer: length mismatch");
  SmithDecomposition s = smith_normal_form(A);
  IntVec c = s.U * b;  // D y = c with x = V y
  IntVec y(A.cols());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i < s.rank) {
      if (c[i] % s.divisors[i] != 0) return std::nullopt;
      y[i] = c[i] / s.divisors[i];
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return s.V * y;
}

Matrix left_inverse(const Lattice& L) {
  if (!L.saturated()) throw std::invalid_argument("left_inverse: lattice is not saturated");
  const Matrix& B = L.basis();
  if (B.cols() == 0) return Matrix(0, L.ambient_rank());
  // U B V = [I; 0]  =>  P = V [I 0] U.
  SmithDecomposition s = smith_normal_form(B);
  Matrix top = s.U.row_range(0, B.cols());
  return s.V * top;
}

Lattice dual_lattice_map(const Lattice& L) {
  if (!L.saturated()) throw std::invalid_argument("dual_lattice_map: lattice is not saturated");
  if (L.rank() == 0) return Lattice::zero(L.ambient_rank());
  return make_lattice(L.ambient_rank(), left_inverse(L).transpose(), false);
}

// ---------------------------------------------------------------------------
// Exterior algebra

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

const std::vector<std::vector<std::size_t>>& wedge_basis(std::size_t n, std::size_t p) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, std::size_t>, std::vector<std::vector<std::size_t>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, p);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<std::vector<std::size_t>> out;
  if (p <= n) {
    std::vector<std::size_t> cur(p);
    for (std::size_t i = 0; i < p; ++i) cur[i] = i;
    for (;;) {
      out.push_back(cur);
      std::size_t i = p;
      while (i > 0 && cur[i - 1] == n - p + i - 1) --i;
      if (i == 0) break;
      ++cur[i - 1];
      for (std::size_t j = i; j < p; ++j) cur[j] = cur[j - 1] + 1;
    }
  }
  return cache.emplace(key, std::move(out)).first->second;
}

Matrix exterior_power_matrix(const Matrix& T, std::size_t p) {
  if (T.rows() != T.cols()) throw std::invalid_argument("exterior_power_matrix: matrix not square");
  const std::size_t n = T.rows();
  if (p > n) throw std::invalid_argument("exterior_power_matrix: degree out of range");
  const auto& basis = wedge_basis(n, p);
  Matrix W(basis.size(), basis.size());
  for (std::size_t I = 0; I < basis.size(); ++I)
    for (std::size_t J = 0; J < basis.size(); ++J) W(I, J) = determinant(T.submatrix(basis[I], basis[J]));
  return W;
}

namespace {
std::size_t subset_index(std::size_t n, const std::vector<std::size_t>& s) {
  const auto& basis = wedge_basis(n, s.size());
  auto it = std::lower_bound(basis.begin(), basis.end(), s);
  return static_cast<std::size_t>(it - basis.begin());
}
}  // namespace

IntVec wedge(const IntVec& xi, std::size_t p, const IntVec& eta, std::size_t q, std::size_t n) {
  const auto& bp = wedge_basis(n, p);
  const auto& bq = wedge_basis(n, q);
  if (xi.size() != bp.size() || eta.size() != bq.size()) throw std::invalid_argument("wedge: length mismatch");
  IntVec out(binomial(n, p + q));
  if (p + q > n) return out;
  std::vector<std::size_t> merged;
  for (std::size_t I = 0; I < bp.size(); ++I) {
    if (xi[I] == 0) continue;
    for (std::size_t J = 0; J < bq.size(); ++J) {
      if (eta[J] == 0) continue;
      merged.assign(bp[I].begin(), bp[I].end());
      merged.insert(merged.end(), bq[J].begin(), bq[J].end());
      // Sign of the sorting permutation; zero on repeated indices.
      int sign = 1;
      bool repeated = false;
      for (std::size_t a = 0; a < merged.size() && !repeated; ++a)
        for (std::size_t b = a + 1; b < merged.size(); ++b) {
          if (merged[a] == merged[b]) {
            repeated = true;
            break;
          }
          if (merged[a] > merged[b]) sign = -sign;
        }
      if (repeated) continue;
      std::sort(merged.begin(), merged.end());
      out[subset_index(n, merged)] += sign * xi[I] * eta[J];
    }
  }
  return out;
}

Int wedge_ratio(const IntVec& xi, std::size_t p, const IntVec& eta, std::size_t n, const Int& omega) {
  if (p > n) throw std::invalid_argument("wedge_ratio: degree out of range");
  if (omega == 0) throw std::invalid_argument("wedge_ratio: Omega must be nonzero");
  IntVec top = wedge(xi, p, eta, n - p, n);
  if (top[0] % omega != 0) throw std::invalid_argument("wedge_ratio: product is not a multiple of Omega");
  return top[0] / omega;
}

}  // namespace tac
