#include "tac/homology_engine.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tac {

namespace {

// Sparse product A*B.
SparseMatrix multiply(const SparseMatrix& A, const SparseMatrix& B) {
  SparseMatrix C(A.rows, B.cols);
  for (std::size_t j = 0; j < B.cols; ++j)
    for (const auto& [k, b] : B.columns[j])
      for (const auto& [i, a] : A.columns[k]) C.add(i, j, a * b);
  return C;
}

bool is_zero(const SparseMatrix& M) {
  for (const auto& c : M.columns)
    if (!c.empty()) return false;
  return true;
}

}  // namespace

void GradedComplex::check_square_zero() const {
  for (std::size_t k = 1; k + 1 < dims.size(); ++k) {
    // chain: d[k] d[k+1];  cochain: d[k] d[k-1].
    const SparseMatrix& first = cochain ? d[k - 1] : d[k + 1];
    const SparseMatrix& second = d[k];
    if (first.rows == 0 || first.cols == 0 || second.rows == 0 || second.cols == 0) continue;
    if (!is_zero(multiply(second, first)))
      throw std::logic_error("differential does not square to zero at degree " + std::to_string(k));
  }
}

int GradedComplex::euler_characteristic() const {
  long chi = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) chi += (k % 2 ? -1L : 1L) * static_cast<long>(dims[k]);
  return static_cast<int>(chi);
}

std::string HomologyGroup::to_string() const {
  std::ostringstream os;
  os << "degree " << degree << ": betti " << betti;
  if (!torsion.empty()) {
    os << ", torsion";
    for (const auto& t : torsion) os << " Z/" << t.get_str();
  }
  return os.str();
}

IntVec apply_differential(const GradedComplex& C, std::size_t degree, const IntVec& v) {
  const SparseMatrix& D = C.d.at(degree);
  IntVec out(D.rows);
  for (std::size_t j = 0; j < D.cols; ++j) {
    if (v[j] == 0) continue;
    for (const auto& [i, a] : D.columns[j]) out[i] += a * v[j];
  }
  return out;
}

namespace {

ReducedComplex reduce_graded(const GradedComplex& C, bool track) {
  const std::size_t N = C.dims.size();
  auto deg = [&](std::size_t j) { return C.cochain ? N - 1 - j : j; };
  std::vector<std::size_t> dims(N);
  std::vector<SparseMatrix> bnd(N);
  for (std::size_t j = 0; j < N; ++j) dims[j] = C.dims[deg(j)];
  for (std::size_t j = 1; j < N; ++j) {
    // Map from chain degree j to j-1.
    const SparseMatrix& src = C.cochain ? C.d[deg(j)] : C.d[j];
    if (src.rows == 0 && src.cols == 0)
      bnd[j] = SparseMatrix(dims[j - 1], dims[j]);
    else
      bnd[j] = src;
  }
  return reduce_chain_complex(std::move(bnd), dims, track);
}

}  // namespace

std::vector<HomologyGroup> homology(const GradedComplex& C, Field field, bool representatives) {
  if (representatives) return HomologyCalculator(C, field).groups();
  const std::size_t N = C.dims.size();
  ReducedComplex R = reduce_graded(C, false);
  std::vector<HomologyGroup> out(N);
  for (std::size_t j = 0; j < N; ++j) {
    const std::size_t deg = C.cochain ? N - 1 - j : j;
    const std::size_t z_dim = R.survivors[j].size();
    HomologyGroup& H = out[deg];
    H.degree = deg;
    Matrix Dout = j >= 1 ? R.differentials[j] : Matrix(0, z_dim);
    Matrix Din = j + 1 < N ? R.differentials[j + 1] : Matrix(z_dim, 0);
    const std::size_t r_out = Dout.rows() == 0 ? 0 : rank_fraction_free(Dout);
    IntVec divisors = Din.empty() ? IntVec{} : elementary_divisors(Din);
    H.betti = z_dim - r_out - divisors.size();
    if (field == Field::Z)
      for (const auto& d : divisors)
        if (d > 1) H.torsion.push_back(d);
  }
  return out;
}

HomologyCalculator::HomologyCalculator(const GradedComplex& C, Field field)
    : cochain_(C.cochain), n_(C.dims.size()), field_(field), differentials_(C), reduced_(reduce_graded(C, true)) {
  const ReducedComplex& R = reduced_;
  const std::size_t N = n_;
  data_.resize(N);
  groups_.resize(N);
  for (std::size_t j = 0; j < N; ++j) {
    const std::size_t deg = cochain_ ? N - 1 - j : j;
    const std::size_t z_dim = R.survivors[j].size();
    Degree& D = data_[j];
    HomologyGroup& H = groups_[deg];
    H.degree = deg;
    Matrix Z;
    Matrix Dout = j >= 1 ? R.differentials[j] : Matrix(0, z_dim);
    if (Dout.rows() == 0 || Dout.is_zero()) {
      Z = Matrix::identity(z_dim);
      D.v_inv = Z;
    } else {
      SmithDecomposition s_out = smith_normal_form(Dout);
      D.r_out = s_out.rank;
      Z = s_out.V.column_range(D.r_out, z_dim);
      D.v_inv = s_out.V_inv;
    }
    const std::size_t k_dim = z_dim - D.r_out;
    Matrix Din = j + 1 < N ? R.differentials[j + 1] : Matrix(z_dim, 0);
    Matrix X = (D.v_inv * Din).row_range(D.r_out, z_dim);  // incoming boundaries in kernel coordinates
    Matrix G = Z;
    if (!X.empty() && !X.is_zero()) {
      SmithDecomposition s_in = smith_normal_form(X);
      D.divisors = s_in.divisors;
      D.u_in = s_in.U;
      D.has_u = true;
      G = Z * s_in.U_inv;
    }
    const std::size_t r_in = D.divisors.size();
    H.betti = k_dim - r_in;
    std::vector<std::size_t> cols;
    for (std::size_t c = r_in; c < k_dim; ++c) cols.push_back(c);
    for (std::size_t c = 0; c < r_in; ++c)
      if (D.divisors[c] > 1 && field == Field::Z) {
        H.torsion.push_back(D.divisors[c]);
        cols.push_back(c);
      }
    for (std::size_t c : cols) {
      IntVec v(C.dims[deg]);
      for (std::size_t s = 0; s < z_dim; ++s) {
        const Int& coef = G(s, c);
        if (coef == 0) continue;
        for (const auto& [row, val] : R.lifts[j][s]) v[row] += coef * val;
      }
      H.cycle_basis.push_back(std::move(v));
    }
  }
}

IntVec HomologyCalculator::class_of(std::size_t degree, const IntVec& cycle) const {
  const std::size_t j = chain_degree(degree);
  const Degree& D = data_.at(j);
  if (cycle.size() != differentials_.dims.at(degree))
    throw std::invalid_argument("HomologyCalculator::class_of: wrong vector length");
  for (const Int& x : apply_differential(differentials_, degree, cycle))
    if (x != 0) throw std::invalid_argument("HomologyCalculator::class_of: chain is not a cycle");
  IntVec z = reduced_.project(j, cycle);
  IntVec w = D.v_inv * z;
  for (std::size_t i = 0; i < D.r_out; ++i)
    if (w[i] != 0) throw std::invalid_argument("HomologyCalculator::class_of: chain is not a cycle");
  IntVec k(w.begin() + static_cast<std::ptrdiff_t>(D.r_out), w.end());
  IntVec y = D.has_u ? D.u_in * k : k;
  const std::size_t r_in = D.divisors.size();
  IntVec out(y.begin() + static_cast<std::ptrdiff_t>(r_in), y.end());
  if (field_ == Field::Z)
    for (std::size_t c = 0; c < r_in; ++c)
      if (D.divisors[c] > 1) {
        Int r;
        mpz_fdiv_r(r.get_mpz_t(), y[c].get_mpz_t(), D.divisors[c].get_mpz_t());
        out.push_back(r);
      }
  return out;
}

bool HomologyCalculator::is_boundary(std::size_t degree, const IntVec& cycle) const {
  for (const auto& c : class_of(degree, cycle))
    if (c != 0) return false;
  return true;
}

namespace {

struct CellIndex {
  // offset and rank per simplex, or npos when excluded.
  std::vector<std::vector<std::size_t>> offset;
};

constexpr std::size_t npos = static_cast<std::size_t>(-1);

bool excluded(const DeltaComplex& K, Cell c, Relative rel) {
  if (rel == Relative::Delta) return K.in_delta(c);
  if (rel == Relative::Boundary) return K.in_boundary(c);
  return false;
}

GradedComplex assemble_chain(const AbstractFunctor& A, const std::vector<std::vector<std::uint32_t>>& cells,
                             Relative rel) {
  const DeltaComplex& K = *A.complex;
  const std::size_t D = K.top_dimension() + 1;
  GradedComplex C;
  C.dims.assign(D, 0);
  C.blocks.resize(D);
  C.d.resize(D);
  CellIndex idx;
  idx.offset.resize(D);
  for (std::size_t k = 0; k < D; ++k) {
    idx.offset[k].assign(K.count(k), npos);
    if (k >= cells.size()) continue;
    for (std::uint32_t i : cells[k]) {
      Cell c{static_cast<std::uint32_t>(k), i};
      if (excluded(K, c, rel)) continue;
      std::size_t r = A.rank_of(c);
      idx.offset[k][i] = C.dims[k];
      C.blocks[k].push_back({c, C.dims[k], r});
      C.dims[k] += r;
    }
  }
  C.d[0] = SparseMatrix(0, C.dims[0]);
  for (std::size_t k = 1; k < D; ++k) {
    SparseMatrix M(C.dims[k - 1], C.dims[k]);
    for (const auto& b : C.blocks[k]) {
      const auto& fs = K.facets(b.cell);
      for (std::size_t slot = 0; slot < fs.size(); ++slot) {
        std::size_t off = idx.offset[k - 1][fs[slot].index];
        if (off == npos) continue;
        const Matrix& m = A.map(b.cell, slot);
        for (std::size_t c = 0; c < m.cols(); ++c)
          for (std::size_t r = 0; r < m.rows(); ++r)
            if (m(r, c) != 0) M.add(off + r, b.offset + c, fs[slot].sign * m(r, c));
      }
    }
    C.d[k] = std::move(M);
  }
  return C;
}

std::vector<std::vector<std::uint32_t>> all_cells(const DeltaComplex& K) {
  std::vector<std::vector<std::uint32_t>> cells(K.top_dimension() + 1);
  for (std::size_t k = 0; k < cells.size(); ++k)
    for (std::uint32_t i = 0; i < K.count(k); ++i) cells[k].push_back(i);
  return cells;
}

}  // namespace

GradedComplex chain_complex(const AbstractFunctor& A) {
  if (A.direction != AbstractFunctor::Direction::ToFaces)
    throw std::invalid_argument("chain_complex: functor must map simplices to their faces");
  return assemble_chain(A, all_cells(*A.complex), Relative::None);
}

GradedComplex chain_complex(const SheafFunctor& F, Relative rel) {
  return chain_complex_on(F, all_cells(F.complex()), rel);
}

GradedComplex chain_complex_on(const SheafFunctor& F, const std::vector<std::vector<std::uint32_t>>& cells,
                               Relative rel) {
  if (F.kind() != SheafKind::Closed) throw std::invalid_argument("chain_complex: sheaf must be of closed kind");
  return assemble_chain(F.functor(), cells, rel);
}

std::vector<HomologyGroup> star_homology(const SheafFunctor& F, Cell tau, Field field) {
  StarComplex S = closed_star(F.complex(), tau);
  return homology(chain_complex_on(F, S.members), field);
}

SubdividedSystem subdivide(const LocalSystem& L) {
  const DeltaComplex& K = L.complex();
  Subdivision sd = barycentric_subdivision(K);
  auto Kp = std::make_shared<DeltaComplex>(sd.complex);
  LocalSystem S(Kp, L.rank());
  const auto n = static_cast<std::uint32_t>(K.dimension());
  if (Kp->top_dimension() >= n && n >= 1) {
    for (std::uint32_t f = 0; f < Kp->count(n - 1); ++f) {
      Cell fc{n - 1, f};
      const auto& co = Kp->cofaces(fc);
      if (co.size() != 2 || Kp->in_boundary(fc)) continue;
      Cell a = sd.carrier[n][co[0].index], b = sd.carrier[n][co[1].index];
      if (a.index == b.index) continue;
      Matrix t = L.transition(a.index, b.index);
      if (!t.is_identity()) S.set_transition(co[0].index, co[1].index, t);
    }
  }
  return SubdividedSystem{std::move(sd), std::move(S)};
}

InvarianceReport barycentric_invariance_check(const LocalSystem& L, std::size_t p, Relative rel, bool dual) {
  InvarianceReport rep;
  const LocalSystem base = dual ? dual_system(L) : L;
  rep.before = homology(chain_complex(pushforward_sheaf(base, p, SheafKind::Closed, dual), rel));
  SubdividedSystem S = subdivide(base);
  rep.after = homology(chain_complex(pushforward_sheaf(S.system, p, SheafKind::Closed, dual), rel));
  std::ostringstream os;
  for (std::size_t k = 0; k < std::max(rep.before.size(), rep.after.size()); ++k) {
    HomologyGroup empty;
    const HomologyGroup& a = k < rep.before.size() ? rep.before[k] : empty;
    const HomologyGroup& b = k < rep.after.size() ? rep.after[k] : empty;
    if (!(a == b)) {
      rep.equal = false;
      os << "degree " << k << ": " << a.to_string() << " vs " << b.to_string() << "; ";
    }
  }
  rep.message = os.str();
  return rep;
}

GradedComplex double_complex_total(const SheafFunctor& F) {
  if (F.kind() != SheafKind::Closed) throw std::invalid_argument("double_complex_total: sheaf must be of closed kind");
  const DeltaComplex& K = F.complex();
  const AbstractFunctor& A = F.functor();
  const std::size_t D = K.top_dimension() + 1;
  // Columns: tau (dim j); entries: omega in the closed star of tau (dim i).
  std::vector<std::vector<StarComplex>> stars(D);
  for (std::size_t j = 0; j < D; ++j)
    for (std::uint32_t t = 0; t < K.count(j); ++t) stars[j].push_back(closed_star(K, Cell{static_cast<std::uint32_t>(j), t}));
  GradedComplex C;
  C.dims.assign(2 * D - 1, 0);
  C.blocks.resize(2 * D - 1);
  // offset[(j, t)][(i, w)]
  std::vector<std::vector<std::vector<std::vector<std::size_t>>>> offset(D);
  for (std::size_t j = 0; j < D; ++j) {
    offset[j].resize(K.count(j));
    for (std::uint32_t t = 0; t < K.count(j); ++t) {
      const StarComplex& S = stars[j][t];
      offset[j][t].resize(D);
      for (std::size_t i = 0; i < D; ++i) {
        offset[j][t][i].assign(K.count(i), npos);
        if (i >= S.members.size()) continue;
        for (std::uint32_t w : S.members[i]) {
          Cell wc{static_cast<std::uint32_t>(i), w};
          std::size_t r = A.rank_of(wc);
          offset[j][t][i][w] = C.dims[i + j];
          // The block records the star member; the column simplex is implicit in the order.
          C.blocks[i + j].push_back({wc, C.dims[i + j], r});
          C.dims[i + j] += r;
        }
      }
    }
  }
  C.d.resize(2 * D - 1);
  C.d[0] = SparseMatrix(0, C.dims[0]);
  for (std::size_t k = 1; k < 2 * D - 1; ++k) C.d[k] = SparseMatrix(C.dims[k - 1], C.dims[k]);
  for (std::size_t j = 0; j < D; ++j)
    for (std::uint32_t t = 0; t < K.count(j); ++t) {
      Cell tc{static_cast<std::uint32_t>(j), t};
      const StarComplex& S = stars[j][t];
      for (std::size_t i = 0; i < S.members.size(); ++i)
        for (std::uint32_t w : S.members[i]) {
          Cell wc{static_cast<std::uint32_t>(i), w};
          const std::size_t src = offset[j][t][i][w];
          const std::size_t r = A.rank_of(wc);
          const std::size_t deg = i + j;
          // Vertical: homology differential inside the star, sign (-1)^j.
          if (i >= 1) {
            const auto& fs = K.facets(wc);
            for (std::size_t slot = 0; slot < fs.size(); ++slot) {
              std::size_t dst = offset[j][t][i - 1][fs[slot].index];
              if (dst == npos) continue;
              const Matrix& m = A.map(wc, slot);
              int sign = fs[slot].sign * ((j % 2) ? -1 : 1);
              for (std::size_t c = 0; c < m.cols(); ++c)
                for (std::size_t rr = 0; rr < m.rows(); ++rr)
                  if (m(rr, c) != 0) C.d[deg].add(dst + rr, src + c, sign * m(rr, c));
            }
          }
          // Horizontal: inclusion of the star of tau into the star of each facet.
          if (j >= 1)
            for (const auto& inc : K.facets(tc)) {
              std::size_t dst = offset[j - 1][inc.index][i][w];
              for (std::size_t c = 0; c < r; ++c) C.d[deg].add(dst + c, src + c, Int(inc.sign));
            }
        }
    }
  return C;
}

IntVec chain_from_stalk_coefficients(const GradedComplex& C, const SheafFunctor& F,
                                     const std::vector<std::pair<Cell, IntVec>>& cells) {
  if (cells.empty()) return {};
  const std::size_t k = cells.front().first.dim;
  IntVec v(C.dims.at(k));
  for (const auto& [cell, coef] : cells) {
    if (cell.dim != k) throw std::invalid_argument("chain_from_stalk_coefficients: mixed dimensions");
    auto it = std::find_if(C.blocks[k].begin(), C.blocks[k].end(), [&](const auto& b) { return b.cell == cell; });
    if (it == C.blocks[k].end()) throw std::invalid_argument("chain_from_stalk_coefficients: simplex not in complex");
    auto x = F.value(cell).coordinates(coef);
    if (!x) throw std::invalid_argument("chain_from_stalk_coefficients: coefficient outside the sheaf lattice");
    for (std::size_t r = 0; r < x->size(); ++r) v[it->offset + r] += (*x)[r];
  }
  return v;
}

std::vector<std::pair<Cell, IntVec>> stalk_coefficients(const GradedComplex& C, const SheafFunctor& F,
                                                        std::size_t degree, const IntVec& chain) {
  std::vector<std::pair<Cell, IntVec>> out;
  for (const auto& b : C.blocks.at(degree)) {
    IntVec x(b.rank);
    bool nz = false;
    for (std::size_t r = 0; r < b.rank; ++r) {
      x[r] = chain[b.offset + r];
      if (x[r] != 0) nz = true;
    }
    if (!nz) continue;
    out.emplace_back(b.cell, F.value(b.cell).basis() * x);
  }
  return out;
}

bool is_free_basis(const GradedComplex& C, std::size_t degree, const std::vector<IntVec>& cycles) {
  // Cycle check.
  const bool has_out = C.cochain ? degree + 1 < C.dims.size() : degree >= 1;
  const std::size_t out_index = C.cochain ? degree : degree;
  for (const auto& z : cycles) {
    if (!has_out) break;
    IntVec b = apply_differential(C, out_index, z);
    for (const auto& e : b)
      if (e != 0) return false;
  }
  auto groups = homology(C);
  if (groups.at(degree).betti != cycles.size()) return false;
  // Incoming boundary map into this degree.
  Matrix B(C.dims[degree], 0);
  if (C.cochain && degree >= 1)
    B = C.d[degree - 1].to_dense();
  else if (!C.cochain && degree + 1 < C.dims.size())
    B = C.d[degree + 1].to_dense();
  Matrix Zc = Matrix::from_columns(cycles, C.dims[degree]);
  IntVec base = B.cols() ? elementary_divisors(B) : IntVec{};
  IntVec ext = elementary_divisors(B.hstack(Zc));
  if (ext.size() != base.size() + cycles.size()) return false;
  Int pb = 1, pe = 1;
  for (const auto& d : base) pb *= d;
  for (const auto& d : ext) pe *= d;
  return pb == pe;
}

}  // namespace tac
