#include "tac/cech_cohomology.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tac {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

void add_block(SparseMatrix& M, std::size_t row_off, std::size_t col_off, const Matrix& m, int sign) {
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (m(r, c) != 0) M.add(row_off + r, col_off + c, sign * m(r, c));
}

void finish_cochain(GradedComplex& C) {
  C.cochain = true;
  const std::size_t N = C.dims.size();
  C.d.resize(N);
  if (N) C.d[N - 1] = SparseMatrix(0, C.dims[N - 1]);
}

// Closed-kind restriction from the value at a simplex to the value at one of its faces.
Matrix restriction(const SheafFunctor& F, Cell from, Cell to) {
  if (from == to) return Matrix::identity(F.value(from).rank());
  const Lattice& A = F.value(from);
  const Lattice& B = F.value(to);
  return B.coordinates(F.frame_change(from, to) * A.basis());
}

}  // namespace

namespace {

// keep: 0 all simplices, 1 interior only, 2 boundary only.
GradedComplex star_cech(const SheafFunctor& F, int keep) {
  if (F.kind() != SheafKind::Open) throw std::invalid_argument("vertex_star_cech: sheaf must be of open kind");
  const DeltaComplex& K = F.complex();
  const AbstractFunctor& A = F.functor();
  const std::size_t D = K.top_dimension() + 1;
  GradedComplex C;
  C.dims.assign(D, 0);
  C.blocks.resize(D);
  std::vector<std::vector<std::size_t>> offset(D);
  for (std::size_t k = 0; k < D; ++k) {
    offset[k].assign(K.count(k), npos);
    for (std::uint32_t i = 0; i < K.count(k); ++i) {
      Cell c{static_cast<std::uint32_t>(k), i};
      if ((keep == 1 && K.in_boundary(c)) || (keep == 2 && !K.in_boundary(c))) continue;
      offset[k][i] = C.dims[k];
      C.blocks[k].push_back({c, C.dims[k], A.rank_of(c)});
      C.dims[k] += A.rank_of(c);
    }
  }
  finish_cochain(C);
  for (std::size_t k = 0; k + 1 < D; ++k) {
    SparseMatrix M(C.dims[k + 1], C.dims[k]);
    for (const auto& b : C.blocks[k + 1]) {
      const auto& fs = K.facets(b.cell);
      for (std::size_t slot = 0; slot < fs.size(); ++slot) {
        std::size_t off = offset[k][fs[slot].index];
        if (off == npos) continue;
        add_block(M, b.offset, off, A.map(b.cell, slot), fs[slot].sign);
      }
    }
    C.d[k] = std::move(M);
  }
  return C;
}

}  // namespace

GradedComplex vertex_star_cech(const SheafFunctor& F, Relative rel) {
  if (rel == Relative::Delta) throw std::invalid_argument("vertex_star_cech: only boundary-relative mode is supported");
  return star_cech(F, rel == Relative::Boundary ? 1 : 0);
}

GradedComplex boundary_star_cech(const SheafFunctor& F) { return star_cech(F, 2); }

GradedComplex punctured_star_cech(const SheafFunctor& F, std::uint32_t vertex) {
  if (F.kind() != SheafKind::Open) throw std::invalid_argument("punctured_star_cech: sheaf must be of open kind");
  const DeltaComplex& K = F.complex();
  const AbstractFunctor& A = F.functor();
  if (vertex >= K.count(0)) throw std::invalid_argument("punctured_star_cech: vertex out of range");
  auto co = K.cofaces_all(Cell{0, vertex});
  const std::size_t D = co.size();  // link dimensions 0 .. D-2
  if (D < 2) throw std::invalid_argument("punctured_star_cech: isolated vertex");
  GradedComplex C;
  C.dims.assign(D - 1, 0);
  C.blocks.resize(D - 1);
  // Link simplex of dimension k <-> join of dimension k+1; blocks keep the join.
  std::vector<std::map<std::uint32_t, std::size_t>> offset(D);
  for (std::size_t k = 1; k < D; ++k)
    for (std::uint32_t j : co[k]) {
      Cell c{static_cast<std::uint32_t>(k), j};
      offset[k][j] = C.dims[k - 1];
      C.blocks[k - 1].push_back({c, C.dims[k - 1], A.rank_of(c)});
      C.dims[k - 1] += A.rank_of(c);
    }
  finish_cochain(C);
  for (std::size_t k = 2; k < D; ++k) {
    SparseMatrix M(C.dims[k - 1], C.dims[k - 2]);
    for (const auto& b : C.blocks[k - 1]) {
      const Simplex& join = K.simplex(b.cell);
      Simplex link;
      for (auto v : join)
        if (v != vertex) link.push_back(v);
      const auto& fs = K.facets(b.cell);
      for (std::size_t slot = 0; slot < fs.size(); ++slot) {
        auto it = offset[k - 1].find(fs[slot].index);
        if (it == offset[k - 1].end()) continue;  // the facet opposite to p
        const Simplex& fj = K.simplex(Cell{static_cast<std::uint32_t>(k - 1), fs[slot].index});
        Simplex flink;
        for (auto v : fj)
          if (v != vertex) flink.push_back(v);
        add_block(M, b.offset, it->second, A.map(b.cell, slot), boundary_sign(link, flink));
      }
    }
    C.d[k - 2] = std::move(M);
  }
  return C;
}

namespace {

enum class Part { Interior, Boundary };

struct RawCech {
  std::vector<std::vector<std::vector<std::uint32_t>>> sets;  // [degree][block]
  std::vector<std::vector<Cell>> cells;
  std::vector<std::map<std::vector<std::uint32_t>, std::size_t>> lookup;
};

RawCech enumerate_cover(const SheafFunctor& F, Part part) {
  const DeltaComplex& K = F.complex();
  const std::size_t n = K.dimension();
  if (K.top_dimension() != n) throw std::invalid_argument("maxcell_cech: complex is not pure of the manifold dimension");
  RawCech R;
  for (std::uint32_t v = 0; v < K.count(0); ++v) {
    if (part == Part::Boundary && !K.in_boundary(Cell{0, v})) continue;
    auto tops = K.top_cofaces(Cell{0, v});
    if (tops.size() > 24) throw std::invalid_argument("maxcell_cech: vertex star too large for the max-cell cover");
    const std::uint64_t subsets = std::uint64_t{1} << tops.size();
    for (std::uint64_t mask = 1; mask < subsets; ++mask) {
      std::vector<std::uint32_t> I;
      Simplex meet;
      bool first = true;
      for (std::size_t t = 0; t < tops.size(); ++t) {
        if (!(mask >> t & 1)) continue;
        I.push_back(tops[t]);
        const Simplex& s = K.simplex(Cell{static_cast<std::uint32_t>(n), tops[t]});
        if (first) {
          meet = s;
          first = false;
        } else {
          Simplex m;
          std::set_intersection(meet.begin(), meet.end(), s.begin(), s.end(), std::back_inserter(m));
          meet = std::move(m);
        }
      }
      Simplex key = meet;
      if (part == Part::Boundary) {
        key.clear();
        for (auto u : meet)
          if (K.in_boundary(Cell{0, u})) key.push_back(u);
      }
      if (key.empty() || key.front() != v) continue;  // counted at the smallest vertex
      auto idx = K.find(key);
      Cell c{static_cast<std::uint32_t>(key.size() - 1), idx ? *idx : 0};
      if (!idx || (part == Part::Boundary && !K.in_boundary(c)))
        throw std::invalid_argument("maxcell_cech: a simplex meets the boundary in more than one face");
      const std::size_t deg = I.size() - 1;
      if (R.sets.size() <= deg) {
        R.sets.resize(deg + 1);
        R.cells.resize(deg + 1);
        R.lookup.resize(deg + 1);
      }
      R.lookup[deg][I] = R.sets[deg].size();
      R.sets[deg].push_back(std::move(I));
      R.cells[deg].push_back(c);
    }
  }
  return R;
}

MaxCellCech assemble(const SheafFunctor& F, const RawCech& R) {
  MaxCellCech M;
  const std::size_t N = R.sets.size();
  GradedComplex& C = M.complex;
  C.dims.assign(N, 0);
  C.blocks.resize(N);
  for (std::size_t k = 0; k < N; ++k)
    for (std::size_t b = 0; b < R.sets[k].size(); ++b) {
      std::size_t r = F.value(R.cells[k][b]).rank();
      C.blocks[k].push_back({R.cells[k][b], C.dims[k], r});
      C.dims[k] += r;
    }
  finish_cochain(C);
  for (std::size_t k = 0; k + 1 < N; ++k) {
    SparseMatrix D(C.dims[k + 1], C.dims[k]);
    for (std::size_t b = 0; b < R.sets[k + 1].size(); ++b) {
      const auto& J = R.sets[k + 1][b];
      for (std::size_t i = 0; i < J.size(); ++i) {
        std::vector<std::uint32_t> I(J);
        I.erase(I.begin() + static_cast<std::ptrdiff_t>(i));
        auto it = R.lookup[k].find(I);
        if (it == R.lookup[k].end()) throw std::logic_error("maxcell_cech: missing face of an index set");
        const auto& src = C.blocks[k][it->second];
        const auto& dst = C.blocks[k + 1][b];
        add_block(D, dst.offset, src.offset, restriction(F, src.cell, dst.cell), (i % 2) ? -1 : 1);
      }
    }
    C.d[k] = std::move(D);
  }
  M.index_sets = R.sets;
  M.cells = R.cells;
  M.boundary_part.resize(N);
  for (std::size_t k = 0; k < N; ++k) M.boundary_part[k].assign(R.sets[k].size(), 0);
  return M;
}

}  // namespace

bool boundary_meets_in_faces(const DeltaComplex& K) {
  for (std::uint32_t d = 0; d <= K.top_dimension(); ++d)
    for (std::uint32_t i = 0; i < K.count(d); ++i) {
      Simplex key;
      for (auto u : K.simplex(Cell{d, i}))
        if (K.in_boundary(Cell{0, u})) key.push_back(u);
      if (key.empty()) continue;
      auto idx = K.find(key);
      if (!idx || !K.in_boundary(Cell{static_cast<std::uint32_t>(key.size() - 1), *idx})) return false;
    }
  return true;
}

MaxCellCech maxcell_cech(const SheafFunctor& F) {
  if (F.kind() != SheafKind::Closed) throw std::invalid_argument("maxcell_cech: sheaf must be of closed kind");
  return assemble(F, enumerate_cover(F, Part::Interior));
}

MaxCellCech maxcell_boundary_cech(const SheafFunctor& F) {
  if (F.kind() != SheafKind::Closed) throw std::invalid_argument("maxcell_cech: sheaf must be of closed kind");
  MaxCellCech M = assemble(F, enumerate_cover(F, Part::Boundary));
  for (auto& v : M.boundary_part) std::fill(v.begin(), v.end(), 1);
  return M;
}

MaxCellCech maxcell_relative_cech(const SheafFunctor& F) {
  MaxCellCech A = maxcell_cech(F);
  MaxCellCech Bd = maxcell_boundary_cech(F);
  const std::size_t NA = A.complex.dims.size();
  const std::size_t NB = Bd.complex.dims.size();
  const std::size_t N = std::max(NA, NB + 1);
  MaxCellCech M;
  GradedComplex& C = M.complex;
  C.dims.assign(N, 0);
  C.blocks.resize(N);
  M.index_sets.resize(N);
  M.cells.resize(N);
  M.boundary_part.resize(N);
  // Offsets of the interior part (degree j) and the boundary part (degree j-1) inside degree j.
  std::vector<std::size_t> bshift(N, 0);
  for (std::size_t j = 0; j < N; ++j) {
    if (j < NA)
      for (std::size_t b = 0; b < A.complex.blocks[j].size(); ++b) {
        auto blk = A.complex.blocks[j][b];
        C.blocks[j].push_back(blk);
        M.index_sets[j].push_back(A.index_sets[j][b]);
        M.cells[j].push_back(A.cells[j][b]);
        M.boundary_part[j].push_back(0);
      }
    bshift[j] = j < NA ? A.complex.dims[j] : 0;
    C.dims[j] = bshift[j];
    if (j >= 1 && j - 1 < NB)
      for (std::size_t b = 0; b < Bd.complex.blocks[j - 1].size(); ++b) {
        auto blk = Bd.complex.blocks[j - 1][b];
        blk.offset += bshift[j];
        C.blocks[j].push_back(blk);
        M.index_sets[j].push_back(Bd.index_sets[j - 1][b]);
        M.cells[j].push_back(Bd.cells[j - 1][b]);
        M.boundary_part[j].push_back(1);
      }
    if (j >= 1 && j - 1 < NB) C.dims[j] += Bd.complex.dims[j - 1];
  }
  finish_cochain(C);
  std::vector<std::map<std::vector<std::uint32_t>, std::size_t>> blookup(NB);
  for (std::size_t k = 0; k < NB; ++k)
    for (std::size_t b = 0; b < Bd.index_sets[k].size(); ++b) blookup[k][Bd.index_sets[k][b]] = b;
  for (std::size_t j = 0; j + 1 < N; ++j) {
    SparseMatrix D(C.dims[j + 1], C.dims[j]);
    // (a, b) -> (delta a, f a - delta b)
    if (j + 1 < NA)
      for (std::size_t c = 0; c < A.complex.dims[j]; ++c)
        for (const auto& [r, v] : A.complex.d[j].columns[c]) D.add(r, c, v);
    if (j < NA && j < NB)
      for (std::size_t b = 0; b < A.index_sets[j].size(); ++b) {
        auto it = blookup[j].find(A.index_sets[j][b]);
        if (it == blookup[j].end()) continue;
        const auto& src = A.complex.blocks[j][b];
        const auto& dst = Bd.complex.blocks[j][it->second];
        add_block(D, bshift[j + 1] + dst.offset, src.offset, restriction(F, src.cell, dst.cell), 1);
      }
    if (j >= 1 && j < NB)
      for (std::size_t c = 0; c < Bd.complex.dims[j - 1]; ++c)
        for (const auto& [r, v] : Bd.complex.d[j - 1].columns[c]) D.add(bshift[j + 1] + r, bshift[j] + c, -v);
    C.d[j] = std::move(D);
  }
  return M;
}



namespace {

std::size_t codim(const DeltaComplex& K, Cell c) { return K.dimension() - c.dim; }

// Graded piece of the filtration by codimension: blocks whose cell has the
// given codimension, keeping only differential entries between them.
GradedComplex graded_piece(const MaxCellCech& M, const DeltaComplex& K, std::size_t k) {
  const GradedComplex& C = M.complex;
  const std::size_t N = C.dims.size();
  GradedComplex G;
  G.dims.assign(N, 0);
  G.blocks.resize(N);
  std::vector<std::vector<std::size_t>> newpos(N);
  for (std::size_t j = 0; j < N; ++j) {
    newpos[j].assign(C.dims[j], npos);
    for (const auto& b : C.blocks[j]) {
      if (codim(K, b.cell) != k) continue;
      for (std::size_t r = 0; r < b.rank; ++r) newpos[j][b.offset + r] = G.dims[j] + r;
      G.blocks[j].push_back({b.cell, G.dims[j], b.rank});
      G.dims[j] += b.rank;
    }
  }
  finish_cochain(G);
  for (std::size_t j = 0; j + 1 < N; ++j) {
    SparseMatrix D(G.dims[j + 1], G.dims[j]);
    for (std::size_t c = 0; c < C.dims[j]; ++c) {
      if (newpos[j][c] == npos) continue;
      for (const auto& [r, v] : C.d[j].columns[c])
        if (newpos[j + 1][r] != npos) D.add(newpos[j + 1][r], newpos[j][c], v);
    }
    G.d[j] = std::move(D);
  }
  return G;
}

}  // namespace

GradedConcentrationReport graded_concentration_check(const SheafFunctor& F, MaxCellVariant variant) {
  const DeltaComplex& K = F.complex();
  const std::size_t n = K.dimension();
  MaxCellCech M = variant == MaxCellVariant::Absolute   ? maxcell_cech(F)
                  : variant == MaxCellVariant::Boundary ? maxcell_boundary_cech(F)
                                                        : maxcell_relative_cech(F);
  GradedConcentrationReport rep;
  rep.expected_diagonal.assign(n + 1, 0);
  for (std::size_t d = 0; d <= n; ++d)
    for (std::uint32_t i = 0; i < K.count(d); ++i) {
      Cell c{static_cast<std::uint32_t>(d), i};
      const bool bd = K.in_boundary(c);
      if ((variant == MaxCellVariant::Absolute && bd) || (variant == MaxCellVariant::Boundary && !bd)) continue;
      rep.expected_diagonal[n - d] += F.value(c).rank();
    }
  // The boundary cover sees a cell of codimension k in B as a cell of
  // codimension k - 1 in the boundary, which is where its piece concentrates.
  const std::size_t shift = variant == MaxCellVariant::Boundary ? 1 : 0;
  std::ostringstream os;
  for (std::size_t k = 0; k <= n; ++k) {
    auto H = homology(graded_piece(M, K, k));
    rep.ranks.emplace_back();
    const bool has_diagonal = k >= shift;
    for (std::size_t i = 0; i < H.size(); ++i) {
      rep.ranks[k].push_back(H[i].betti);
      const bool ok = has_diagonal && i == k - shift
                          ? (H[i].betti == rep.expected_diagonal[k] && H[i].torsion.empty())
                          : (H[i].betti == 0 && H[i].torsion.empty());
      if (!ok) {
        rep.passed = false;
        os << "Gr^" << k << " " << H[i].to_string() << "; ";
      }
    }
    if (rep.expected_diagonal[k] != 0 && (!has_diagonal || H.size() <= k - shift)) {
      rep.passed = false;
      os << "Gr^" << k << " missing its diagonal degree; ";
    }
  }
  rep.message = os.str();
  return rep;
}

D1Report d1_equals_boundary_check(const SheafFunctor& F) {
  const DeltaComplex& K = F.complex();
  const std::size_t n = K.dimension();
  MaxCellCech M = maxcell_cech(F);
  const GradedComplex& C = M.complex;
  D1Report rep;
  std::ostringstream os;

  // Local scalar complexes C_tau(Z): index sets whose meet is tau.
  struct Local {
    std::vector<std::pair<std::size_t, std::size_t>> members;  // (degree, block)
    GradedComplex complex;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> pos;  // (degree, block) -> coordinate
  };
  std::map<Cell, Local> locals;
  for (std::size_t j = 0; j < C.dims.size(); ++j)
    for (std::size_t b = 0; b < C.blocks[j].size(); ++b) locals[C.blocks[j][b].cell].members.emplace_back(j, b);
  for (auto& [cell, L] : locals) {
    const std::size_t N = C.dims.size();
    L.complex.dims.assign(N, 0);
    L.complex.blocks.resize(N);
    for (auto [j, b] : L.members) {
      L.pos[{j, b}] = L.complex.dims[j];
      L.complex.blocks[j].push_back({cell, L.complex.dims[j], 1});
      ++L.complex.dims[j];
    }
    finish_cochain(L.complex);
    for (std::size_t j = 0; j + 1 < N; ++j) L.complex.d[j] = SparseMatrix(L.complex.dims[j + 1], L.complex.dims[j]);
    for (auto [j, b] : L.members) {
      if (j == 0) continue;
      const auto& J = M.index_sets[j][b];
      for (std::size_t i = 0; i < J.size(); ++i) {
        std::vector<std::uint32_t> I(J);
        I.erase(I.begin() + static_cast<std::ptrdiff_t>(i));
        auto it = std::find(M.index_sets[j - 1].begin(), M.index_sets[j - 1].end(), I);
        const std::size_t ib = static_cast<std::size_t>(it - M.index_sets[j - 1].begin());
        if (!(M.cells[j - 1][ib] == cell)) continue;
        L.complex.d[j - 1].add(L.pos[{j, b}], L.pos[{j - 1, ib}], Int((i % 2) ? -1 : 1));
      }
    }
  }
  std::map<Cell, HomologyCalculator> calcs;
  std::map<Cell, IntVec> generator;
  for (auto& [cell, L] : locals) {
    if (K.in_boundary(cell)) continue;
    auto [it, ok] = calcs.emplace(cell, HomologyCalculator(L.complex));
    (void)ok;
    const std::size_t k = n - cell.dim;
    for (std::size_t i = 0; i < L.complex.dims.size(); ++i) {
      const auto& H = it->second.group(i);
      const bool expect = i == k;
      if (H.betti != (expect ? 1u : 0u) || !H.torsion.empty()) {
        rep.passed = false;
        os << "local complex of cell (" << cell.dim << "," << cell.index << ") has " << H.to_string() << "; ";
      }
    }
    if (it->second.group(k).betti == 1) generator[cell] = it->second.group(k).cycle_basis[0];
  }
  if (!rep.passed) {
    rep.message = os.str();
    return rep;
  }

  // Components c(omega, tau) of d1 on generators.
  struct Edge {
    Cell tau, omega;
    int c;
    int eps;
  };
  std::vector<Edge> edges;
  for (const auto& [tau, z] : generator) {
    const std::size_t k = n - tau.dim;
    if (tau.dim == 0) continue;
    const Local& L = locals.at(tau);
    const std::size_t rt = F.value(tau).rank();
    const auto& fs = K.facets(tau);
    for (std::size_t slot = 0; slot < fs.size(); ++slot) {
      Cell omega{tau.dim - 1, fs[slot].index};
      if (K.in_boundary(omega)) continue;
      const Matrix& R = F.functor().map(tau, slot);
      const Local& Lw = locals.at(omega);
      const HomologyCalculator& Hw = calcs.at(omega);
      int c = 0;
      bool consistent = true;
      for (std::size_t e = 0; e < rt; ++e) {
        IntVec v(C.dims[k]);
        for (std::size_t m = 0; m < L.members.size(); ++m) {
          auto [j, b] = L.members[m];
          if (j != k || z[L.pos.at({j, b})] == 0) continue;
          v[C.blocks[j][b].offset + e] += z[L.pos.at({j, b})];
        }
        IntVec w = apply_differential(C, k, v);
        const std::size_t rw = F.value(omega).rank();
        IntVec x(rw);
        for (std::size_t f = 0; f < rw; ++f) {
          IntVec y(Lw.complex.dims[k + 1]);
          for (auto [j, b] : Lw.members)
            if (j == k + 1) y[Lw.pos.at({j, b})] = w[C.blocks[j][b].offset + f];
          x[f] = Hw.class_of(k + 1, y).at(0);
        }
        IntVec expected = R.column(e);
        for (std::size_t f = 0; f < rw; ++f) {
          if (expected[f] == 0 && x[f] == 0) continue;
          int ratio = x[f] == expected[f] ? 1 : (x[f] == -expected[f] ? -1 : 0);
          if (ratio == 0 || (c != 0 && ratio != c)) consistent = false;
          c = ratio;
        }
      }
      ++rep.compared;
      if (!consistent || (c == 0 && !R.is_zero())) {
        rep.passed = false;
        os << "d1 component (" << tau.dim << "," << tau.index << ")->(" << omega.dim << "," << omega.index
           << ") is not a signed restriction; ";
        continue;
      }
      if (c != 0) edges.push_back({tau, omega, c, fs[slot].sign});
    }
  }
  // Solve c = s_omega * s_tau * eps for signs s.
  std::map<Cell, std::vector<std::pair<Cell, int>>> adj;
  for (const auto& e : edges) {
    int rel = e.c * e.eps;
    adj[e.tau].emplace_back(e.omega, rel);
    adj[e.omega].emplace_back(e.tau, rel);
  }
  std::map<Cell, int> sign;
  for (const auto& [start, nb] : adj) {
    (void)nb;
    if (sign.count(start)) continue;
    sign[start] = 1;
    std::deque<Cell> q{start};
    while (!q.empty()) {
      Cell x = q.front();
      q.pop_front();
      for (const auto& [y, rel] : adj[x]) {
        int want = sign[x] * rel;
        auto it = sign.find(y);
        if (it == sign.end()) {
          sign[y] = want;
          q.push_back(y);
        } else if (it->second != want) {
          rep.passed = false;
          os << "no consistent generator signs near cell (" << y.dim << "," << y.index << "); ";
        }
      }
    }
  }
  rep.message = os.str();
  return rep;
}

DualityReport verify_pl_duality(const LocalSystem& L, std::size_t p, Field field) {
  DualityReport rep;
  SheafFunctor closed = pushforward_sheaf(L, p, SheafKind::Closed);
  SheafFunctor open = pushforward_sheaf(L, p, SheafKind::Open);
  const std::size_t n = L.complex().dimension();
  rep.homology_rel = homology(chain_complex(closed, Relative::Boundary), field);
  rep.homology_abs = homology(chain_complex(closed, Relative::None), field);
  rep.cohomology_abs = homology(vertex_star_cech(open, Relative::None), field);
  rep.cohomology_rel = homology(vertex_star_cech(open, Relative::Boundary), field);
  std::ostringstream os;
  auto cmp = [&](const std::vector<HomologyGroup>& h, const std::vector<HomologyGroup>& c, const char* what) {
    for (std::size_t k = 0; k <= n; ++k) {
      HomologyGroup zero;
      const HomologyGroup& a = k < h.size() ? h[k] : zero;
      const HomologyGroup& b = n - k < c.size() ? c[n - k] : zero;
      if (!(a == b)) {
        rep.passed = false;
        os << what << " k=" << k << ": " << a.to_string() << " vs " << b.to_string() << "; ";
      }
    }
  };
  cmp(rep.homology_rel, rep.cohomology_abs, "H_k(B,dB) vs H^{n-k}(B)");
  cmp(rep.homology_abs, rep.cohomology_rel, "H_k(B) vs H^{n-k}(B,dB)");
  rep.message = os.str();
  return rep;
}

}  // namespace tac
