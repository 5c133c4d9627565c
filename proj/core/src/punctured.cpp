#include "tac/punctured.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "tac/cech_cohomology.hpp"

namespace tac {

namespace {

using Mask = std::uint32_t;

std::vector<std::uint32_t> members(Mask m) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; m; ++i, m >>= 1)
    if (m & 1U) out.push_back(i);
  return out;
}

std::size_t popcount(Mask m) { return static_cast<std::size_t>(std::popcount(m)); }

void require_simplex(const LatticeSimplex& P, const char* who) {
  if (P.vertices.size() != P.dimension() + 1 || P.vertices.size() < 2 || P.vertices.size() > 30)
    throw std::invalid_argument(std::string(who) + ": expected a lattice simplex of positive dimension");
}

/// Vectors v_t - v_first for the later vertices t of the face.
Matrix tangent_basis(const LatticeSimplex& P, Mask face) {
  auto vs = members(face);
  std::vector<IntVec> cols;
  for (std::size_t k = 1; k < vs.size(); ++k) {
    IntVec d(P.ambient_dim);
    for (std::size_t i = 0; i < P.ambient_dim; ++i) d[i] = P.vertices[vs[k]][i] - P.vertices[vs[0]][i];
    cols.push_back(std::move(d));
  }
  return Matrix::from_columns(cols, P.ambient_dim);
}

/// T_small -> T_big in the tangent bases; small must be a face of big.
Matrix tangent_inclusion(const LatticeSimplex& P, Mask small, Mask big) {
  const std::size_t rs = popcount(small) ? popcount(small) - 1 : 0, rb = popcount(big) ? popcount(big) - 1 : 0;
  Matrix M(rb, rs);
  if (rs == 0) return M;
  Matrix Bb = tangent_basis(P, big), Bs = tangent_basis(P, small);
  for (std::size_t j = 0; j < rs; ++j) {
    auto x = solve_integer(Bb, Bs.column(j));
    if (!x) throw std::logic_error("tangent_inclusion: face not contained in the larger face");
    for (std::size_t i = 0; i < rb; ++i) M(i, j) = (*x)[i];
  }
  return M;
}

/// Faces with the given number of vertices, in lexicographic order of their
/// vertex lists.
std::vector<Mask> faces_of_size(std::size_t vertices, std::size_t size) {
  std::vector<Mask> out;
  for (Mask m = 0; m < (Mask{1} << vertices); ++m)
    if (popcount(m) == size) out.push_back(m);
  std::sort(out.begin(), out.end(), [](Mask x, Mask y) { return members(x) < members(y); });
  return out;
}

int removal_sign(Mask big, Mask small) {
  auto vs = members(big);
  for (std::size_t k = 0; k < vs.size(); ++k)
    if (!(small & (Mask{1} << vs[k]))) return k % 2 ? -1 : 1;
  throw std::logic_error("removal_sign: not a facet");
}

GradedComplex from_dense(std::vector<std::size_t> dims, const std::vector<Matrix>& d) {
  GradedComplex C;
  C.cochain = true;
  C.dims = std::move(dims);
  C.blocks.resize(C.dims.size());
  for (const Matrix& M : d) C.d.push_back(SparseMatrix::from_dense(M));
  return C;
}

/// Cochain complex over the faces of a simplex with `weight(face)` copies
/// per face and `block(facet, face)` on each facet incidence.
template <class Weight, class Block>
GradedComplex face_complex(std::size_t vertices, Weight weight, Block block) {
  std::vector<std::vector<Mask>> faces;
  std::vector<std::size_t> dims;
  std::vector<std::vector<std::size_t>> offsets;
  for (std::size_t s = 1; s <= vertices; ++s) {
    faces.push_back(faces_of_size(vertices, s));
    std::size_t total = 0;
    offsets.emplace_back();
    for (Mask f : faces.back()) {
      offsets.back().push_back(total);
      total += weight(f);
    }
    dims.push_back(total);
  }
  std::vector<Matrix> d;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    const std::size_t rows = k + 1 < dims.size() ? dims[k + 1] : 0;
    Matrix M(rows, dims[k]);
    if (k + 1 < dims.size())
      for (std::size_t bi = 0; bi < faces[k + 1].size(); ++bi) {
        const Mask big = faces[k + 1][bi];
        for (std::size_t si = 0; si < faces[k].size(); ++si) {
          const Mask small = faces[k][si];
          if ((small & big) != small) continue;
          Matrix B = block(small, big);
          const int sg = removal_sign(big, small);
          for (std::size_t i = 0; i < B.rows(); ++i)
            for (std::size_t j = 0; j < B.cols(); ++j)
              M(offsets[k + 1][bi] + i, offsets[k][si] + j) = sg * B(i, j);
        }
      }
    d.push_back(std::move(M));
  }
  return from_dense(std::move(dims), d);
}

}  // namespace

GradedComplex tangent_complex(const LatticeSimplex& cotriangle) {
  require_simplex(cotriangle, "tangent_complex");
  return face_complex(
      cotriangle.vertices.size(), [](Mask f) { return popcount(f) - 1; },
      [&](Mask s, Mask b) { return tangent_inclusion(cotriangle, s, b); });
}

GradedComplex simplex_cochains(const LatticeSimplex& triangle) {
  require_simplex(triangle, "simplex_cochains");
  return face_complex(
      triangle.vertices.size(), [](Mask) { return std::size_t{1}; }, [](Mask, Mask) { return Matrix{{1}}; });
}

GradedComplex dual_complex(const GradedComplex& C) {
  const std::size_t N = C.dims.size();
  std::vector<std::size_t> dims(N);
  std::vector<Matrix> d(N);
  for (std::size_t i = 0; i < N; ++i) dims[i] = C.dims[N - 1 - i];
  for (std::size_t i = 0; i < N; ++i)
    d[i] = i + 1 < N ? C.d[N - 2 - i].to_dense().transpose() : Matrix(0, dims[i]);
  return from_dense(std::move(dims), d);
}

GradedComplex truncate_degree(const GradedComplex& C, std::size_t degree) {
  const std::size_t N = C.dims.size();
  if (degree >= N) return C;
  std::vector<std::size_t> dims = C.dims;
  std::vector<Matrix> d;
  for (const auto& M : C.d) d.push_back(M.to_dense());
  dims[degree] = 0;
  d[degree] = Matrix(degree + 1 < N ? dims[degree + 1] : 0, 0);
  if (degree > 0) d[degree - 1] = Matrix(0, dims[degree - 1]);
  return from_dense(std::move(dims), d);
}

GradedComplex tensor_product(const GradedComplex& A, const GradedComplex& B) {
  const std::size_t NA = A.dims.size(), NB = B.dims.size();
  if (!NA || !NB) return from_dense({}, {});
  const std::size_t N = NA + NB - 1;
  std::vector<Matrix> dA, dB;
  for (const auto& M : A.d) dA.push_back(M.to_dense());
  for (const auto& M : B.d) dB.push_back(M.to_dense());
  // offset[i][j]: start of A^i (x) B^j inside degree i + j
  std::vector<std::vector<std::size_t>> offset(NA, std::vector<std::size_t>(NB));
  std::vector<std::size_t> dims(N, 0);
  for (std::size_t k = 0; k < N; ++k)
    for (std::size_t i = 0; i < NA; ++i) {
      if (k < i || k - i >= NB) continue;
      offset[i][k - i] = dims[k];
      dims[k] += A.dims[i] * B.dims[k - i];
    }
  std::vector<Matrix> d;
  for (std::size_t k = 0; k < N; ++k) {
    Matrix M(k + 1 < N ? dims[k + 1] : 0, dims[k]);
    for (std::size_t i = 0; i < NA && k + 1 < N; ++i) {
      if (k < i || k - i >= NB) continue;
      const std::size_t j = k - i;
      const std::size_t na = A.dims[i], nb = B.dims[j];
      for (std::size_t x = 0; x < na; ++x)
        for (std::size_t y = 0; y < nb; ++y) {
          const std::size_t col = offset[i][j] + x * nb + y;
          if (i + 1 < NA)
            for (std::size_t x2 = 0; x2 < A.dims[i + 1]; ++x2)
              if (dA[i](x2, x) != 0) M(offset[i + 1][j] + x2 * nb + y, col) += dA[i](x2, x);
          if (j + 1 < NB)
            for (std::size_t y2 = 0; y2 < B.dims[j + 1]; ++y2)
              if (dB[j](y2, y) != 0)
                M(offset[i][j + 1] + x * B.dims[j + 1] + y2, col) += (i % 2 ? -1 : 1) * dB[j](y2, y);
        }
    }
    d.push_back(std::move(M));
  }
  return from_dense(std::move(dims), d);
}

std::vector<std::size_t> rational_ranks(const GradedComplex& C) {
  std::vector<std::size_t> out;
  for (const auto& H : homology(C, Field::Q)) out.push_back(H.betti);
  return out;
}

CDRanks complex_CD_ranks(const LatticeSimplex& triangle, const LatticeSimplex& cotriangle) {
  GradedComplex C = tangent_complex(cotriangle), D = simplex_cochains(triangle);
  GradedComplex Cd = dual_complex(C), Dd = dual_complex(D);
  GradedComplex Db = truncate_degree(Dd, triangle.dimension());
  // The dual of C has a zero top degree (C^0 = 0); drop it so that degrees
  // of the tensor product line up with the cover.
  Cd.dims.pop_back();
  Cd.d.pop_back();
  Cd.blocks.pop_back();
  Cd.d.back() = SparseMatrix(0, Cd.dims.back());
  Db.dims.pop_back();
  Db.d.pop_back();
  Db.blocks.pop_back();
  Db.d.back() = SparseMatrix(0, Db.dims.back());
  CDRanks r;
  r.C = rational_ranks(C);
  r.D = rational_ranks(D);
  r.C_dual = rational_ranks(dual_complex(C));
  r.D_dual = rational_ranks(Dd);
  r.D_bar = rational_ranks(Db);
  r.tensor = rational_ranks(tensor_product(Db, Cd));
  return r;
}

std::vector<std::size_t> punctured_expected_ranks(std::size_t a, std::size_t b, std::size_t top) {
  std::vector<std::size_t> e(top + 1, 0);
  const std::size_t s = a + b;
  if (s >= 4) {
    e[0] = b;
    if (s - 3 <= top) e[s - 3] += a;
  } else if (s == 3) {
    e[0] = a + b;
  }
  return e;
}

PuncturedReport punctured_cech_S(const LatticeSimplex& triangle, const LatticeSimplex& cotriangle) {
  require_simplex(triangle, "punctured_cech_S");
  require_simplex(cotriangle, "punctured_cech_S");
  PuncturedReport rep;
  rep.a = triangle.dimension();
  rep.b = cotriangle.dimension();
  const Mask full_t = (Mask{1} << (rep.a + 1)) - 1, full_c = (Mask{1} << (rep.b + 1)) - 1;
  std::vector<std::pair<Mask, Mask>> cover;
  for (std::size_t j = 0; j <= rep.b; ++j) cover.emplace_back(full_t, full_c & ~(Mask{1} << j));
  for (std::size_t i = 0; i <= rep.a; ++i) cover.emplace_back(full_t & ~(Mask{1} << i), full_c);
  const std::size_t U = cover.size();

  auto meet = [&](Mask I) {
    Mask t = full_t, c = full_c;
    for (auto u : members(I)) {
      t &= cover[u].first;
      c &= cover[u].second;
    }
    return std::pair<Mask, Mask>{t, c};
  };
  auto rank_of = [&](Mask I) -> std::size_t {
    auto [t, c] = meet(I);
    return popcount(t) >= 2 && popcount(c) >= 2 ? popcount(c) - 1 : 0;
  };

  rep.cech = face_complex(U, rank_of, [&](Mask I, Mask J) {
    // Restriction from U_I to U_J: dual of T(meet J) in T(meet I).
    if (!rank_of(I) || !rank_of(J)) return Matrix(rank_of(J), rank_of(I));
    return tangent_inclusion(cotriangle, meet(J).second, meet(I).second).transpose();
  });
  rep.ranks = rational_ranks(rep.cech);
  rep.expected = punctured_expected_ranks(rep.a, rep.b, rep.cech.dims.size() - 1);
  rep.tensor = complex_CD_ranks(triangle, cotriangle).tensor;
  rep.matches = rep.ranks == rep.expected;
  return rep;
}

std::string PuncturedReport::to_string() const {
  std::ostringstream os;
  auto list = [&](const std::vector<std::size_t>& v) {
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
    os << ']';
  };
  os << "dims (" << a << "," << b << ") ranks ";
  list(ranks);
  os << " expected ";
  list(expected);
  os << " tensor ";
  list(tensor);
  os << (matches ? " ok" : " MISMATCH");
  return os.str();
}

ThreefoldVertexReport threefold_vertex_cech(const SympleModelSpec& spec) {
  const std::size_t a = spec.triangle.dimension(), b = spec.cotriangle.dimension();
  if (spec.trivial != 0 || a + b != 3 || spec.triangle.vertices.size() != a + 1 || spec.cotriangle.vertices.size() != b + 1)
    throw std::invalid_argument("threefold_vertex_cech: need a trivalent vertex of a three-dimensional model");
  auto ts = spec.transvections();
  if (ts.size() != 3) throw std::logic_error("threefold_vertex_cech: expected three legs");
  ThreefoldVertexReport r;
  r.a = a;
  r.T1 = ts[0].matrix;
  r.T2 = ts[1].matrix;
  const Matrix I = Matrix::identity(3);
  r.third_leg_is_transvection = inverse_unimodular(r.T1) * r.T2 == ts[2].matrix;

  std::vector<Matrix> K{kernel_lattice(r.T1 - I).basis(), kernel_lattice(r.T2 - I).basis(),
                        kernel_lattice(r.T2 - r.T1).basis()};
  std::vector<std::size_t> off{0};
  for (const auto& k : K) off.push_back(off.back() + k.cols());
  r.rank_C0 = off.back();
  r.rank_C1 = 9;
  r.rank_C2 = 6;
  // Restrictions to U12, U13, U23 are the identity in the common frame.
  Matrix d0(9, r.rank_C0);
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (std::size_t p = 0; p < 3; ++p)
    for (int s = 0; s < 2; ++s) {
      const int chart = pairs[p][s], sg = s ? 1 : -1;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < K[chart].cols(); ++j) d0(3 * p + i, off[chart] + j) += sg * K[chart](i, j);
    }
  Matrix d1 = I.hstack(-I).hstack(I).vstack(I.hstack(-r.T1).hstack(r.T2));
  if (!(d1 * d0).is_zero()) throw std::logic_error("threefold_vertex_cech: d1 d0 != 0");
  r.rank_d0 = rank_fraction_free(d0);
  r.kernel_d1 = 9 - rank_fraction_free(d1);
  r.kernel_reduced = 6 - rank_fraction_free((I - r.T1).hstack(r.T2 - I));
  r.h1 = r.kernel_d1 - r.rank_d0;
  return r;
}

bool PuncturedSweep::all_zero() const {
  return std::all_of(h1.begin(), h1.end(), [](std::size_t x) { return x == 0; });
}

PuncturedSweep punctured_h1_sweep(const AffineModel& m) {
  SheafFunctor F = rationalize(pushforward_sheaf(m.system, 1, SheafKind::Open));
  PuncturedSweep out;
  const DeltaComplex& K = *m.complex;
  for (std::uint32_t v = 0; v < K.count(0); ++v) {
    if (!K.in_delta(Cell{0, v})) continue;
    auto groups = homology(punctured_star_cech(F, v), Field::Q);
    out.vertices.push_back(v);
    out.h1.push_back(groups.size() > 1 ? groups[1].betti : 0);
  }
  return out;
}

AbstractFunctor quotient_sheaf_S(const AffineModel& m) {
  if (!m.spec) throw std::invalid_argument("quotient_sheaf_S: model has no symple specification");
  const LatticeSimplex& cot = m.spec->cotriangle;
  require_simplex(cot, "quotient_sheaf_S");
  const DeltaComplex& K = *m.complex;
  const std::size_t n = K.dimension();
  AbstractFunctor A;
  A.complex = m.complex;
  A.direction = AbstractFunctor::Direction::ToCofaces;
  std::vector<std::vector<Mask>> J(n + 1);
  A.rank.resize(n + 1);
  A.maps.resize(n + 1);
  for (std::uint32_t k = 0; k <= n; ++k) {
    for (std::uint32_t i = 0; i < K.count(k); ++i) {
      Cell c{k, i};
      Mask mask = 0;
      for (auto t : K.top_cofaces(c)) mask |= Mask{1} << m.chambers.at(t).second;
      J[k].push_back(mask);
      A.rank[k].push_back(K.in_delta(c) && popcount(mask) >= 2 ? popcount(mask) - 1 : 0);
    }
  }
  for (std::uint32_t k = 0; k <= n; ++k)
    for (std::uint32_t i = 0; i < K.count(k); ++i) {
      Cell c{k, i};
      std::vector<Matrix> maps;
      if (k > 0)
        for (const auto& inc : K.facets(c)) {
          const std::size_t rf = A.rank[k - 1][inc.index], rc = A.rank[k][i];
          if (rf == 0 || rc == 0)
            maps.emplace_back(rc, rf);
          else
            maps.push_back(tangent_inclusion(cot, J[k][i], J[k - 1][inc.index]).transpose());
        }
      A.maps[k].push_back(std::move(maps));
    }
  A.check_composition();
  return A;
}

}  // namespace tac
