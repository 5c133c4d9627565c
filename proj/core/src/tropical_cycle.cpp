#include "tac/tropical_cycle.hpp"

#include <algorithm>
#include <stdexcept>

namespace tac {

IntVec cycle_chain(const GradedComplex& C, const SheafFunctor& F, const TropicalCycle& z) {
  if (z.cells.empty()) return IntVec(C.dims.at(z.q));
  return chain_from_stalk_coefficients(C, F, z.cells);
}

bool is_cycle(const GradedComplex& C, const SheafFunctor& F, const TropicalCycle& z) {
  if (z.q == 0) return true;
  IntVec b = apply_differential(C, z.q, cycle_chain(C, F, z));
  return std::all_of(b.begin(), b.end(), [](const Int& x) { return x == 0; });
}

std::optional<TropicalCycle> cycle_on_support(const SheafFunctor& F, std::size_t q, const std::vector<Cell>& support,
                                              Cell fixed, const IntVec& fixed_value, Relative rel) {
  GradedComplex C = chain_complex(F, rel);
  if (q == 0 || q >= C.dims.size()) throw std::invalid_argument("cycle_on_support: degree out of range");
  // Unknowns: lattice coordinates on the support blocks.
  std::vector<const GradedComplex::Block*> blocks;
  for (Cell c : support) {
    auto it = std::find_if(C.blocks[q].begin(), C.blocks[q].end(), [&](const auto& b) { return b.cell == c; });
    if (it == C.blocks[q].end()) throw std::invalid_argument("cycle_on_support: simplex not in the complex");
    blocks.push_back(&*it);
  }
  std::size_t unknowns = 0;
  for (auto* b : blocks) unknowns += b->rank;
  Matrix D = C.d[q].to_dense();
  auto fixed_coords = F.value(fixed).coordinates(fixed_value);
  if (!fixed_coords) throw std::invalid_argument("cycle_on_support: fixed value outside the lattice");
  Matrix A(D.rows() + fixed_coords->size(), unknowns);
  IntVec rhs(A.rows());
  std::size_t col = 0;
  for (auto* b : blocks) {
    for (std::size_t r = 0; r < b->rank; ++r) {
      for (std::size_t i = 0; i < D.rows(); ++i) A(i, col + r) = D(i, b->offset + r);
      if (b->cell == fixed) A(D.rows() + r, col + r) = 1;
    }
    col += b->rank;
  }
  for (std::size_t r = 0; r < fixed_coords->size(); ++r) rhs[D.rows() + r] = (*fixed_coords)[r];
  auto x = solve_integer(A, rhs);
  if (!x) return std::nullopt;
  TropicalCycle z;
  z.p = F.degree();
  z.q = q;
  col = 0;
  for (auto* b : blocks) {
    IntVec coords(b->rank);
    bool nz = false;
    for (std::size_t r = 0; r < b->rank; ++r) {
      coords[r] = (*x)[col + r];
      nz = nz || coords[r] != 0;
    }
    col += b->rank;
    if (nz) z.cells.emplace_back(b->cell, F.value(b->cell).basis() * coords);
  }
  return z;
}

std::optional<TropicalCycle> primitive_cycle_on_support(const SheafFunctor& F, const GradedComplex& C,
                                                        const HomologyCalculator& H, std::size_t q,
                                                        const std::vector<Cell>& support) {
  if (q == 0 || q >= C.dims.size()) throw std::invalid_argument("primitive_cycle_on_support: degree out of range");
  std::vector<const GradedComplex::Block*> blocks;
  for (Cell c : support) {
    auto it = std::find_if(C.blocks[q].begin(), C.blocks[q].end(), [&](const auto& b) { return b.cell == c; });
    if (it == C.blocks[q].end()) throw std::invalid_argument("primitive_cycle_on_support: simplex not in the complex");
    blocks.push_back(&*it);
  }
  std::size_t unknowns = 0;
  for (auto* b : blocks) unknowns += b->rank;
  Matrix D = C.d[q].to_dense();
  Matrix A(D.rows(), unknowns);
  std::size_t col = 0;
  for (auto* b : blocks) {
    for (std::size_t r = 0; r < b->rank; ++r)
      for (std::size_t i = 0; i < D.rows(); ++i) A(i, col + r) = D(i, b->offset + r);
    col += b->rank;
  }
  Lattice ker = kernel_lattice(A);
  const Matrix& Kb = ker.basis();
  auto full_chain = [&](const IntVec& x) {
    IntVec chain(C.dims[q]);
    std::size_t c = 0;
    for (auto* b : blocks) {
      for (std::size_t r = 0; r < b->rank; ++r) chain[b->offset + r] = x[c + r];
      c += b->rank;
    }
    return chain;
  };
  const std::size_t betti = H.group(q).betti;
  Matrix img(betti, Kb.cols());
  for (std::size_t j = 0; j < Kb.cols(); ++j) {
    IntVec cls = H.class_of(q, full_chain(Kb.column(j)));
    for (std::size_t r = 0; r < betti; ++r) img(r, j) = cls[r];
  }
  Lattice image = Lattice::span(img);
  if (image.rank() != 1) return std::nullopt;
  auto t = solve_integer(img, image.basis().column(0));
  if (!t) return std::nullopt;
  TropicalCycle z;
  z.p = F.degree();
  z.q = q;
  z.cells = stalk_coefficients(C, F, q, full_chain(Kb * *t));
  return z;
}

std::vector<Cell> path_edges(const DeltaComplex& K, const std::vector<std::uint32_t>& vertices) {
  std::vector<Cell> out;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    Simplex e{std::min(vertices[i], vertices[i + 1]), std::max(vertices[i], vertices[i + 1])};
    auto idx = K.find(e);
    if (!idx) throw std::invalid_argument("path_edges: consecutive vertices are not adjacent");
    out.push_back(Cell{1, *idx});
  }
  return out;
}

}  // namespace tac
