#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tac/exact_algebra.hpp"

namespace tac {

/// Sparse column: (row index, nonzero value) pairs sorted by row.
using SparseColumn = std::vector<std::pair<std::uint32_t, Int>>;

struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<SparseColumn> columns;

  SparseMatrix() = default;
  SparseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), columns(c) {}
  static SparseMatrix from_dense(const Matrix& M);
  Matrix to_dense() const;
  void add(std::size_t row, std::size_t col, const Int& value);  // accumulates
};

/// Result of removing unit-pivot pairs from a chain complex
/// C_N -> ... -> C_0. The reduced complex is chain homotopy equivalent to the
/// input; lifts[k][i] is the image in the original C_k of the i-th surviving
/// basis element of degree k under the inclusion chain map.
struct ReducedComplex {
  std::vector<std::vector<std::size_t>> survivors;  // original indices per degree
  std::vector<Matrix> differentials;                 // [k]: C'_k -> C'_{k-1}; [0] empty
  std::vector<std::vector<SparseColumn>> lifts;      // only when requested
  std::vector<std::size_t> eliminated;               // unit pairs removed from d_k

  /// One removed pair: column b of d_k against row a, with the pivot column
  /// as it stood at that moment. Recorded only when lifts are tracked.
  struct Step {
    std::size_t degree;
    std::uint32_t b, a;
    Int unit;
    SparseColumn pivot;
  };
  std::vector<Step> steps;

  /// Image of a chain of the original degree-k group under the projection
  /// chain map, in survivor coordinates. Needs tracked lifts.
  IntVec project(std::size_t k, const IntVec& x) const;
};

/// boundaries[k] maps C_k -> C_{k-1} (boundaries[0] is ignored and may be
/// empty); dims[k] = rank of C_k.
ReducedComplex reduce_chain_complex(std::vector<SparseMatrix> boundaries,
                                    const std::vector<std::size_t>& dims, bool track_lifts);

}  // namespace tac
