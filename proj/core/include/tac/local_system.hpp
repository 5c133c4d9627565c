#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "tac/exact_algebra.hpp"
#include "tac/simplicial_complex.hpp"

namespace tac {

/// Rank-n integer local system on the complement of the discriminant, given
/// by GL_n(Z) transition matrices between adjacent top simplices.
/// transition(c, d) maps coordinates in the frame of cell c to coordinates in
/// the frame of cell d; unset transitions are the identity.
class LocalSystem {
 public:
  LocalSystem() = default;
  LocalSystem(std::shared_ptr<const DeltaComplex> K, std::size_t rank);

  std::size_t rank() const { return rank_; }
  const DeltaComplex& complex() const { return *K_; }
  std::shared_ptr<const DeltaComplex> complex_ptr() const { return K_; }

  /// Sets t(from -> to) and its inverse for the reverse direction. The cells
  /// must share a facet outside the boundary; det t must be +1 or -1.
  void set_transition(std::uint32_t from, std::uint32_t to, const Matrix& t);
  Matrix transition(std::uint32_t from, std::uint32_t to) const;
  /// Stored transitions keyed by (from, to) with from < to.
  std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, Matrix>> transitions() const;

  /// Lowest-index top simplex containing c; lattices attached to c are
  /// expressed in this cell's frame.
  std::uint32_t home(Cell c) const;

  /// Base cell (lowest index) of each connected component of the dual graph.
  const std::vector<std::uint32_t>& base_cells() const;
  std::uint32_t component_base(std::uint32_t top) const;
  /// Transport from the frame of `top` to the frame of its component base
  /// along the fixed global spanning tree.
  const Matrix& to_base(std::uint32_t top) const;
  /// Re-roots the global spanning tree so that `top` becomes the base of its component.
  void reroot(std::uint32_t top);

  /// Simplices of codimension two outside the discriminant whose local
  /// monodromy is not trivial (empty for a consistent cocycle).
  std::vector<Cell> cocycle_defects() const;

 private:
  void build_tree() const;

  std::shared_ptr<const DeltaComplex> K_;
  std::size_t rank_ = 0;
  std::map<std::pair<std::uint32_t, std::uint32_t>, Matrix> trans_;
  std::vector<std::uint32_t> preferred_roots_;
  mutable bool tree_valid_ = false;
  mutable std::vector<std::uint32_t> base_cells_;
  mutable std::vector<std::uint32_t> component_;
  mutable std::vector<Matrix> to_base_;
};

/// Ordered product of transitions along a walk of adjacent top cells; maps
/// frame path.front() to frame path.back().
Matrix transport(const LocalSystem& L, const std::vector<std::uint32_t>& path);

/// Breadth-first frames of the open star of a simplex: the top cells around
/// it, the transport from each to the home frame along the BFS tree, and one
/// loop per non-tree dual edge, all acting on home-frame coordinates.
struct StarFrames {
  Cell center;
  std::uint32_t home = 0;
  std::vector<std::uint32_t> tops;  // ascending
  std::vector<Matrix> to_home;      // parallel to tops
  std::vector<Matrix> loops;
  const Matrix& transport_to_home(std::uint32_t top) const;
};

StarFrames star_frames(const LocalSystem& L, Cell omega);

struct MonodromyGenerators {
  std::size_t rank = 0;
  std::uint32_t base_cell = 0;  // frame in which the loops act
  std::vector<Matrix> loops;
};

/// Generators of the monodromy of star(omega) minus the discriminant, based
/// at the home cell of omega.
MonodromyGenerators star_monodromy(const LocalSystem& L, Cell omega);

/// Common invariants of the p-th exterior powers of the generators.
Lattice invariant_lattice(const MonodromyGenerators& gens, std::size_t p);

/// Transitions replaced by their inverse transposes.
LocalSystem dual_system(const LocalSystem& L);

}  // namespace tac
