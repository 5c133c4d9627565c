#pragma once

#include <memory>
#include <vector>

#include "tac/exact_algebra.hpp"
#include "tac/local_system.hpp"
#include "tac/simplicial_complex.hpp"

namespace tac {

/// A functor on the face poset given by free groups and integer matrices,
/// one matrix per facet incidence.
struct AbstractFunctor {
  enum class Direction {
    ToFaces,    // A_sigma -> A_tau for tau a facet of sigma (homology coefficients)
    ToCofaces,  // A_tau -> A_sigma (sections over shrinking open stars)
  };
  std::shared_ptr<const DeltaComplex> complex;
  Direction direction = Direction::ToFaces;
  std::vector<std::vector<std::size_t>> rank;  // [dim][index]
  /// maps[dim][index][j] belongs to the j-th facet incidence of simplex (dim, index).
  std::vector<std::vector<std::vector<Matrix>>> maps;

  std::size_t rank_of(Cell c) const { return rank.at(c.dim).at(c.index); }
  const Matrix& map(Cell sigma, std::size_t facet_slot) const { return maps.at(sigma.dim).at(sigma.index).at(facet_slot); }
  /// Throws std::logic_error when the two routes along some square of a
  /// 2-step face chain disagree.
  void check_composition() const;
};

enum class SheafKind {
  Closed,  // sections over a neighborhood of the closed simplex
  Open,    // sections over the open star
};

/// Pushforward of the p-th exterior power of a local system (or its dual).
/// Every value is a saturated sublattice of the p-th exterior power of Z^n,
/// written in the frame of the simplex's home top cell.
class SheafFunctor {
 public:
  const DeltaComplex& complex() const { return *complex_; }
  std::shared_ptr<const DeltaComplex> complex_ptr() const { return complex_; }
  std::size_t degree() const { return p_; }
  std::size_t system_rank() const { return n_; }
  std::size_t stalk_rank() const { return binomial(n_, p_); }
  SheafKind kind() const { return kind_; }
  bool rational() const { return rational_; }
  bool dual() const { return dual_; }

  const Lattice& value(Cell c) const { return values_.at(c.dim).at(c.index); }
  std::uint32_t frame(Cell c) const { return frames_.at(c.dim).at(c.index); }
  /// Transport on the p-th exterior power from the home frame of `sigma` to
  /// the home frame of its face `tau`, along the star of tau.
  Matrix frame_change(Cell sigma, Cell tau) const;
  /// Presentation as integer matrices in the stored lattice bases.
  const AbstractFunctor& functor() const { return functor_; }

  friend SheafFunctor pushforward_sheaf(const LocalSystem& L, std::size_t p, SheafKind kind, bool dual);
  friend SheafFunctor rationalize(const SheafFunctor& F);

 private:
  std::shared_ptr<const DeltaComplex> complex_;
  std::size_t n_ = 0, p_ = 0;
  SheafKind kind_ = SheafKind::Closed;
  bool rational_ = false;
  bool dual_ = false;
  std::vector<std::vector<Lattice>> values_;
  std::vector<std::vector<std::uint32_t>> frames_;
  // Star transports per simplex (on Lambda^p), for frame changes.
  std::vector<std::vector<StarFrames>> stars_;
  AbstractFunctor functor_;
};

/// `dual` marks sheaves built from a dual system (bookkeeping only).
SheafFunctor pushforward_sheaf(const LocalSystem& L, std::size_t p, SheafKind kind, bool dual = false);

/// Same lattices and maps, flagged for computations over Q.
SheafFunctor rationalize(const SheafFunctor& F);

/// <a, b> for a in the p-th exterior power of the lattice and b in that of
/// its dual, both written in the same frame and the lexicographic basis.
Int stalk_pairing_tr(const IntVec& a, const IntVec& b);

}  // namespace tac
