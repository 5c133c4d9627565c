#pragma once

#include <string>
#include <vector>

#include "tac/constructible_sheaf.hpp"
#include "tac/sparse_elimination.hpp"

namespace tac {

enum class Relative { None, Delta, Boundary };
enum class Field { Z, Q };

/// Free graded group with differentials. In chain form d[k] maps degree k to
/// k-1; in cochain form d[k] maps degree k to k+1. Each degree is a direct
/// sum of blocks, one per indexing simplex.
struct GradedComplex {
  struct Block {
    Cell cell;
    std::size_t offset = 0;
    std::size_t rank = 0;
  };
  bool cochain = false;
  std::vector<std::size_t> dims;
  std::vector<SparseMatrix> d;
  std::vector<std::vector<Block>> blocks;

  std::size_t top_degree() const { return dims.empty() ? 0 : dims.size() - 1; }
  /// Throws std::logic_error unless consecutive differentials compose to zero.
  void check_square_zero() const;
  int euler_characteristic() const;
};

struct HomologyGroup {
  std::size_t degree = 0;
  std::size_t betti = 0;
  IntVec torsion;  // divisors > 1
  /// Representatives in the complex's own coordinates: the betti free
  /// generators first, then one per torsion divisor.
  std::vector<IntVec> cycle_basis;
  bool operator==(const HomologyGroup& o) const { return betti == o.betti && torsion == o.torsion; }
  std::string to_string() const;
};

/// All homology (or cohomology for cochain form) groups, by degree.
std::vector<HomologyGroup> homology(const GradedComplex& C, Field field = Field::Z, bool representatives = false);

/// Homology with representatives plus coordinates of arbitrary cycles.
class HomologyCalculator {
 public:
  explicit HomologyCalculator(const GradedComplex& C, Field field = Field::Z);
  const std::vector<HomologyGroup>& groups() const { return groups_; }
  const HomologyGroup& group(std::size_t degree) const { return groups_.at(degree); }
  /// Coordinates of the class of a cycle against group(degree).cycle_basis:
  /// free coordinates first, then torsion coordinates reduced modulo their
  /// divisors. Throws std::invalid_argument for a non-cycle.
  IntVec class_of(std::size_t degree, const IntVec& cycle) const;
  bool is_boundary(std::size_t degree, const IntVec& cycle) const;

 private:
  struct Degree {
    Matrix v_inv;       // kernel change of basis of the outgoing differential
    std::size_t r_out = 0;
    Matrix u_in;        // left factor for the incoming boundaries
    bool has_u = false;
    IntVec divisors;
  };
  std::size_t chain_degree(std::size_t degree) const { return cochain_ ? n_ - 1 - degree : degree; }
  bool cochain_ = false;
  std::size_t n_ = 0;
  Field field_;
  GradedComplex differentials_;
  ReducedComplex reduced_;
  std::vector<Degree> data_;  // by chain degree
  std::vector<HomologyGroup> groups_;
};

/// Chain complex of a closed-kind sheaf. Relative mode drops the flagged simplices.
GradedComplex chain_complex(const SheafFunctor& F, Relative rel = Relative::None);
/// Same, restricted to a subcomplex given per dimension by sorted indices.
GradedComplex chain_complex_on(const SheafFunctor& F, const std::vector<std::vector<std::uint32_t>>& cells,
                               Relative rel = Relative::None);

/// Chain complex of an abstract functor with face-directed maps.
GradedComplex chain_complex(const AbstractFunctor& A);

std::vector<HomologyGroup> star_homology(const SheafFunctor& F, Cell tau, Field field = Field::Z);

/// Local system on the barycentric subdivision: each new top cell uses the
/// frame of the old top cell carrying it.
struct SubdividedSystem {
  Subdivision subdivision;
  LocalSystem system;
};
SubdividedSystem subdivide(const LocalSystem& L);

struct InvarianceReport {
  bool equal = true;
  std::vector<HomologyGroup> before, after;
  std::string message;
};
InvarianceReport barycentric_invariance_check(const LocalSystem& L, std::size_t p, Relative rel = Relative::None,
                                              bool dual = false);

/// Total complex of the double complex whose column j is the sum over
/// j-simplices tau of C_*(closed star of tau, A).
GradedComplex double_complex_total(const SheafFunctor& F);

/// Cycle chain: sum of coefficient vectors (ambient stalk coordinates in the
/// home frame of each simplex) converted into complex coordinates.
IntVec chain_from_stalk_coefficients(const GradedComplex& C, const SheafFunctor& F,
                                     const std::vector<std::pair<Cell, IntVec>>& cells);
/// Inverse conversion: stalk coordinates per block for a chain.
std::vector<std::pair<Cell, IntVec>> stalk_coefficients(const GradedComplex& C, const SheafFunctor& F,
                                                        std::size_t degree, const IntVec& chain);

/// Applies d[degree] to a vector.
IntVec apply_differential(const GradedComplex& C, std::size_t degree, const IntVec& v);

/// Whether the given cycles form a basis of H_degree modulo torsion.
bool is_free_basis(const GradedComplex& C, std::size_t degree, const std::vector<IntVec>& cycles);

}  // namespace tac
