#pragma once

#include <string>
#include <vector>

#include "tac/homology_engine.hpp"

namespace tac {

/// Cech complex of the cover by open vertex stars. Degree k is the sum over
/// k-simplices tau of the open-kind value at tau (sections over the open star
/// of tau). Relative::Boundary drops boundary simplices, which computes
/// cohomology relative to the boundary.
GradedComplex vertex_star_cech(const SheafFunctor& F, Relative rel = Relative::None);

/// Cech complex of the boundary for the cover by the traces of the open
/// vertex stars; the open-kind values restrict because the discriminant meets
/// the boundary transversally.
GradedComplex boundary_star_cech(const SheafFunctor& F);

/// Cech complex of the punctured open star of a vertex p, covered by the open
/// stars of the edges at p. Degree k is the sum over k-simplices tau of the
/// link of p of the open-kind value at the join p*tau.
GradedComplex punctured_star_cech(const SheafFunctor& F, std::uint32_t vertex);

/// Cech complex for the cover by small neighborhoods U_sigma of the top
/// simplices. The term for an index set I is the sheaf over a neighborhood of
/// the meet of I, i.e. the closed-kind value of that simplex.
struct MaxCellCech {
  GradedComplex complex;  // cochain form
  /// Per degree and block: the index set (sorted top indices) and the cell
  /// maximal in U_I (for the boundary part: the meet intersected with the
  /// boundary). Blocks of a cone list the interior part first.
  std::vector<std::vector<std::vector<std::uint32_t>>> index_sets;
  std::vector<std::vector<Cell>> cells;
  /// For cones: whether the block belongs to the boundary summand.
  std::vector<std::vector<char>> boundary_part;
};

/// Whether every simplex meets the boundary in a single boundary face, the
/// condition under which the max-cell complexes below are defined. A
/// barycentric subdivision always satisfies it.
bool boundary_meets_in_faces(const DeltaComplex& K);

/// Absolute complex C(B).
MaxCellCech maxcell_cech(const SheafFunctor& F);
/// Complex of the induced cover of the boundary.
MaxCellCech maxcell_boundary_cech(const SheafFunctor& F);
/// Cone of the restriction C(B) -> C(boundary); computes H(B, boundary).
MaxCellCech maxcell_relative_cech(const SheafFunctor& F);

/// Cohomology of each graded piece of the filtration by codimension (in B)
/// of the maximal cell, compared with the expected concentration: degree k
/// for Gr^k of the absolute and relative complexes, degree k - 1 for the
/// boundary complex, whose cells have codimension k - 1 inside the boundary.
struct GradedConcentrationReport {
  bool passed = true;
  /// ranks[k][i] = rank of H^i(Gr^k); torsion recorded in `message`.
  std::vector<std::vector<std::size_t>> ranks;
  std::vector<std::size_t> expected_diagonal;
  std::string message;
};
enum class MaxCellVariant { Absolute, Boundary, Relative };
GradedConcentrationReport graded_concentration_check(const SheafFunctor& F, MaxCellVariant variant);

/// Compares the first differential of the spectral sequence of C(B) with
/// the boundary map of the relative chain complex. The identification of
/// H^k(Gr^k) with chains uses one generator per interior cell; the check
/// succeeds when signs s_tau exist making every component agree with the
/// signed restriction map.
struct D1Report {
  bool passed = true;
  std::size_t compared = 0;  // (cell, facet) pairs checked
  std::string message;
};
D1Report d1_equals_boundary_check(const SheafFunctor& F);

/// Poincare-Lefschetz comparison of H_k(B, boundary) with H^{n-k}(B) and of
/// H_k(B) with H^{n-k}(B, boundary), for the pushforward of the p-th exterior
/// power. Cohomology uses the vertex-star cover.
struct DualityReport {
  bool passed = true;
  std::vector<HomologyGroup> homology_rel, cohomology_abs, homology_abs, cohomology_rel;
  std::string message;
};
DualityReport verify_pl_duality(const LocalSystem& L, std::size_t p, Field field = Field::Z);

}  // namespace tac
