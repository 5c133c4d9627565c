#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tac/constructible_sheaf.hpp"
#include "tac/homology_engine.hpp"
#include "tac/model_library.hpp"

namespace tac {

/// Cochain complexes attached to a pair of lattice simplices. All of them
/// are computed over Q; the integer matrices are exact and only their ranks
/// matter.
///
/// C: degree i is the sum over i-faces tau of the cotriangle of the tangent
///    space T_tau, with signed inclusions as differential (C^0 = 0).
/// D: simplicial cochains of the triangle.
/// Dual complexes have degree i equal to Hom(C^{top - i}); the truncated dual
/// of D drops its top degree.
GradedComplex tangent_complex(const LatticeSimplex& cotriangle);
GradedComplex simplex_cochains(const LatticeSimplex& triangle);
GradedComplex dual_complex(const GradedComplex& C);
/// Copy with degree `degree` replaced by zero.
GradedComplex truncate_degree(const GradedComplex& C, std::size_t degree);
/// Tensor product with the Koszul sign on the second factor.
GradedComplex tensor_product(const GradedComplex& A, const GradedComplex& B);

/// Rational cohomology ranks of a cochain complex.
std::vector<std::size_t> rational_ranks(const GradedComplex& C);

struct CDRanks {
  std::vector<std::size_t> C, D, C_dual, D_dual, D_bar, tensor;
};
/// Ranks of C, D, their duals, the truncated dual of D and the tensor of the
/// truncated dual of D with the dual of C.
CDRanks complex_CD_ranks(const LatticeSimplex& triangle, const LatticeSimplex& cotriangle);

/// Cech complex of the sheaf S on the punctured product of the two fans,
/// for the cover indexed by pairs (triangle, facet of cotriangle) and
/// (facet of triangle, cotriangle). The term of an index set is Hom(T, Q)
/// for T the tangent space of the meet on the cotriangle side, or zero when
/// either meet has fewer than two vertices.
struct PuncturedReport {
  std::size_t a = 0, b = 0;
  GradedComplex cech;
  std::vector<std::size_t> ranks;     // computed from the Cech complex
  std::vector<std::size_t> tensor;    // ranks of the tensor complex
  std::vector<std::size_t> expected;  // the closed-form table
  bool matches = false;
  std::string to_string() const;
};
PuncturedReport punctured_cech_S(const LatticeSimplex& triangle, const LatticeSimplex& cotriangle);

/// Closed-form ranks of H^k of S on the punctured product, k = 0..top.
std::vector<std::size_t> punctured_expected_ranks(std::size_t a, std::size_t b, std::size_t top);

/// Three-chart Cech complex of the punctured neighborhood of a trivalent
/// vertex of a three-dimensional symple model, built from the transvections
/// T1, T2 of two legs. The third chart carries the sections invariant under
/// T1^-1 T2.
struct ThreefoldVertexReport {
  std::size_t a = 0;
  Matrix T1, T2;
  std::size_t rank_C0 = 0, rank_C1 = 0, rank_C2 = 0;
  std::size_t rank_d0 = 0;
  std::size_t kernel_d1 = 0;
  std::size_t kernel_reduced = 0;  // kernel of (id - T1 | T2 - id)
  std::size_t h1 = 0;
  bool third_leg_is_transvection = false;
};
/// Throws std::invalid_argument unless the model is three-dimensional with
/// a trivalent vertex (dimensions (2,1) or (1,2), no trivial factor).
ThreefoldVertexReport threefold_vertex_cech(const SympleModelSpec& spec);

/// H^1 of the punctured open star over Q at every discriminant vertex.
struct PuncturedSweep {
  std::vector<std::uint32_t> vertices;
  std::vector<std::size_t> h1;
  bool all_zero() const;
};
PuncturedSweep punctured_h1_sweep(const AffineModel& m);

/// The sheaf S on a symple model: on a discriminant simplex sigma its stalk
/// is Hom(T_J, Z) where J is the set of cotriangle vertices labelling the
/// chambers around sigma, zero off the discriminant. Maps go to cofaces and
/// restrict functionals along T_J(coface) in T_J(face).
/// Throws std::invalid_argument for a model without symple provenance.
AbstractFunctor quotient_sheaf_S(const AffineModel& m);

}  // namespace tac
