#pragma once

#include <memory>
#include <string>
#include <vector>

#include "tac/cech_cohomology.hpp"
#include "tac/tropical_cycle.hpp"

namespace tac {

/// Pairing between H_q(B, pushforward of the p-th exterior power of Lambda)
/// and H^q(B, pushforward of the p-th exterior power of the dual), computed
/// as the sum over q-simplices of the stalk pairings.
struct PairingReport {
  std::size_t p = 0, q = 0;
  Matrix gram;  // rows: free homology generators, columns: free cohomology generators
  HomologyGroup homology, cohomology;
  IntVec divisors;  // elementary divisors of gram
  bool perfect_over_Q = false;
  bool perfect_over_Z = false;
  std::string to_string() const;
};

/// Bases come from the Smith reductions of chain_complex (closed kind) and
/// vertex_star_cech (open kind, dual system).
PairingReport pairing_matrix(const LocalSystem& L, std::size_t p, std::size_t q);

/// Pairing of a chain of chain_complex(closed p) with a cochain of
/// vertex_star_cech(open p, dual system), both given in complex coordinates.
Int pair_chain_cochain(const GradedComplex& chains, const SheafFunctor& closed, const GradedComplex& cochains,
                       const SheafFunctor& open_dual, std::size_t q, const IntVec& chain, const IntVec& cochain);

/// Matrix of xi -> (xi ^ -)/Omega from the p-th exterior power of Z^n to the
/// (n-p)-th exterior power of the dual lattice, lexicographic bases, with
/// Omega = omega * e_1 ^ ... ^ e_n.
Matrix omega_matrix(std::size_t n, std::size_t p, const Int& omega);

/// The multiple of e_1 ^ ... ^ e_n that the global orientation section takes
/// in the frame of each top simplex. Throws std::invalid_argument when the
/// local system does not preserve an orientation.
std::vector<Int> orientation_section(const LocalSystem& L);

/// Per top simplex: +1 when its vertex order is positively oriented with
/// respect to the orientation section, given that sign for the base cell of
/// each component. Throws when the complex is not an oriented pseudomanifold.
std::vector<int> top_orientation(const LocalSystem& L, int base_sign = 1);

/// Checks that contraction with Omega maps the closed-kind value of the p-th
/// exterior power of Lambda onto that of the (n-p)-th exterior power of the
/// dual, simplex by simplex, and that the two contractions compose to
/// +-identity.
struct OmegaContractionReport {
  bool isomorphism = true;
  std::size_t simplices = 0;
  std::string message;
};
OmegaContractionReport omega_contraction(const LocalSystem& L, std::size_t p);

/// Sign of or_V ^ or_W against the ambient orientation sign; 0 when the
/// concatenated vectors are dependent.
int eps_sign(const std::vector<IntVec>& basis_v, const std::vector<IntVec>& basis_w, int ambient = 1);

struct IntersectionPoint {
  std::vector<IntVec> tangent_v;  // q vectors
  std::vector<IntVec> tangent_w;  // n - q vectors
  IntVec xi_v;                    // p-th exterior power
  IntVec xi_w;                    // (n-p)-th exterior power
};

/// Sum over points of eps * (xi_v ^ xi_w) / Omega with Omega = omega * e_1 ^ ... ^ e_n.
Int intersection_number(const std::vector<IntersectionPoint>& points, std::size_t p, const Int& omega = 1);

/// Intersection of V in H_q(B; p-th power) with W in H_{n-q}(B, boundary;
/// (n-p)-th power): V paired with the Omega-contraction of the Poincare-
/// Lefschetz dual of W. The dual is found by mapping a basis of H^q(B) to
/// dual-block chains on the barycentric subdivision and solving for the class
/// of the subdivided W.
class IntersectionPairing {
 public:
  IntersectionPairing(const LocalSystem& L, std::size_t p, std::size_t q, int base_orientation = 1);
  ~IntersectionPairing();
  IntersectionPairing(IntersectionPairing&&) noexcept;
  IntersectionPairing& operator=(IntersectionPairing&&) noexcept;

  Int operator()(const TropicalCycle& V, const TropicalCycle& W) const;
  /// Coordinates of the dual class of W against the cohomology basis.
  IntVec dual_class(const TropicalCycle& W) const;
  Matrix gram(const std::vector<TropicalCycle>& Vs, const std::vector<TropicalCycle>& Ws) const;
  /// Throws std::logic_error unless the dual-block map sends every basis
  /// cocycle to a relative cycle.
  void check_chain_map() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Int intersection_via_pairing(const LocalSystem& L, const TropicalCycle& V, const TropicalCycle& W, int base_orientation = 1);

struct LatticeReport {
  std::size_t rank = 0;
  Int determinant;
  bool even = true;
  std::size_t positive = 0, negative = 0, zero = 0;
  std::string to_string() const;
};
/// Throws std::invalid_argument for a non-symmetric matrix.
LatticeReport gram_lattice_classify(const Matrix& gram);

/// The sign (-1)^((n-p)(q-1)) relating the pairing to the cohomological
/// intersection form of a torus fibration.
int fibration_sign(std::size_t n, std::size_t p, std::size_t q);

}  // namespace tac
