#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tac/homology_engine.hpp"

namespace tac {

/// A simplicial q-chain with coefficients in the pushforward of the p-th
/// exterior power, each coefficient written in the home frame of its simplex
/// in the lexicographic wedge basis.
struct TropicalCycle {
  std::string name;
  std::size_t p = 1;
  std::size_t q = 1;
  std::vector<std::pair<Cell, IntVec>> cells;
};

/// Coordinates of the cycle in the chain complex of F (closed kind, degree p).
/// Throws std::invalid_argument if a coefficient leaves its lattice.
IntVec cycle_chain(const GradedComplex& C, const SheafFunctor& F, const TropicalCycle& z);

/// Whether the chain has zero boundary (absolute, or relative to the flagged
/// subcomplex that C omits).
bool is_cycle(const GradedComplex& C, const SheafFunctor& F, const TropicalCycle& z);

/// Solves for a cycle supported on the given q-simplices whose coefficient at
/// `fixed` equals `fixed_value`. Returns nullopt if there is none.
std::optional<TropicalCycle> cycle_on_support(const SheafFunctor& F, std::size_t q, const std::vector<Cell>& support,
                                              Cell fixed, const IntVec& fixed_value, Relative rel = Relative::None);

/// Cycle supported on the given q-simplices whose class generates the image
/// of all such cycles in H_q modulo torsion. Returns nullopt unless that
/// image has rank one. C must be the chain complex of F and H its calculator.
std::optional<TropicalCycle> primitive_cycle_on_support(const SheafFunctor& F, const GradedComplex& C,
                                                        const HomologyCalculator& H, std::size_t q,
                                                        const std::vector<Cell>& support);

/// Edge chain of a vertex path: edges between consecutive vertices.
std::vector<Cell> path_edges(const DeltaComplex& K, const std::vector<std::uint32_t>& vertices);

}  // namespace tac
