#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tac/cech_cohomology.hpp"
#include "tac/local_system.hpp"
#include "tac/tropical_cycle.hpp"

namespace tac {

/// Lattice polytope with its face lattice. `faces` lists every face of
/// dimension at least one (the polytope itself included) by vertex indices.
struct LatticePolytope {
  std::size_t ambient_dim = 0;
  std::vector<IntVec> vertices;
  std::vector<std::vector<std::uint32_t>> faces;

  std::size_t dimension() const;
  /// Edges (two-vertex faces).
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;
  /// Throws std::invalid_argument when the vertices are affinely dependent.
  static LatticePolytope simplex(const std::vector<IntVec>& vertices);
  /// Standard simplex conv(0, e_1, ..., e_d), optionally scaled.
  static LatticePolytope standard_simplex(std::size_t d, long scale = 1);
  /// Unit square with vertices in cyclic order.
  static LatticePolytope unit_square();
};
using LatticeSimplex = LatticePolytope;

/// A transvection v -> v + <v, n> m attached to an edge of each polytope.
struct EdgeTransvection {
  std::pair<std::uint32_t, std::uint32_t> edge, coedge;  // vertex pairs in triangle / cotriangle
  IntVec m, n;                                          // m in Z^a, n in (Z^b)^*, padded to Z^(a+b+c)
  Matrix matrix;
};

struct SympleModelSpec {
  LatticePolytope triangle;    // Delta in R^a
  LatticeSimplex cotriangle;   // check-Delta in (R^b)^*
  std::size_t trivial = 0;     // number of R factors
  std::size_t dimension() const { return triangle.dimension() + cotriangle.dimension() + trivial; }
  /// Every (edge, edge) pair with its transvection.
  std::vector<EdgeTransvection> transvections() const;
};

struct AffineModel {
  std::string name;
  std::shared_ptr<const DeltaComplex> complex;
  LocalSystem system;
  std::vector<TropicalCycle> cycles;
  /// Symple models: per top simplex, the triangle vertex and cotriangle
  /// vertex labelling its chamber.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> chambers;
  /// Set for models built from a symple specification.
  std::optional<SympleModelSpec> spec;
  /// Sign of the vertex order of top simplex 0 against the orientation
  /// carried by its frame.
  int orientation = 1;
  /// Integer vertex positions where the builder has them (planar and cube
  /// models), empty otherwise.
  std::vector<IntVec> coordinates;
  /// False for models that are not locally symple (the conifold); pairing
  /// results on them carry no perfectness guarantee.
  bool symple_provenance = true;
};

/// Throws std::logic_error if a model invariant fails: flags closed with
/// codimension at least two, no cocycle defects, nontrivial monodromy around
/// every maximal simplex of the discriminant.
void verify_model(const AffineModel& m);

AffineModel build_symple_model(const SympleModelSpec& spec, std::size_t fineness = 0);
AffineModel build_focus_focus(long length = 1, std::size_t fineness = 0);

enum class GogglesVariant { SharedLine, ParallelLines };
AffineModel build_goggles(GogglesVariant variant);

/// Throws std::invalid_argument unless both directions are primitive and
/// independent with |det| != 1.
AffineModel build_torsion_pair(const IntVec& dir1, const IntVec& dir2);

AffineModel build_cube_k3();
AffineModel build_conifold();

/// Planar grid model: W x H unit squares, singularities at interior grid
/// vertices, each with a straight cut along grid edges to the boundary.
/// Crossing a cut counterclockwise around its singularity applies `ccw`.
struct PlanarSingularity {
  int x = 0, y = 0;
  enum class Cut { Left, Right, Down, Up } cut = Cut::Left;
  Matrix ccw;
};
AffineModel build_planar_model(int width, int height, const std::vector<PlanarSingularity>& singularities,
                               std::string name);
/// Vertex id of the grid point (x, y) in a planar model of the given width.
std::uint32_t grid_vertex(int width, int x, int y);

/// Catalog used by the command line: focus-focus, goggles-shared,
/// goggles-parallel, torsion, cube-k3, conifold, and symple:<A>x<B> with
/// A, B among simplex1..simplex3, square, interval2 and an optional +R^c.
AffineModel build_named_model(const std::string& name);
std::vector<std::string> model_catalog();

}  // namespace tac
