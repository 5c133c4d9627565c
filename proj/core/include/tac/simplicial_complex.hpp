#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace tac {

/// Ascending tuple of vertex ids.
using Simplex = std::vector<std::uint32_t>;

/// A simplex addressed by its dimension and its position in that dimension's
/// lexicographically sorted list.
struct Cell {
  std::uint32_t dim = 0;
  std::uint32_t index = 0;
  bool operator==(const Cell& o) const { return dim == o.dim && index == o.index; }
  bool operator<(const Cell& o) const { return dim != o.dim ? dim < o.dim : index < o.index; }
};

/// Sign of the facet tau in the boundary of sigma: (-1)^i where i is the
/// position of the vertex of sigma missing from tau.
int boundary_sign(const Simplex& sigma, const Simplex& tau);

struct Incidence {
  std::uint32_t index;  // facet (or coface) index in the adjacent dimension
  int sign;
};

/// Finite ordered simplicial complex with discriminant and boundary flags.
class DeltaComplex {
 public:
  DeltaComplex() = default;
  /// Closure of the given simplices. `dimension` is the manifold dimension n.
  DeltaComplex(std::size_t dimension, std::size_t num_vertices, const std::vector<Simplex>& generators);

  std::size_t dimension() const { return dimension_; }
  std::size_t num_vertices() const { return num_vertices_; }
  std::size_t top_dimension() const { return simplices_.empty() ? 0 : simplices_.size() - 1; }
  std::size_t count(std::size_t k) const { return k < simplices_.size() ? simplices_[k].size() : 0; }
  std::size_t total_count() const;
  const std::vector<Simplex>& simplices(std::size_t k) const { return simplices_.at(k); }
  const Simplex& simplex(Cell c) const { return simplices_.at(c.dim).at(c.index); }
  std::optional<std::uint32_t> find(const Simplex& s) const;

  const std::vector<Incidence>& facets(Cell c) const { return facets_.at(c.dim).at(c.index); }
  const std::vector<Incidence>& cofaces(Cell c) const { return cofaces_.at(c.dim).at(c.index); }

  /// Maximal simplices (not a proper face of anything) containing c.
  std::vector<Cell> maximal_cofaces(Cell c) const;
  /// Indices of n-simplices containing c.
  std::vector<std::uint32_t> top_cofaces(Cell c) const;
  /// Every simplex containing c (including c), by dimension.
  std::vector<std::vector<std::uint32_t>> cofaces_all(Cell c) const;
  /// Every face of c (including c), by dimension.
  std::vector<std::vector<std::uint32_t>> faces_all(Cell c) const;

  bool in_delta(Cell c) const { return delta_.at(c.dim).at(c.index) != 0; }
  bool in_boundary(Cell c) const { return boundary_.at(c.dim).at(c.index) != 0; }
  /// Flags the closure of the given simplices.
  void set_delta(const std::vector<Simplex>& generators);
  void set_boundary(const std::vector<Simplex>& generators);
  /// Flags as boundary the closure of the (n-1)-simplices with a single coface.
  void set_boundary_from_topology();
  /// Throws std::invalid_argument if a flag set is not a closed subcomplex, or
  /// if the discriminant has codimension < 2.
  void validate_flags() const;

  bool has_delta() const;
  bool has_boundary() const;

  /// Global id: simplices numbered by dimension, then index.
  std::size_t global_id(Cell c) const { return offsets_.at(c.dim) + c.index; }
  Cell cell_of(std::size_t global) const;

 private:
  void flag_closure(std::vector<std::vector<char>>& flags, const std::vector<Simplex>& generators);

  std::size_t dimension_ = 0;
  std::size_t num_vertices_ = 0;
  std::vector<std::vector<Simplex>> simplices_;
  std::vector<std::map<Simplex, std::uint32_t>> lookup_;
  std::vector<std::vector<std::vector<Incidence>>> facets_;
  std::vector<std::vector<std::vector<Incidence>>> cofaces_;
  std::vector<std::vector<char>> delta_, boundary_;
  std::vector<std::size_t> offsets_;
};

/// Closed star: all faces of simplices containing the center.
struct StarComplex {
  Cell center;
  std::vector<std::vector<std::uint32_t>> members;  // per dimension, ascending
  bool contains(Cell c) const;
  std::size_t size() const;
};

StarComplex closed_star(const DeltaComplex& K, Cell tau);

/// The simplex spanned by the vertex set if it belongs to K.
std::optional<Cell> open_star_intersection(const DeltaComplex& K, const std::vector<std::uint32_t>& vertices);

struct Subdivision {
  DeltaComplex complex;
  /// carrier[k][i]: the smallest old simplex containing new simplex (k, i).
  std::vector<std::vector<Cell>> carrier;
  /// Old simplex whose barycenter is each new vertex.
  std::vector<Cell> vertex_parent;
};

/// Barycentric subdivision. New vertex order: barycenters sorted by the
/// dimension of their simplex, then by its index. Flags follow the carrier.
Subdivision barycentric_subdivision(const DeltaComplex& K);

/// Undirected multigraph on top simplices: nodes are the given n-simplices,
/// edges join two of them sharing a facet that is not in the boundary.
struct DualGraph {
  std::vector<std::uint32_t> nodes;  // top simplex indices, ascending
  struct Edge {
    std::uint32_t a, b;   // positions in `nodes`
    std::uint32_t facet;  // (n-1)-simplex index
  };
  std::vector<Edge> edges;  // ordered by facet index
  std::vector<std::vector<std::uint32_t>> adjacency;  // node -> edge ids
};

/// If `through` is given, only facets containing that simplex are used.
DualGraph dual_graph(const DeltaComplex& K, const std::vector<std::uint32_t>& region,
                     std::optional<Cell> through = std::nullopt);

}  // namespace tac
