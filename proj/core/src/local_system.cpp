#include "tac/local_system.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

namespace tac {

LocalSystem::LocalSystem(std::shared_ptr<const DeltaComplex> K, std::size_t rank) : K_(std::move(K)), rank_(rank) {
  if (!K_) throw std::invalid_argument("LocalSystem: null complex");
}

void LocalSystem::set_transition(std::uint32_t from, std::uint32_t to, const Matrix& t) {
  if (t.rows() != rank_ || t.cols() != rank_) throw std::invalid_argument("set_transition: wrong matrix size");
  const DeltaComplex& K = *K_;
  const std::size_t n = K.dimension();
  const Simplex& a = K.simplex(Cell{static_cast<std::uint32_t>(n), from});
  const Simplex& b = K.simplex(Cell{static_cast<std::uint32_t>(n), to});
  Simplex common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  if (common.size() != n) throw std::invalid_argument("set_transition: cells do not share a facet");
  if (K.in_boundary(Cell{static_cast<std::uint32_t>(n - 1), *K.find(common)}))
    throw std::invalid_argument("set_transition: shared facet lies in the boundary");
  Matrix inv = inverse_unimodular(t);
  trans_[{from, to}] = t;
  trans_[{to, from}] = std::move(inv);
  tree_valid_ = false;
}

Matrix LocalSystem::transition(std::uint32_t from, std::uint32_t to) const {
  auto it = trans_.find({from, to});
  if (it == trans_.end()) return Matrix::identity(rank_);
  return it->second;
}

std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, Matrix>> LocalSystem::transitions() const {
  std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, Matrix>> out;
  for (const auto& [key, m] : trans_)
    if (key.first < key.second) out.emplace_back(key, m);
  return out;
}

std::uint32_t LocalSystem::home(Cell c) const {
  auto tops = K_->top_cofaces(c);
  if (tops.empty()) throw std::invalid_argument("LocalSystem::home: simplex lies in no top cell");
  return tops.front();
}

const std::vector<std::uint32_t>& LocalSystem::base_cells() const {
  build_tree();
  return base_cells_;
}

std::uint32_t LocalSystem::component_base(std::uint32_t top) const {
  build_tree();
  return base_cells_[component_[top]];
}

const Matrix& LocalSystem::to_base(std::uint32_t top) const {
  build_tree();
  return to_base_[top];
}

void LocalSystem::build_tree() const {
  if (tree_valid_) return;
  tree_valid_ = true;
  const DeltaComplex& K = *K_;
  const std::size_t n = K.dimension();
  const std::size_t tops = K.count(n);
  std::vector<std::uint32_t> all(tops);
  for (std::uint32_t i = 0; i < tops; ++i) all[i] = i;
  DualGraph G = dual_graph(K, all);
  component_.assign(tops, UINT32_MAX);
  to_base_.assign(tops, Matrix());
  base_cells_.clear();
  std::vector<std::uint32_t> order(preferred_roots_);
  for (std::uint32_t i = 0; i < tops; ++i) order.push_back(i);
  for (std::uint32_t root : order) {
    if (component_[root] != UINT32_MAX) continue;
    const std::uint32_t comp = static_cast<std::uint32_t>(base_cells_.size());
    base_cells_.push_back(root);
    component_[root] = comp;
    to_base_[root] = Matrix::identity(rank_);
    std::deque<std::uint32_t> queue{root};
    while (!queue.empty()) {
      std::uint32_t c = queue.front();
      queue.pop_front();
      for (std::uint32_t e : G.adjacency[c]) {
        const auto& edge = G.edges[e];
        std::uint32_t d = edge.a == c ? edge.b : edge.a;
        if (component_[d] != UINT32_MAX) continue;
        component_[d] = comp;
        to_base_[d] = to_base_[c] * transition(d, c);
        queue.push_back(d);
      }
    }
  }
}

void LocalSystem::reroot(std::uint32_t top) {
  preferred_roots_ = {top};
  tree_valid_ = false;
}

std::vector<Cell> LocalSystem::cocycle_defects() const {
  std::vector<Cell> out;
  const DeltaComplex& K = *K_;
  if (K.dimension() < 2) return out;
  const auto k = static_cast<std::uint32_t>(K.dimension() - 2);
  for (std::uint32_t i = 0; i < K.count(k); ++i) {
    Cell c{k, i};
    if (K.in_delta(c)) continue;
    StarFrames f = star_frames(*this, c);
    for (const Matrix& m : f.loops)
      if (!m.is_identity()) {
        out.push_back(c);
        break;
      }
  }
  return out;
}

Matrix transport(const LocalSystem& L, const std::vector<std::uint32_t>& path) {
  Matrix T = Matrix::identity(L.rank());
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const DeltaComplex& K = L.complex();
    const auto n = static_cast<std::uint32_t>(K.dimension());
    const Simplex& a = K.simplex(Cell{n, path[i]});
    const Simplex& b = K.simplex(Cell{n, path[i + 1]});
    Simplex common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    if (common.size() != n) throw std::invalid_argument("transport: consecutive cells are not adjacent");
    T = L.transition(path[i], path[i + 1]) * T;
  }
  return T;
}

const Matrix& StarFrames::transport_to_home(std::uint32_t top) const {
  auto it = std::lower_bound(tops.begin(), tops.end(), top);
  if (it == tops.end() || *it != top) throw std::invalid_argument("StarFrames: cell is not in the star");
  return to_home[static_cast<std::size_t>(it - tops.begin())];
}

StarFrames star_frames(const LocalSystem& L, Cell omega) {
  const DeltaComplex& K = L.complex();
  StarFrames F;
  F.center = omega;
  F.tops = K.top_cofaces(omega);
  if (F.tops.empty()) throw std::invalid_argument("star_frames: simplex lies in no top cell");
  F.home = F.tops.front();
  DualGraph G = dual_graph(K, F.tops, omega);
  const std::size_t m = G.nodes.size();
  std::vector<char> seen(m, 0), tree_edge(G.edges.size(), 0);
  F.to_home.assign(m, Matrix());
  F.to_home[0] = Matrix::identity(L.rank());
  seen[0] = 1;
  std::deque<std::uint32_t> queue{0};
  while (!queue.empty()) {
    std::uint32_t c = queue.front();
    queue.pop_front();
    for (std::uint32_t e : G.adjacency[c]) {
      const auto& edge = G.edges[e];
      std::uint32_t d = edge.a == c ? edge.b : edge.a;
      if (seen[d]) continue;
      seen[d] = 1;
      tree_edge[e] = 1;
      F.to_home[d] = F.to_home[c] * L.transition(G.nodes[d], G.nodes[c]);
      queue.push_back(d);
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end())
    throw std::runtime_error("star_frames: star of simplex (dim " + std::to_string(omega.dim) + ", index " +
                             std::to_string(omega.index) + ") is disconnected");
  for (std::size_t e = 0; e < G.edges.size(); ++e) {
    if (tree_edge[e]) continue;
    const auto& edge = G.edges[e];
    // Out along the tree to a, across to b, and back along the tree.
    Matrix loop = F.to_home[edge.b] * L.transition(G.nodes[edge.a], G.nodes[edge.b]) *
                  inverse_unimodular(F.to_home[edge.a]);
    F.loops.push_back(std::move(loop));
  }
  return F;
}

MonodromyGenerators star_monodromy(const LocalSystem& L, Cell omega) {
  StarFrames F = star_frames(L, omega);
  MonodromyGenerators g;
  g.rank = L.rank();
  g.base_cell = F.home;
  g.loops = std::move(F.loops);
  return g;
}

Lattice invariant_lattice(const MonodromyGenerators& gens, std::size_t p) {
  if (p > gens.rank) throw std::invalid_argument("invariant_lattice: degree out of range");
  const std::size_t N = binomial(gens.rank, p);
  Matrix stacked(0, N);
  for (const Matrix& m : gens.loops) {
    Matrix w = exterior_power_matrix(m, p) - Matrix::identity(N);
    if (!w.is_zero()) stacked = stacked.vstack(w);
  }
  return kernel_lattice(stacked);
}

LocalSystem dual_system(const LocalSystem& L) {
  LocalSystem D(L.complex_ptr(), L.rank());
  for (const auto& [key, m] : L.transitions()) D.set_transition(key.first, key.second, inverse_unimodular(m).transpose());
  return D;
}

}  // namespace tac
