#include "tac/simplicial_complex.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace tac {

int boundary_sign(const Simplex& sigma, const Simplex& tau) {
  if (tau.size() + 1 != sigma.size()) throw std::invalid_argument("boundary_sign: not a facet");
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    Simplex f;
    f.reserve(tau.size());
    for (std::size_t j = 0; j < sigma.size(); ++j)
      if (j != i) f.push_back(sigma[j]);
    if (f == tau) return (i % 2) ? -1 : 1;
  }
  throw std::invalid_argument("boundary_sign: not a facet");
}

DeltaComplex::DeltaComplex(std::size_t dimension, std::size_t num_vertices, const std::vector<Simplex>& generators)
    : dimension_(dimension), num_vertices_(num_vertices) {
  std::vector<std::set<Simplex>> all(1);
  for (std::uint32_t v = 0; v < num_vertices; ++v) all[0].insert(Simplex{v});
  for (const Simplex& g : generators) {
    if (g.empty()) continue;
    if (!std::is_sorted(g.begin(), g.end()) || std::adjacent_find(g.begin(), g.end()) != g.end())
      throw std::invalid_argument("DeltaComplex: simplex vertices must be strictly ascending");
    if (g.back() >= num_vertices) throw std::invalid_argument("DeltaComplex: vertex id out of range");
    if (g.size() > all.size()) all.resize(g.size());
    const std::size_t m = g.size();
    for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
      Simplex f;
      for (std::size_t i = 0; i < m; ++i)
        if (mask & (1u << i)) f.push_back(g[i]);
      all[f.size() - 1].insert(std::move(f));
    }
  }
  if (all.size() > dimension_ + 1) throw std::invalid_argument("DeltaComplex: simplex exceeds the stated dimension");
  const std::size_t D = all.size();
  simplices_.resize(D);
  lookup_.resize(D);
  for (std::size_t k = 0; k < D; ++k) {
    simplices_[k].assign(all[k].begin(), all[k].end());
    for (std::uint32_t i = 0; i < simplices_[k].size(); ++i) lookup_[k].emplace(simplices_[k][i], i);
  }
  facets_.resize(D);
  cofaces_.resize(D);
  for (std::size_t k = 0; k < D; ++k) {
    facets_[k].resize(simplices_[k].size());
    cofaces_[k].resize(simplices_[k].size());
  }
  for (std::size_t k = 1; k < D; ++k)
    for (std::uint32_t i = 0; i < simplices_[k].size(); ++i) {
      const Simplex& s = simplices_[k][i];
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        Simplex f;
        for (std::size_t j = 0; j < s.size(); ++j)
          if (j != drop) f.push_back(s[j]);
        std::uint32_t fi = lookup_[k - 1].at(f);
        int sign = (drop % 2) ? -1 : 1;
        facets_[k][i].push_back({fi, sign});
        cofaces_[k - 1][fi].push_back({i, sign});
      }
    }
  delta_.resize(D);
  boundary_.resize(D);
  offsets_.assign(D + 1, 0);
  for (std::size_t k = 0; k < D; ++k) {
    delta_[k].assign(simplices_[k].size(), 0);
    boundary_[k].assign(simplices_[k].size(), 0);
    offsets_[k + 1] = offsets_[k] + simplices_[k].size();
  }
}

std::size_t DeltaComplex::total_count() const { return offsets_.empty() ? 0 : offsets_.back(); }

Cell DeltaComplex::cell_of(std::size_t global) const {
  for (std::size_t k = 0; k + 1 < offsets_.size(); ++k)
    if (global < offsets_[k + 1])
      return Cell{static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(global - offsets_[k])};
  throw std::out_of_range("DeltaComplex::cell_of: id out of range");
}

std::optional<std::uint32_t> DeltaComplex::find(const Simplex& s) const {
  if (s.empty() || s.size() > lookup_.size()) return std::nullopt;
  auto it = lookup_[s.size() - 1].find(s);
  if (it == lookup_[s.size() - 1].end()) return std::nullopt;
  return it->second;
}

std::vector<std::vector<std::uint32_t>> DeltaComplex::cofaces_all(Cell c) const {
  std::vector<std::vector<std::uint32_t>> out(simplices_.size());
  out[c.dim].push_back(c.index);
  for (std::size_t k = c.dim; k + 1 < simplices_.size(); ++k) {
    std::set<std::uint32_t> next;
    for (std::uint32_t i : out[k])
      for (const auto& inc : cofaces_[k][i]) next.insert(inc.index);
    out[k + 1].assign(next.begin(), next.end());
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> DeltaComplex::faces_all(Cell c) const {
  std::vector<std::vector<std::uint32_t>> out(c.dim + 1);
  const Simplex& s = simplex(c);
  const std::size_t m = s.size();
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    Simplex f;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1u << i)) f.push_back(s[i]);
    out[f.size() - 1].push_back(lookup_[f.size() - 1].at(f));
  }
  for (auto& v : out) std::sort(v.begin(), v.end());
  return out;
}

std::vector<Cell> DeltaComplex::maximal_cofaces(Cell c) const {
  std::vector<Cell> out;
  auto all = cofaces_all(c);
  for (std::size_t k = 0; k < all.size(); ++k)
    for (std::uint32_t i : all[k])
      if (cofaces_[k][i].empty()) out.push_back(Cell{static_cast<std::uint32_t>(k), i});
  return out;
}

std::vector<std::uint32_t> DeltaComplex::top_cofaces(Cell c) const {
  if (dimension_ >= simplices_.size()) return {};
  return cofaces_all(c)[dimension_];
}

void DeltaComplex::flag_closure(std::vector<std::vector<char>>& flags, const std::vector<Simplex>& generators) {
  for (const Simplex& g : generators) {
    auto idx = find(g);
    if (!idx) throw std::invalid_argument("DeltaComplex: flagged simplex is not in the complex");
    auto faces = faces_all(Cell{static_cast<std::uint32_t>(g.size() - 1), *idx});
    for (std::size_t k = 0; k < faces.size(); ++k)
      for (std::uint32_t i : faces[k]) flags[k][i] = 1;
  }
}

void DeltaComplex::set_delta(const std::vector<Simplex>& generators) { flag_closure(delta_, generators); }
void DeltaComplex::set_boundary(const std::vector<Simplex>& generators) { flag_closure(boundary_, generators); }

void DeltaComplex::set_boundary_from_topology() {
  if (dimension_ == 0 || simplices_.size() <= dimension_) return;
  std::vector<Simplex> gens;
  for (std::uint32_t i = 0; i < simplices_[dimension_ - 1].size(); ++i)
    if (cofaces_[dimension_ - 1][i].size() == 1) gens.push_back(simplices_[dimension_ - 1][i]);
  flag_closure(boundary_, gens);
}

void DeltaComplex::validate_flags() const {
  for (std::size_t k = 1; k < simplices_.size(); ++k)
    for (std::uint32_t i = 0; i < simplices_[k].size(); ++i)
      for (const auto& f : facets_[k][i]) {
        if (delta_[k][i] && !delta_[k - 1][f.index])
          throw std::invalid_argument("discriminant flags do not form a closed subcomplex (simplex dim " +
                                      std::to_string(k) + ", index " + std::to_string(i) + ")");
        if (boundary_[k][i] && !boundary_[k - 1][f.index])
          throw std::invalid_argument("boundary flags do not form a closed subcomplex (simplex dim " +
                                      std::to_string(k) + ", index " + std::to_string(i) + ")");
      }
  for (std::size_t k = 0; k < simplices_.size(); ++k)
    for (std::uint32_t i = 0; i < simplices_[k].size(); ++i)
      if (delta_[k][i] && k + 2 > dimension_)
        throw std::invalid_argument("discriminant has codimension < 2 (simplex dim " + std::to_string(k) + ")");
}

bool DeltaComplex::has_delta() const {
  for (const auto& v : delta_)
    for (char c : v)
      if (c) return true;
  return false;
}

bool DeltaComplex::has_boundary() const {
  for (const auto& v : boundary_)
    for (char c : v)
      if (c) return true;
  return false;
}

bool StarComplex::contains(Cell c) const {
  if (c.dim >= members.size()) return false;
  return std::binary_search(members[c.dim].begin(), members[c.dim].end(), c.index);
}

std::size_t StarComplex::size() const {
  std::size_t s = 0;
  for (const auto& m : members) s += m.size();
  return s;
}

StarComplex closed_star(const DeltaComplex& K, Cell tau) {
  if (tau.dim > K.top_dimension() || tau.index >= K.count(tau.dim))
    throw std::invalid_argument("closed_star: unknown simplex");
  StarComplex S;
  S.center = tau;
  std::vector<std::set<std::uint32_t>> acc(K.top_dimension() + 1);
  for (const Cell& m : K.maximal_cofaces(tau)) {
    auto faces = K.faces_all(m);
    for (std::size_t k = 0; k < faces.size(); ++k) acc[k].insert(faces[k].begin(), faces[k].end());
  }
  S.members.resize(acc.size());
  for (std::size_t k = 0; k < acc.size(); ++k) S.members[k].assign(acc[k].begin(), acc[k].end());
  return S;
}

std::optional<Cell> open_star_intersection(const DeltaComplex& K, const std::vector<std::uint32_t>& vertices) {
  if (vertices.empty()) return std::nullopt;
  Simplex s(vertices.begin(), vertices.end());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  auto idx = K.find(s);
  if (!idx) return std::nullopt;
  return Cell{static_cast<std::uint32_t>(s.size() - 1), *idx};
}

Subdivision barycentric_subdivision(const DeltaComplex& K) {
  Subdivision out;
  // Barycenter ids follow the global id order (dimension, then index).
  const std::size_t nv = K.total_count();
  out.vertex_parent.resize(nv);
  for (std::size_t g = 0; g < nv; ++g) out.vertex_parent[g] = K.cell_of(g);
  // Flags of maximal chains: enumerate chains ending at each simplex.
  std::vector<Simplex> generators;
  std::vector<std::pair<Simplex, Cell>> tops;
  for (std::size_t k = 0; k <= K.top_dimension(); ++k)
    for (std::uint32_t i = 0; i < K.count(k); ++i) {
      Cell c{static_cast<std::uint32_t>(k), i};
      if (!K.cofaces(c).empty()) continue;
      // Full flags down from c.
      std::vector<std::vector<Cell>> chains{{c}};
      for (std::size_t d = k; d > 0; --d) {
        std::vector<std::vector<Cell>> next;
        for (auto& ch : chains)
          for (const auto& f : K.facets(ch.back())) {
            auto e = ch;
            e.push_back(Cell{static_cast<std::uint32_t>(d - 1), f.index});
            next.push_back(std::move(e));
          }
        chains = std::move(next);
      }
      for (auto& ch : chains) {
        Simplex s;
        for (const Cell& x : ch) s.push_back(static_cast<std::uint32_t>(K.global_id(x)));
        std::sort(s.begin(), s.end());
        generators.push_back(s);
      }
    }
  out.complex = DeltaComplex(K.dimension(), nv, generators);
  const DeltaComplex& N = out.complex;
  out.carrier.resize(N.top_dimension() + 1);
  std::vector<Simplex> delta_gens, boundary_gens;
  for (std::size_t k = 0; k <= N.top_dimension(); ++k)
    for (std::uint32_t i = 0; i < N.count(k); ++i) {
      // The largest barycenter in the chain has the largest global id.
      Cell car = out.vertex_parent[N.simplices(k)[i].back()];
      out.carrier[k].push_back(car);
      if (K.in_delta(car)) delta_gens.push_back(N.simplices(k)[i]);
      if (K.in_boundary(car)) boundary_gens.push_back(N.simplices(k)[i]);
    }
  out.complex.set_delta(delta_gens);
  out.complex.set_boundary(boundary_gens);
  return out;
}

DualGraph dual_graph(const DeltaComplex& K, const std::vector<std::uint32_t>& region, std::optional<Cell> through) {
  DualGraph G;
  G.nodes = region;
  std::sort(G.nodes.begin(), G.nodes.end());
  G.adjacency.resize(G.nodes.size());
  const std::size_t n = K.dimension();
  if (n == 0 || K.top_dimension() < n) return G;
  std::set<std::uint32_t> facet_set;
  for (std::uint32_t t : G.nodes)
    for (const auto& f : K.facets(Cell{static_cast<std::uint32_t>(n), t})) facet_set.insert(f.index);
  std::vector<std::uint32_t> allowed;
  if (through) {
    auto co = K.cofaces_all(*through);
    if (n - 1 < co.size()) allowed = co[n - 1];
  }
  for (std::uint32_t f : facet_set) {
    Cell fc{static_cast<std::uint32_t>(n - 1), f};
    if (K.in_boundary(fc)) continue;
    if (through && !std::binary_search(allowed.begin(), allowed.end(), f)) continue;
    const auto& co = K.cofaces(fc);
    if (co.size() != 2) continue;
    auto pa = std::lower_bound(G.nodes.begin(), G.nodes.end(), co[0].index);
    auto pb = std::lower_bound(G.nodes.begin(), G.nodes.end(), co[1].index);
    if (pa == G.nodes.end() || *pa != co[0].index || pb == G.nodes.end() || *pb != co[1].index) continue;
    DualGraph::Edge e{static_cast<std::uint32_t>(pa - G.nodes.begin()), static_cast<std::uint32_t>(pb - G.nodes.begin()),
                      f};
    G.adjacency[e.a].push_back(static_cast<std::uint32_t>(G.edges.size()));
    G.adjacency[e.b].push_back(static_cast<std::uint32_t>(G.edges.size()));
    G.edges.push_back(e);
  }
  return G;
}

}  // namespace tac
