#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tac/model_library.hpp"

namespace tac {

namespace {

std::size_t affine_rank(const std::vector<IntVec>& pts, std::size_t ambient) {
  if (pts.size() <= 1) return 0;
  std::vector<IntVec> cols;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    IntVec d(ambient);
    for (std::size_t k = 0; k < ambient; ++k) d[k] = pts[i][k] - pts[0][k];
    cols.push_back(d);
  }
  return rank_fraction_free(Matrix::from_columns(cols, ambient));
}

std::vector<IntVec> face_points(const LatticePolytope& P, const std::vector<std::uint32_t>& face) {
  std::vector<IntVec> pts;
  for (auto v : face) pts.push_back(P.vertices.at(v));
  return pts;
}

// A simplicial complex with one chamber label per top simplex and a flag per
// vertex marking the subcomplex that contributes to the discriminant.
struct Factor {
  DeltaComplex K;
  std::vector<char> wall_vertex;
  std::vector<std::uint32_t> chamber;  // per top; unused for R factors
  // Vertex sets of the poset element behind each vertex (polytope face or
  // cone rays), used to find the wall a discriminant simplex lies on.
  std::vector<std::vector<std::uint32_t>> support;
};

// Barycentric subdivision of the polytope: vertices are faces (vertices of
// the polytope first), top simplices are full flags. A top's chamber is the
// polytope vertex at the bottom of its flag.
Factor polytope_factor(const LatticePolytope& P) {
  std::vector<std::vector<std::uint32_t>> elems;
  std::vector<std::size_t> dims;
  for (std::uint32_t v = 0; v < P.vertices.size(); ++v) {
    elems.push_back({v});
    dims.push_back(0);
  }
  std::vector<std::pair<std::size_t, std::vector<std::uint32_t>>> faces;
  for (auto f : P.faces) {
    std::sort(f.begin(), f.end());
    faces.emplace_back(affine_rank(face_points(P, f), P.ambient_dim), f);
  }
  std::stable_sort(faces.begin(), faces.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [d, f] : faces) {
    elems.push_back(f);
    dims.push_back(d);
  }
  const std::size_t a = P.dimension();
  auto contains = [&](std::size_t big, std::size_t small) {
    return std::includes(elems[big].begin(), elems[big].end(), elems[small].begin(), elems[small].end());
  };
  std::vector<Simplex> tops;
  std::vector<std::uint32_t> chamber_of;
  std::function<void(Simplex&)> extend = [&](Simplex& chain) {
    const std::size_t last = chain.back();
    if (dims[last] == a) {
      tops.push_back(chain);
      chamber_of.push_back(chain.front());
      return;
    }
    for (std::uint32_t e = 0; e < elems.size(); ++e)
      if (dims[e] == dims[last] + 1 && contains(e, last)) {
        chain.push_back(e);
        extend(chain);
        chain.pop_back();
      }
  };
  for (std::uint32_t v = 0; v < P.vertices.size(); ++v) {
    Simplex chain{v};
    extend(chain);
  }
  Factor F;
  F.K = DeltaComplex(a, elems.size(), tops);
  F.chamber.resize(F.K.count(a));
  for (std::size_t i = 0; i < tops.size(); ++i) F.chamber[*F.K.find(tops[i])] = chamber_of[i];
  for (std::size_t e = 0; e < elems.size(); ++e) F.wall_vertex.push_back(dims[e] >= 1);
  F.support = elems;
  return F;
}

// Fan of the cotriangle: apex 0 and one ray per facet; the cone omitting ray
// j is the chamber of cotriangle vertex j. Subdivided once when the walls
// would not form a full subcomplex.
Factor fan_factor(std::size_t b) {
  std::vector<Simplex> tops;
  for (std::uint32_t j = 0; j <= b; ++j) {
    Simplex s{0};
    for (std::uint32_t i = 0; i <= b; ++i)
      if (i != j) s.push_back(1 + i);
    tops.push_back(s);
  }
  DeltaComplex Q(b, b + 2, tops);
  auto rays_of = [&](const Simplex& s) {
    std::vector<std::uint32_t> r;
    for (auto v : s)
      if (v > 0) r.push_back(v - 1);
    return r;
  };
  auto chamber_of_top = [&](const Simplex& s) {
    auto r = rays_of(s);
    for (std::uint32_t j = 0; j <= b; ++j)
      if (!std::binary_search(r.begin(), r.end(), j)) return j;
    throw std::logic_error("fan_factor: top cone without a chamber");
  };
  Factor F;
  if (b == 1) {
    F.K = Q;
    for (const Simplex& s : Q.simplices(b)) F.chamber.push_back(chamber_of_top(s));
    F.wall_vertex = {1, 0, 0};
    F.support = {{}, {0}, {1}};
    return F;
  }
  Subdivision sd = barycentric_subdivision(Q);
  F.K = sd.complex;
  for (std::uint32_t t = 0; t < F.K.count(b); ++t) F.chamber.push_back(chamber_of_top(Q.simplex(sd.carrier[b][t])));
  for (Cell parent : sd.vertex_parent) {
    auto r = rays_of(Q.simplex(parent));
    F.wall_vertex.push_back(r.size() + 1 <= b);
    F.support.push_back(r);
  }
  return F;
}

Factor line_factor() {
  Factor F;
  F.K = DeltaComplex(1, 3, {{0, 1}, {1, 2}});
  F.chamber = {0, 0};
  F.wall_vertex = {1, 1, 1};
  F.support = {{}, {}, {}};
  return F;
}

struct Product {
  std::size_t num_vertices = 0;
  std::vector<std::vector<std::uint32_t>> vtuple;  // per vertex, one vertex per factor
  std::vector<Simplex> tops;
  std::vector<std::vector<std::uint32_t>> src;  // per top, one top per factor
};

// Staircase triangulation: a pair of ordered simplices gives one top simplex
// per monotone lattice path.
Product multiply(const Product& A, const Factor& F) {
  const std::size_t VB = F.K.num_vertices();
  const std::size_t qdim = F.K.top_dimension();
  Product out;
  out.num_vertices = A.num_vertices * VB;
  out.vtuple.resize(out.num_vertices);
  for (std::size_t i = 0; i < A.num_vertices; ++i)
    for (std::size_t j = 0; j < VB; ++j) {
      auto t = A.vtuple[i];
      t.push_back(static_cast<std::uint32_t>(j));
      out.vtuple[i * VB + j] = t;
    }
  for (std::size_t t = 0; t < A.tops.size(); ++t) {
    const Simplex& s = A.tops[t];
    for (std::uint32_t bt = 0; bt < F.K.count(qdim); ++bt) {
      const Simplex& beta = F.K.simplex(Cell{static_cast<std::uint32_t>(qdim), bt});
      Simplex path;
      std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t i, std::size_t j) {
        path.push_back(static_cast<std::uint32_t>(s[i] * VB + beta[j]));
        if (i + 1 == s.size() && j + 1 == beta.size()) {
          out.tops.push_back(path);
          auto src = A.src[t];
          src.push_back(bt);
          out.src.push_back(src);
        } else {
          if (i + 1 < s.size()) walk(i + 1, j);
          if (j + 1 < beta.size()) walk(i, j + 1);
        }
        path.pop_back();
      };
      walk(0, 0);
    }
  }
  return out;
}

Product single(const Factor& F) {
  Product P;
  P.num_vertices = F.K.num_vertices();
  for (std::uint32_t v = 0; v < P.num_vertices; ++v) P.vtuple.push_back({v});
  const auto d = static_cast<std::uint32_t>(F.K.top_dimension());
  for (std::uint32_t t = 0; t < F.K.count(d); ++t) {
    P.tops.push_back(F.K.simplex(Cell{d, t}));
    P.src.push_back({t});
  }
  return P;
}

Matrix chamber_transition(const SympleModelSpec& spec, std::uint32_t v, std::uint32_t w, std::uint32_t u) {
  const std::size_t a = spec.triangle.ambient_dim, b = spec.cotriangle.ambient_dim;
  Matrix M = Matrix::identity(spec.dimension());
  const IntVec& uu = spec.cotriangle.vertices.at(u);
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j)
      M(i, a + j) -= (spec.triangle.vertices[w][i] - spec.triangle.vertices[v][i]) * uu[j];
  return M;
}

Matrix outer(const SympleModelSpec& spec, const IntVec& m, const IntVec& n) {
  const std::size_t a = spec.triangle.ambient_dim, b = spec.cotriangle.ambient_dim;
  Matrix E(spec.dimension(), spec.dimension());
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) E(i, a + j) = m[i] * n[j];
  return E;
}

}  // namespace

std::size_t LatticePolytope::dimension() const { return affine_rank(vertices, ambient_dim); }

std::vector<std::pair<std::uint32_t, std::uint32_t>> LatticePolytope::edges() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (const auto& f : faces)
    if (f.size() == 2) out.emplace_back(std::min(f[0], f[1]), std::max(f[0], f[1]));
  std::sort(out.begin(), out.end());
  return out;
}

LatticePolytope LatticePolytope::simplex(const std::vector<IntVec>& vertices) {
  if (vertices.empty()) throw std::invalid_argument("LatticePolytope::simplex: no vertices");
  LatticePolytope P;
  P.ambient_dim = vertices[0].size();
  P.vertices = vertices;
  for (const auto& v : vertices)
    if (v.size() != P.ambient_dim) throw std::invalid_argument("LatticePolytope::simplex: mixed dimensions");
  if (affine_rank(vertices, P.ambient_dim) + 1 != vertices.size())
    throw std::invalid_argument("LatticePolytope::simplex: vertices are affinely dependent");
  const auto k = static_cast<std::uint32_t>(vertices.size());
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    std::vector<std::uint32_t> f;
    for (std::uint32_t i = 0; i < k; ++i)
      if (mask & (1u << i)) f.push_back(i);
    if (f.size() >= 2) P.faces.push_back(f);
  }
  std::stable_sort(P.faces.begin(), P.faces.end(), [](const auto& x, const auto& y) { return x.size() < y.size(); });
  return P;
}

LatticePolytope LatticePolytope::standard_simplex(std::size_t d, long scale) {
  std::vector<IntVec> verts(d + 1, IntVec(d));
  for (std::size_t i = 0; i < d; ++i) verts[i + 1][i] = scale;
  return simplex(verts);
}

LatticePolytope LatticePolytope::unit_square() {
  LatticePolytope P;
  P.ambient_dim = 2;
  P.vertices = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  P.faces = {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 1, 2, 3}};
  return P;
}

std::vector<EdgeTransvection> SympleModelSpec::transvections() const {
  std::vector<EdgeTransvection> out;
  const std::size_t a = triangle.ambient_dim, b = cotriangle.ambient_dim;
  for (auto ex : triangle.edges())
    for (auto ey : cotriangle.edges()) {
      EdgeTransvection t;
      t.edge = ex;
      t.coedge = ey;
      t.m = IntVec(dimension());
      t.n = IntVec(dimension());
      for (std::size_t i = 0; i < a; ++i) t.m[i] = triangle.vertices[ex.second][i] - triangle.vertices[ex.first][i];
      for (std::size_t j = 0; j < b; ++j) t.n[a + j] = cotriangle.vertices[ey.second][j] - cotriangle.vertices[ey.first][j];
      t.matrix = Matrix::identity(dimension());
      for (std::size_t i = 0; i < dimension(); ++i)
        for (std::size_t j = 0; j < dimension(); ++j) t.matrix(i, j) += t.m[i] * t.n[j];
      out.push_back(std::move(t));
    }
  return out;
}

void verify_model(const AffineModel& m) {
  const DeltaComplex& K = *m.complex;
  K.validate_flags();
  auto defects = m.system.cocycle_defects();
  if (!defects.empty()) {
    std::ostringstream os;
    os << m.name << ": transition cocycle fails around " << defects.size() << " simplices";
    throw std::logic_error(os.str());
  }
  if (K.dimension() < 2) return;
  const auto k = static_cast<std::uint32_t>(K.dimension() - 2);
  for (std::uint32_t i = 0; i < K.count(k); ++i) {
    Cell c{k, i};
    if (!K.in_delta(c) || K.in_boundary(c)) continue;
    auto gens = star_monodromy(m.system, c);
    bool nontrivial = std::any_of(gens.loops.begin(), gens.loops.end(), [](const Matrix& x) { return !x.is_identity(); });
    if (!nontrivial) throw std::logic_error(m.name + ": trivial monodromy around a discriminant simplex");
  }
}

AffineModel build_symple_model(const SympleModelSpec& spec, std::size_t fineness) {
  const std::size_t a = spec.triangle.dimension(), b = spec.cotriangle.dimension();
  if (a < 1 || b < 1) throw std::invalid_argument("build_symple_model: both polytopes need dimension at least one");
  if (a != spec.triangle.ambient_dim || b != spec.cotriangle.ambient_dim)
    throw std::invalid_argument("build_symple_model: polytopes must be full-dimensional");
  if (spec.cotriangle.vertices.size() != b + 1) throw std::invalid_argument("build_symple_model: cotriangle must be a simplex");
  const std::size_t n = spec.dimension();

  std::vector<Factor> factors{polytope_factor(spec.triangle), fan_factor(b)};
  for (std::size_t i = 0; i < spec.trivial; ++i) factors.push_back(line_factor());
  Product prod = single(factors[0]);
  for (std::size_t i = 1; i < factors.size(); ++i) prod = multiply(prod, factors[i]);

  auto K = std::make_shared<DeltaComplex>(n, prod.num_vertices, prod.tops);
  AffineModel model;
  model.spec = spec;
  model.chambers.resize(K->count(n));
  for (std::size_t t = 0; t < prod.tops.size(); ++t) {
    auto idx = *K->find(prod.tops[t]);
    model.chambers[idx] = {factors[0].chamber[prod.src[t][0]], factors[1].chamber[prod.src[t][1]]};
  }
  auto in_wall = [&](std::uint32_t v) {
    for (std::size_t f = 0; f < factors.size(); ++f)
      if (!factors[f].wall_vertex[prod.vtuple[v][f]]) return false;
    return true;
  };
  std::vector<Simplex> delta;
  for (const Simplex& s : K->simplices(n - 2))
    if (std::all_of(s.begin(), s.end(), in_wall)) delta.push_back(s);
  K->set_delta(delta);
  K->set_boundary_from_topology();

  LocalSystem L(K, n);
  const auto nf = static_cast<std::uint32_t>(n - 1);
  for (std::uint32_t f = 0; f < K->count(nf); ++f) {
    const auto& co = K->cofaces(Cell{nf, f});
    if (co.size() != 2) continue;
    auto [v, u] = model.chambers[co[0].index];
    auto [w, u2] = model.chambers[co[1].index];
    if (v == w) continue;
    if (u != u2) throw std::logic_error("build_symple_model: facet on two walls at once");
    L.set_transition(co[0].index, co[1].index, chamber_transition(spec, v, w, u));
  }
  model.complex = K;
  model.system = L;

  // Around each top-dimensional discriminant simplex the loop must be
  // I +- m (x) n for the wall edges it sits on.
  for (std::uint32_t i = 0; i < K->count(n - 2); ++i) {
    Cell c{static_cast<std::uint32_t>(n - 2), i};
    if (!K->in_delta(c) || K->in_boundary(c)) continue;
    const Simplex& s = K->simplex(c);
    std::set<std::uint32_t> pverts, rays;
    for (auto v : s) {
      const auto& sup0 = factors[0].support[prod.vtuple[v][0]];
      if (sup0.size() == 2) pverts.insert(sup0.begin(), sup0.end());
      const auto& sup1 = factors[1].support[prod.vtuple[v][1]];
      rays.insert(sup1.begin(), sup1.end());
    }
    std::vector<std::uint32_t> co;
    for (std::uint32_t j = 0; j <= b; ++j)
      if (!rays.count(j)) co.push_back(j);
    if (pverts.size() != 2 || co.size() != 2) throw std::logic_error("build_symple_model: cannot locate the wall of a discriminant simplex");
    IntVec mvec(a), nvec(b);
    auto pv = std::vector<std::uint32_t>(pverts.begin(), pverts.end());
    for (std::size_t k = 0; k < a; ++k) mvec[k] = spec.triangle.vertices[pv[1]][k] - spec.triangle.vertices[pv[0]][k];
    for (std::size_t k = 0; k < b; ++k) nvec[k] = spec.cotriangle.vertices[co[1]][k] - spec.cotriangle.vertices[co[0]][k];
    Matrix E = outer(spec, mvec, nvec);
    auto gens = star_monodromy(L, c);
    if (gens.loops.size() != 1) throw std::logic_error("build_symple_model: discriminant star is not a single loop");
    Matrix D = gens.loops[0] - Matrix::identity(n);
    if (D != E && D != -E) throw std::logic_error("build_symple_model: monodromy differs from the prescribed transvection");
  }

  std::ostringstream name;
  name << "symple(" << a << "," << b << "," << spec.trivial << ")";
  model.name = name.str();
  verify_model(model);

  for (std::size_t r = 0; r < fineness; ++r) {
    SubdividedSystem S = subdivide(model.system);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ch;
    for (Cell c : S.subdivision.carrier[n]) ch.push_back(model.chambers[c.index]);
    model.complex = S.system.complex_ptr();
    model.system = S.system;
    model.chambers = std::move(ch);
    verify_model(model);
  }
  return model;
}

AffineModel build_focus_focus(long length, std::size_t fineness) {
  SympleModelSpec spec;
  spec.triangle = LatticePolytope::simplex({{0}, {length}});
  spec.cotriangle = LatticePolytope::simplex({{0}, {1}});
  AffineModel m = build_symple_model(spec, fineness);
  m.name = "focus-focus";
  return m;
}

AffineModel build_conifold() {
  SympleModelSpec spec;
  spec.triangle = LatticePolytope::unit_square();
  spec.cotriangle = LatticePolytope::simplex({{0}, {1}});
  AffineModel m = build_symple_model(spec);
  m.name = "conifold";
  m.spec.reset();
  m.symple_provenance = false;
  return m;
}

}  // namespace tac
