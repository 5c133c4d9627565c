#include <gtest/gtest.h>

#include <array>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "tac/model_library.hpp"

using namespace tac;

namespace {

std::uint32_t delta_vertex(const DeltaComplex& K) {
  for (std::uint32_t v = 0; v < K.count(0); ++v)
    if (K.in_delta(Cell{0, v}) && !K.in_boundary(Cell{0, v})) return v;
  throw std::logic_error("no interior discriminant vertex");
}

// Walks through the top simplices around `center`, visiting the chambers in
// the given cyclic order, and returns to the start.
std::vector<std::uint32_t> chamber_loop(const AffineModel& m, Cell center,
                                        const std::vector<std::pair<std::uint32_t, std::uint32_t>>& order) {
  const DeltaComplex& K = *m.complex;
  auto tops = K.top_cofaces(center);
  DualGraph G = dual_graph(K, tops, center);
  std::uint32_t start = 0;
  bool found = false;
  for (std::uint32_t i = 0; i < G.nodes.size() && !found; ++i)
    if (m.chambers[G.nodes[i]] == order[0]) {
      start = i;
      found = true;
    }
  if (!found) throw std::logic_error("start chamber missing");
  const std::size_t N = order.size();
  std::map<std::pair<std::uint32_t, std::size_t>, std::pair<std::uint32_t, std::size_t>> parent;
  std::deque<std::pair<std::uint32_t, std::size_t>> queue{{start, 0}};
  parent[{start, 0}] = {start, 0};
  while (!queue.empty()) {
    auto [node, stage] = queue.front();
    queue.pop_front();
    if (node == start && stage == N) {
      std::vector<std::uint32_t> path;
      std::pair<std::uint32_t, std::size_t> s{node, stage};
      while (true) {
        path.push_back(G.nodes[s.first]);
        if (s == std::pair<std::uint32_t, std::size_t>{start, 0}) break;
        s = parent[s];
      }
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (auto e : G.adjacency[node]) {
      std::uint32_t next = G.edges[e].a == node ? G.edges[e].b : G.edges[e].a;
      auto ch = m.chambers[G.nodes[next]];
      std::size_t ns = stage;
      if (stage < N && ch == order[stage % N]) {
        ns = stage;
      } else if (ch == order[(stage + 1) % N]) {
        ns = stage + 1;
      } else {
        continue;
      }
      if (ns > N) continue;
      if (!parent.count({next, ns})) {
        parent[{next, ns}] = {node, stage};
        queue.push_back({next, ns});
      }
    }
  }
  throw std::logic_error("no chamber loop");
}

std::vector<HomologyGroup> dual_cohomology(const AffineModel& m, std::size_t p = 1) {
  return homology(vertex_star_cech(pushforward_sheaf(dual_system(m.system), p, SheafKind::Open, true)));
}

}  // namespace

TEST(Models, FocusFocusClockwiseMonodromy) {
  AffineModel m = build_focus_focus();
  Cell p{0, delta_vertex(*m.complex)};
  // Clockwise starting upper right: (v1,u0), (v1,u1), (v0,u1), (v0,u0).
  auto path = chamber_loop(m, p, {{1, 0}, {1, 1}, {0, 1}, {0, 0}});
  EXPECT_EQ(transport(m.system, path), (Matrix{{1, 1}, {0, 1}}));
}

TEST(Models, FocusFocusLengthTwo) {
  AffineModel m = build_focus_focus(2);
  Cell p{0, delta_vertex(*m.complex)};
  auto path = chamber_loop(m, p, {{1, 0}, {1, 1}, {0, 1}, {0, 0}});
  EXPECT_EQ(transport(m.system, path), (Matrix{{1, 2}, {0, 1}}));
}

TEST(Models, TrivalentGraphHasThreeTransvections) {
  SympleModelSpec spec{LatticePolytope::standard_simplex(2), LatticePolytope::standard_simplex(1), 0};
  AffineModel m = build_symple_model(spec);
  const DeltaComplex& K = *m.complex;
  auto allowed = spec.transvections();
  std::size_t max_valence = 0;
  for (std::uint32_t v = 0; v < K.count(0); ++v) {
    if (!K.in_delta(Cell{0, v})) continue;
    std::size_t valence = 0;
    for (const auto& inc : K.cofaces(Cell{0, v}))
      if (K.in_delta(Cell{1, inc.index})) ++valence;
    max_valence = std::max(max_valence, valence);
  }
  EXPECT_EQ(max_valence, 3u);
  // Monodromy around each discriminant edge is one of the prescribed
  // transvections or its inverse; all three edge classes occur.
  std::set<std::size_t> classes;
  for (std::uint32_t e = 0; e < K.count(1); ++e) {
    Cell c{1, e};
    if (!K.in_delta(c) || K.in_boundary(c)) continue;
    auto gens = star_monodromy(m.system, c);
    ASSERT_EQ(gens.loops.size(), 1u);
    Matrix D = gens.loops[0] - Matrix::identity(3);
    bool match = false;
    for (std::size_t i = 0; i < allowed.size(); ++i) {
      Matrix E = allowed[i].matrix - Matrix::identity(3);
      if (D == E || D == -E) {
        match = true;
        classes.insert(i);
      }
    }
    EXPECT_TRUE(match);
  }
  EXPECT_EQ(allowed.size(), 3u);
  EXPECT_EQ(classes.size(), 3u);
}

TEST(Models, HigherSympleModelsBuild) {
  for (auto [a, b, c] : std::vector<std::array<std::size_t, 3>>{{1, 1, 1}, {2, 1, 0}, {1, 2, 0}, {2, 2, 0}}) {
    SympleModelSpec spec{LatticePolytope::standard_simplex(a), LatticePolytope::standard_simplex(b), c};
    AffineModel m = build_symple_model(spec);
    EXPECT_EQ(m.complex->dimension(), a + b + c);
    EXPECT_TRUE(m.system.cocycle_defects().empty());
  }
}

TEST(Models, SubdividedSympleModelVerifies) {
  SympleModelSpec spec{LatticePolytope::standard_simplex(1), LatticePolytope::standard_simplex(1), 0};
  AffineModel m = build_symple_model(spec, 1);
  EXPECT_EQ(m.chambers.size(), m.complex->count(2));
}

TEST(Models, GogglesGroups) {
  for (auto variant : {GogglesVariant::SharedLine, GogglesVariant::ParallelLines}) {
    AffineModel m = build_goggles(variant);
    auto H = homology(chain_complex(pushforward_sheaf(m.system, 1, SheafKind::Closed)));
    EXPECT_EQ(H[1].betti, 1u);
    EXPECT_TRUE(H[1].torsion.empty());
    auto Hc = dual_cohomology(m);
    EXPECT_EQ(Hc[0].betti, 1u);
    EXPECT_EQ(Hc[1].betti, 1u);
    EXPECT_TRUE(Hc[1].torsion.empty());
    EXPECT_EQ(Hc[2].betti, 0u);
  }
}

TEST(Models, GogglesCycleGeneratesHomology) {
  for (auto variant : {GogglesVariant::SharedLine, GogglesVariant::ParallelLines}) {
    AffineModel m = build_goggles(variant);
    ASSERT_EQ(m.cycles.size(), 1u);
    SheafFunctor F = pushforward_sheaf(m.system, 1, SheafKind::Closed);
    GradedComplex C = chain_complex(F);
    EXPECT_TRUE(is_cycle(C, F, m.cycles[0]));
    EXPECT_TRUE(is_free_basis(C, 1, {cycle_chain(C, F, m.cycles[0])}));
  }
}

TEST(Models, TorsionPairMatchesOracle) {
  for (auto [d1, d2] : std::vector<std::pair<IntVec, IntVec>>{{{1, 1}, {1, -1}}, {{1, 0}, {1, 2}}, {{1, 0}, {1, 3}}}) {
    AffineModel m = build_torsion_pair(d1, d2);
    auto Hc = dual_cohomology(m);
    // Coinvariants of the dual monodromies: Z^2 modulo the two conormals.
    Matrix N = Matrix::from_columns({{-d1[1], d1[0]}, {-d2[1], d2[0]}}, 2);
    IntVec expected;
    for (const Int& d : oracle::minor_gcd_divisors(N))
      if (d > 1) expected.push_back(d);
    EXPECT_EQ(Hc[1].betti, 0u);
    EXPECT_EQ(Hc[1].torsion, expected);
  }
}

TEST(Models, TorsionPairRejectsSpanningDirections) {
  EXPECT_THROW(build_torsion_pair({1, 0}, {0, 1}), std::invalid_argument);
  EXPECT_THROW(build_torsion_pair({2, 0}, {1, 3}), std::invalid_argument);
  EXPECT_THROW(build_torsion_pair({1, 1}, {2, 2}), std::invalid_argument);
}

TEST(Models, ConifoldGroups) {
  AffineModel m = build_conifold();
  SheafFunctor open = pushforward_sheaf(m.system, 1, SheafKind::Open);
  auto H1 = homology(vertex_star_cech(open));
  EXPECT_EQ(H1[1].betti, 0u);
  EXPECT_TRUE(H1[1].torsion.empty());
  auto Hh = homology(chain_complex(pushforward_sheaf(m.system, 1, SheafKind::Closed)));
  EXPECT_EQ(Hh[1].betti, 1u);
  auto Hb = homology(boundary_star_cech(open));
  EXPECT_EQ(Hb[1].betti, 1u);
}

namespace {

// Axis along which all given points share the value 0 or 4.
int face_axis(const AffineModel& m, const Simplex& top) {
  for (int axis = 0; axis < 3; ++axis) {
    const Int& first = m.coordinates[top[0]][axis];
    if (first != 0 && first != 4) continue;
    bool all = true;
    for (auto v : top) all = all && m.coordinates[v][axis] == first;
    if (all) return axis;
  }
  throw std::logic_error("top not on a cube face");
}

}  // namespace

TEST(Models, CubeShape) {
  AffineModel m = build_cube_k3();
  const DeltaComplex& K = *m.complex;
  EXPECT_EQ(K.count(0), 98u);
  EXPECT_EQ(K.count(1), 288u);
  EXPECT_EQ(K.count(2), 192u);
  EXPECT_EQ(static_cast<long>(K.count(0)) - static_cast<long>(K.count(1)) + static_cast<long>(K.count(2)), 2);
  // Two discriminant points on each of the 12 cube edges.
  std::map<std::vector<int>, int> per_edge;
  for (std::uint32_t v = 0; v < K.count(0); ++v) {
    if (!K.in_delta(Cell{0, v})) continue;
    std::vector<int> key;
    for (int a = 0; a < 3; ++a) {
      const int c = m.coordinates[v][a].get_si();
      key.push_back(c == 0 || c == 4 ? c : -1);
    }
    ++per_edge[key];
  }
  EXPECT_EQ(per_edge.size(), 12u);
  for (const auto& [edge, count] : per_edge) EXPECT_EQ(count, 2);
}

TEST(Models, CubeFocusFocusAlongEdges) {
  AffineModel m = build_cube_k3();
  const DeltaComplex& K = *m.complex;
  std::size_t checked = 0;
  for (std::uint32_t v = 0; v < K.count(0); ++v) {
    if (!K.in_delta(Cell{0, v})) continue;
    auto gens = star_monodromy(m.system, Cell{0, v});
    ASSERT_EQ(gens.loops.size(), 1u);
    Matrix N = gens.loops[0] - Matrix::identity(2);
    EXPECT_FALSE(N.is_zero());
    EXPECT_TRUE((N * N).is_zero());
    EXPECT_EQ(determinant(gens.loops[0]), 1);
    // The cube edge direction, written in the face frame of the home top.
    int edge_axis = 0;
    for (int a = 0; a < 3; ++a)
      if (m.coordinates[v][a] != 0 && m.coordinates[v][a] != 4) edge_axis = a;
    const int fa = face_axis(m, K.simplex(Cell{2, m.system.home(Cell{0, v})}));
    IntVec dir(2);
    int slot = 0;
    for (int a = 0; a < 3; ++a) {
      if (a == fa) continue;
      dir[slot++] = a == edge_axis ? 1 : 0;
    }
    EXPECT_TRUE((N * Matrix::from_columns({dir}, 2)).is_zero());
    ++checked;
  }
  EXPECT_EQ(checked, 24u);
}

TEST(Models, CubeHomologyRanks) {
  AffineModel m = build_cube_k3();
  SheafFunctor F = pushforward_sheaf(m.system, 1, SheafKind::Closed);
  GradedComplex C = chain_complex(F);
  auto H = homology(C);
  EXPECT_EQ(H[0].betti, 0u);
  EXPECT_EQ(H[1].betti, 20u);
  EXPECT_TRUE(H[1].torsion.empty());
  EXPECT_EQ(H[2].betti, 0u);
  GradedComplex R = chain_complex(F, Relative::Delta);
  HomologyCalculator HR(R);
  EXPECT_EQ(HR.group(1).betti, 44u);
  EXPECT_TRUE(HR.group(1).torsion.empty());

  ASSERT_EQ(m.cycles.size(), 20u);
  std::vector<IntVec> chains;
  for (const auto& z : m.cycles) {
    EXPECT_TRUE(is_cycle(C, F, z)) << z.name;
    chains.push_back(cycle_chain(C, F, z));
  }
  EXPECT_TRUE(is_free_basis(C, 1, chains));
  // The bundled basis maps onto a saturated rank 20 sublattice of the
  // relative group, so the quotient is free of rank 24.
  std::vector<IntVec> images;
  for (const auto& z : m.cycles) {
    IntVec cls = HR.class_of(1, cycle_chain(R, F, z));
    images.push_back(IntVec(cls.begin(), cls.begin() + 44));
  }
  IntVec snf = elementary_divisors(Matrix::from_columns(images, 44));
  ASSERT_EQ(snf.size(), 20u);
  for (const Int& d : snf) EXPECT_EQ(d, 1);
}

TEST(Models, FocusFocusStarHomology) {
  // H_0 of the closed star of the singular point is the stalk modulo the
  // image of T - id; the oracle reads it off the minors of T - id.
  AffineModel m = build_focus_focus();
  const DeltaComplex& K = *m.complex;
  std::size_t checked = 0;
  for (std::uint32_t v = 0; v < K.count(0); ++v) {
    if (!K.in_delta(Cell{0, v})) continue;
    auto gens = star_monodromy(m.system, Cell{0, v});
    ASSERT_EQ(gens.loops.size(), 1u);
    IntVec divisors = oracle::minor_gcd_divisors(gens.loops[0] - Matrix::identity(2));
    std::size_t rank = 0;
    IntVec torsion;
    for (const Int& d : divisors) {
      if (d != 0) ++rank;
      if (d > 1) torsion.push_back(d);
    }
    auto H = star_homology(pushforward_sheaf(m.system, 1, SheafKind::Closed), Cell{0, v});
    EXPECT_EQ(H[0].betti, 2 - rank);
    EXPECT_EQ(H[0].betti, 1u);
    EXPECT_EQ(H[0].torsion, torsion);
    EXPECT_EQ(H[1].betti, 0u);
    ++checked;
  }
  EXPECT_EQ(checked, 1u);
}
