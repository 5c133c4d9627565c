#include <gtest/gtest.h>

#include <memory>

#include "tac/homology_engine.hpp"

using namespace tac;

namespace {

std::shared_ptr<DeltaComplex> make(std::size_t n, std::size_t v, std::vector<Simplex> gens) {
  return std::make_shared<DeltaComplex>(n, v, gens);
}

std::shared_ptr<DeltaComplex> torus() {
  std::vector<Simplex> t;
  for (std::uint32_t i = 0; i < 7; ++i) {
    Simplex a{i, (i + 1) % 7, (i + 3) % 7}, b{i, (i + 2) % 7, (i + 3) % 7};
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    t.push_back(a);
    t.push_back(b);
  }
  return make(2, 7, t);
}

std::shared_ptr<DeltaComplex> projective_plane() {
  return make(2, 6, {{0, 1, 3}, {0, 1, 5}, {0, 2, 4}, {0, 2, 5}, {0, 3, 4},
                     {1, 2, 3}, {1, 2, 4}, {1, 4, 5}, {2, 3, 5}, {3, 4, 5}});
}

std::vector<std::size_t> bettis(const std::vector<HomologyGroup>& H) {
  std::vector<std::size_t> b;
  for (const auto& h : H) b.push_back(h.betti);
  return b;
}

std::vector<HomologyGroup> constant_homology(std::shared_ptr<DeltaComplex> K) {
  LocalSystem L(K, 1);
  return homology(chain_complex(pushforward_sheaf(L, 1, SheafKind::Closed)));
}

}  // namespace

TEST(SimplicialComplex, ClosureCounts) {
  auto K = torus();
  EXPECT_EQ(K->count(0), 7u);
  EXPECT_EQ(K->count(1), 21u);
  EXPECT_EQ(K->count(2), 14u);
  for (std::uint32_t e = 0; e < K->count(1); ++e) EXPECT_EQ(K->cofaces(Cell{1, e}).size(), 2u);
}

TEST(SimplicialComplex, BoundarySigns) {
  EXPECT_EQ(boundary_sign({0, 1, 2}, {1, 2}), 1);
  EXPECT_EQ(boundary_sign({0, 1, 2}, {0, 2}), -1);
  EXPECT_EQ(boundary_sign({0, 1, 2}, {0, 1}), 1);
}

TEST(SimplicialComplex, SubdivisionCounts) {
  auto K = make(2, 3, {{0, 1, 2}});
  Subdivision sd = barycentric_subdivision(*K);
  EXPECT_EQ(sd.complex.count(0), 7u);
  EXPECT_EQ(sd.complex.count(1), 12u);
  EXPECT_EQ(sd.complex.count(2), 6u);
}

TEST(Homology, SphereFromTetrahedronBoundary) {
  auto H = constant_homology(make(2, 4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}));
  EXPECT_EQ(bettis(H), (std::vector<std::size_t>{1, 0, 1}));
}

TEST(Homology, Torus) {
  auto H = constant_homology(torus());
  EXPECT_EQ(bettis(H), (std::vector<std::size_t>{1, 2, 1}));
  for (const auto& h : H) EXPECT_TRUE(h.torsion.empty());
}

TEST(Homology, ProjectivePlaneTorsion) {
  auto H = constant_homology(projective_plane());
  EXPECT_EQ(bettis(H), (std::vector<std::size_t>{1, 0, 0}));
  EXPECT_EQ(H[1].torsion, IntVec{Int(2)});
  auto HQ = homology(chain_complex(pushforward_sheaf(LocalSystem(projective_plane(), 1), 1, SheafKind::Closed)),
                     Field::Q);
  EXPECT_TRUE(HQ[1].torsion.empty());
}

TEST(Homology, CircleWithSignMonodromy) {
  auto K = make(1, 3, {{0, 1}, {0, 2}, {1, 2}});
  LocalSystem L(K, 1);
  L.set_transition(0, 2, Matrix{{-1}});
  auto H = homology(chain_complex(pushforward_sheaf(L, 1, SheafKind::Closed)));
  EXPECT_EQ(H[0].betti, 0u);
  EXPECT_EQ(H[0].torsion, IntVec{Int(2)});
  EXPECT_EQ(H[1].betti, 0u);
  EXPECT_TRUE(barycentric_invariance_check(L, 1).equal);
}

TEST(Homology, SquareZeroAndEuler) {
  auto K = torus();
  LocalSystem L(K, 2);
  auto C = chain_complex(pushforward_sheaf(L, 1, SheafKind::Closed));
  EXPECT_NO_THROW(C.check_square_zero());
  EXPECT_EQ(C.euler_characteristic(), 0);
}

TEST(Homology, RepresentativesAreCyclesAndBasis) {
  auto K = torus();
  auto C = chain_complex(pushforward_sheaf(LocalSystem(K, 1), 1, SheafKind::Closed));
  auto H = homology(C, Field::Z, true);
  ASSERT_EQ(H[1].cycle_basis.size(), 2u);
  for (const auto& z : H[1].cycle_basis)
    for (const auto& e : apply_differential(C, 1, z)) EXPECT_EQ(e, 0);
  EXPECT_TRUE(is_free_basis(C, 1, H[1].cycle_basis));
  auto doubled = H[1].cycle_basis;
  for (auto& e : doubled[0]) e *= 2;
  EXPECT_FALSE(is_free_basis(C, 1, doubled));
}

TEST(Homology, ProjectivePlaneTorsionRepresentative) {
  auto C = chain_complex(pushforward_sheaf(LocalSystem(projective_plane(), 1), 1, SheafKind::Closed));
  auto H = homology(C, Field::Z, true);
  ASSERT_EQ(H[1].cycle_basis.size(), 1u);
  for (const auto& e : apply_differential(C, 1, H[1].cycle_basis[0])) EXPECT_EQ(e, 0);
}

TEST(Homology, SubdivisionInvariance) {
  EXPECT_TRUE(barycentric_invariance_check(LocalSystem(torus(), 1), 1).equal);
  EXPECT_TRUE(barycentric_invariance_check(LocalSystem(projective_plane(), 1), 1).equal);
}

TEST(Homology, DoubleComplexMatchesChainComplex) {
  auto F = pushforward_sheaf(LocalSystem(torus(), 1), 1, SheafKind::Closed);
  auto T = double_complex_total(F);
  EXPECT_NO_THROW(T.check_square_zero());
  auto HT = homology(T);
  auto H = homology(chain_complex(F));
  for (std::size_t k = 0; k < H.size(); ++k) EXPECT_EQ(HT[k], H[k]) << k;
  for (std::size_t k = H.size(); k < HT.size(); ++k) EXPECT_EQ(HT[k].betti, 0u);
}

TEST(Homology, StarOfVertexIsContractible) {
  auto F = pushforward_sheaf(LocalSystem(torus(), 1), 1, SheafKind::Closed);
  auto H = star_homology(F, Cell{0, 0});
  EXPECT_EQ(bettis(H), (std::vector<std::size_t>{1, 0, 0}));
}

TEST(Homology, StalkCoefficientRoundTrip) {
  auto F = pushforward_sheaf(LocalSystem(torus(), 2), 1, SheafKind::Closed);
  auto C = chain_complex(F);
  std::vector<std::pair<Cell, IntVec>> in{{Cell{1, 3}, IntVec{Int(2), Int(-1)}}};
  IntVec v = chain_from_stalk_coefficients(C, F, in);
  auto back = stalk_coefficients(C, F, 1, v);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].first, (Cell{1, 3}));
  EXPECT_EQ(back[0].second, in[0].second);
}
