#include <gtest/gtest.h>

#include <set>

#include "tac/cech_cohomology.hpp"
#include "tac/punctured.hpp"

using namespace tac;

namespace {

// A few lattice simplices per dimension: standard, dilated and skew.
std::vector<LatticeSimplex> small_simplices(std::size_t d) {
  std::vector<LatticeSimplex> out{LatticePolytope::standard_simplex(d), LatticePolytope::standard_simplex(d, 2)};
  if (d == 1) out.push_back(LatticePolytope::simplex({{0}, {3}}));
  if (d == 2) out.push_back(LatticePolytope::simplex({{0, 0}, {2, 1}, {1, 3}}));
  if (d == 3) out.push_back(LatticePolytope::simplex({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 2}}));
  return out;
}

std::vector<std::size_t> unit_at(std::size_t size, std::size_t k, std::size_t value) {
  std::vector<std::size_t> v(size, 0);
  v.at(k) = value;
  return v;
}

// Kunneth over Q: ranks of a tensor product from the ranks of its factors.
std::vector<std::size_t> convolve(const std::vector<std::size_t>& x, const std::vector<std::size_t>& y) {
  std::vector<std::size_t> z(x.size() + y.size() - 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) z[i + j] += x[i] * y[j];
  return z;
}

SympleModelSpec spec_of(std::size_t a, std::size_t b, std::size_t c) {
  SympleModelSpec s;
  s.triangle = LatticePolytope::standard_simplex(a);
  s.cotriangle = LatticePolytope::standard_simplex(b);
  s.trivial = c;
  return s;
}

}  // namespace

TEST(Punctured, FactorComplexes) {
  for (std::size_t d = 1; d <= 3; ++d)
    for (const auto& P : small_simplices(d)) {
      CDRanks r = complex_CD_ranks(P, P);
      EXPECT_EQ(r.C, unit_at(d + 1, 1, 1)) << d;
      EXPECT_EQ(r.D, unit_at(d + 1, 0, 1)) << d;
      EXPECT_EQ(r.C_dual, unit_at(d + 1, d - 1, 1)) << d;
      EXPECT_EQ(r.D_dual, unit_at(d + 1, d, 1)) << d;
      EXPECT_EQ(r.D_bar, unit_at(d, d - 1, d)) << d;
    }
}

TEST(Punctured, TensorRanks) {
  for (std::size_t a = 1; a <= 3; ++a)
    for (std::size_t b = 1; b <= 3; ++b) {
      if (a + b > 5) continue;
      for (const auto& T : small_simplices(a))
        for (const auto& C : small_simplices(b)) {
          CDRanks r = complex_CD_ranks(T, C);
          ASSERT_EQ(r.tensor.size(), a + b - 1);
          EXPECT_EQ(r.tensor, unit_at(a + b - 1, a + b - 2, a)) << a << "," << b;
          std::vector<std::size_t> cd(r.C_dual.begin(), r.C_dual.end() - 1);
          EXPECT_EQ(r.tensor, convolve(r.D_bar, cd));
        }
    }
  // Both 2-simplices: rank 2 in degree 2.
  CDRanks r = complex_CD_ranks(LatticePolytope::standard_simplex(2), LatticePolytope::standard_simplex(2));
  EXPECT_EQ(r.tensor[2], 2u);
}

TEST(Punctured, CechOfSMatchesTable) {
  for (std::size_t a = 1; a <= 3; ++a)
    for (std::size_t b = 1; b <= 3; ++b) {
      if (a + b > 5) continue;
      for (const auto& T : small_simplices(a))
        for (const auto& C : small_simplices(b)) {
          PuncturedReport r = punctured_cech_S(T, C);
          r.cech.check_square_zero();
          EXPECT_TRUE(r.matches) << r.to_string();
          // The cover complex is the tensor complex without its degree-0
          // term, shifted down by one.
          for (std::size_t k = 1; k < r.ranks.size(); ++k)
            EXPECT_EQ(r.ranks[k], k + 1 < r.tensor.size() ? r.tensor[k + 1] : 0u) << r.to_string();
          const std::size_t t1 = r.tensor.size() > 1 ? r.tensor[1] : 0;
          EXPECT_EQ(r.ranks[0], t1 + b - r.tensor[0]) << r.to_string();
        }
    }
}

TEST(Punctured, TableExamples) {
  auto s1 = LatticePolytope::standard_simplex(1), s2 = LatticePolytope::standard_simplex(2);
  PuncturedReport both2 = punctured_cech_S(s2, s2);
  EXPECT_EQ(both2.ranks[0], 2u);
  EXPECT_EQ(both2.ranks[1], 2u);
  for (std::size_t k = 2; k < both2.ranks.size(); ++k) EXPECT_EQ(both2.ranks[k], 0u);
  PuncturedReport mixed = punctured_cech_S(s2, s1);
  EXPECT_EQ(mixed.ranks[0], 1u + 2u);
  for (std::size_t k = 1; k < mixed.ranks.size(); ++k) EXPECT_EQ(mixed.ranks[k], 0u);
  PuncturedReport ones = punctured_cech_S(s1, s1);
  for (auto x : ones.ranks) EXPECT_EQ(x, 0u);
  EXPECT_THROW(punctured_cech_S(LatticePolytope::unit_square(), s1), std::invalid_argument);
}

TEST(Punctured, ThreefoldVertex) {
  ThreefoldVertexReport r2 = threefold_vertex_cech(spec_of(2, 1, 0));
  EXPECT_EQ(r2.rank_C0, 6u);
  EXPECT_EQ(r2.rank_C1, 9u);
  EXPECT_EQ(r2.rank_C2, 6u);
  EXPECT_EQ(r2.kernel_reduced, 4u);
  EXPECT_EQ(r2.kernel_d1, 4u);
  EXPECT_EQ(r2.rank_d0, 6u - 2u);
  EXPECT_EQ(r2.h1, 0u);
  EXPECT_TRUE(r2.third_leg_is_transvection);

  ThreefoldVertexReport r1 = threefold_vertex_cech(spec_of(1, 2, 0));
  EXPECT_EQ(r1.kernel_reduced, 5u);
  EXPECT_EQ(r1.kernel_d1, 5u);
  EXPECT_EQ(r1.rank_d0, 6u - 1u);
  EXPECT_EQ(r1.h1, 0u);
  EXPECT_TRUE(r1.third_leg_is_transvection);

  EXPECT_THROW(threefold_vertex_cech(spec_of(1, 1, 1)), std::invalid_argument);
  EXPECT_THROW(threefold_vertex_cech(spec_of(2, 2, 0)), std::invalid_argument);
}

TEST(Punctured, FirstCohomologyVanishesOnSympleModels) {
  struct Dims {
    std::size_t a, b, c, fineness;
  };
  for (Dims d : std::vector<Dims>{{2, 1, 0, 0}, {1, 2, 0, 0}, {1, 1, 1, 0}, {2, 1, 0, 1}, {1, 1, 1, 1}, {2, 2, 0, 0},
                                  {3, 1, 0, 0}, {1, 3, 0, 0}, {2, 1, 1, 0}, {1, 2, 1, 0}, {1, 1, 2, 0}}) {
    AffineModel m = build_symple_model(spec_of(d.a, d.b, d.c), d.fineness);
    PuncturedSweep s = punctured_h1_sweep(m);
    EXPECT_FALSE(s.vertices.empty());
    EXPECT_TRUE(s.all_zero()) << m.name;
  }
}

TEST(Punctured, ConifoldVertexHasFirstCohomology) {
  PuncturedSweep s = punctured_h1_sweep(build_conifold());
  std::size_t nonzero = 0;
  for (auto h : s.h1) nonzero += h != 0;
  EXPECT_EQ(nonzero, 1u);
}

TEST(Punctured, TwoDimensionalPunctureIsNotAcyclic) {
  // Around a focus-focus point the punctured disc carries the invariants of
  // the monodromy in degree one as well.
  PuncturedSweep s = punctured_h1_sweep(build_focus_focus());
  ASSERT_FALSE(s.vertices.empty());
  EXPECT_FALSE(s.all_zero());
}

TEST(Punctured, QuotientSheafStalks) {
  AffineModel ff = build_focus_focus();
  AbstractFunctor S = quotient_sheaf_S(ff);
  const DeltaComplex& K = *ff.complex;
  for (std::uint32_t k = 0; k <= K.dimension(); ++k)
    for (std::uint32_t i = 0; i < K.count(k); ++i) {
      Cell c{k, i};
      EXPECT_EQ(S.rank_of(c), K.in_delta(c) ? 1u : 0u);
    }

  AffineModel m = build_symple_model(spec_of(1, 2, 0));
  AbstractFunctor S2 = quotient_sheaf_S(m);
  const DeltaComplex& K2 = *m.complex;
  std::size_t rank2 = 0, rank1 = 0;
  for (std::uint32_t k = 0; k <= K2.dimension(); ++k)
    for (std::uint32_t i = 0; i < K2.count(k); ++i) {
      Cell c{k, i};
      if (!K2.in_delta(c)) {
        EXPECT_EQ(S2.rank_of(c), 0u);
        continue;
      }
      std::set<std::uint32_t> labels;
      for (auto t : K2.top_cofaces(c)) labels.insert(m.chambers[t].second);
      EXPECT_EQ(S2.rank_of(c), labels.size() - 1);
      rank2 += S2.rank_of(c) == 2;
      rank1 += S2.rank_of(c) == 1;
    }
  EXPECT_GT(rank2, 0u);
  EXPECT_GT(rank1, 0u);
  EXPECT_THROW(quotient_sheaf_S(build_goggles(GogglesVariant::SharedLine)), std::invalid_argument);
}
