#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "tac/exact_algebra.hpp"

using namespace tac;

namespace {

IntVec ints(std::initializer_list<long> v) {
  IntVec out;
  for (long x : v) out.emplace_back(x);
  return out;
}

void expect_smith_identity(const Matrix& A, const SmithDecomposition& s) {
  Matrix D = s.U * A * s.V;
  for (std::size_t i = 0; i < D.rows(); ++i)
    for (std::size_t j = 0; j < D.cols(); ++j) {
      Int want = (i == j && i < s.rank) ? s.divisors[i] : Int(0);
      ASSERT_EQ(D(i, j), want) << A.to_string();
    }
  EXPECT_EQ(abs(determinant(s.U)), 1);
  EXPECT_EQ(abs(determinant(s.V)), 1);
  EXPECT_TRUE((s.U * s.U_inv).is_identity());
  EXPECT_TRUE((s.V * s.V_inv).is_identity());
  for (std::size_t i = 0; i + 1 < s.divisors.size(); ++i) EXPECT_EQ(s.divisors[i + 1] % s.divisors[i], 0);
}

}  // namespace

TEST(SmithNormalForm, Identity) {
  auto s = smith_normal_form(Matrix::identity(2));
  EXPECT_EQ(s.divisors, ints({1, 1}));
  EXPECT_EQ(s.rank, 2u);
}

TEST(SmithNormalForm, TwoByTwoMatchesMinorOracle) {
  Matrix A{{2, 4}, {6, 8}};
  auto s = smith_normal_form(A);
  EXPECT_EQ(s.divisors, ints({2, 4}));
  EXPECT_EQ(s.divisors, oracle::minor_gcd_divisors(A));
  expect_smith_identity(A, s);
}

TEST(SmithNormalForm, TransvectionMinusIdentity) {
  Matrix T{{1, 1}, {0, 1}};
  Matrix N = T - Matrix::identity(2);
  auto s = smith_normal_form(N);
  EXPECT_EQ(s.divisors, ints({1}));
  EXPECT_EQ(s.rank, 1u);
  Lattice k = kernel_lattice(N);
  EXPECT_EQ(k.basis(), Matrix({{1}, {0}}));
}

TEST(SmithNormalForm, EmptyMatrices) {
  auto s = smith_normal_form(Matrix(0, 3));
  EXPECT_TRUE(s.divisors.empty());
  EXPECT_EQ(s.V.rows(), 3u);
  auto t = smith_normal_form(Matrix(2, 0));
  EXPECT_EQ(t.rank, 0u);
}

TEST(SmithNormalForm, Deterministic) {
  std::mt19937 rng(7);
  Matrix A = oracle::random_matrix(rng, 5, 4, 9);
  auto s1 = smith_normal_form(A);
  auto s2 = smith_normal_form(A);
  EXPECT_EQ(s1.U, s2.U);
  EXPECT_EQ(s1.V, s2.V);
}

TEST(SmithNormalForm, AgreesWithMinorGcdOracleOnRandomMatrices) {
  std::mt19937 rng(20240611);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t m = dim(rng), n = dim(rng);
    Matrix A = oracle::random_matrix(rng, m, n, trial % 3 == 0 ? 2 : 12);
    if (trial % 5 == 0 && m > 1)  // force rank deficiency now and then
      for (std::size_t j = 0; j < n; ++j) A(m - 1, j) = 2 * A(0, j);
    auto s = smith_normal_form(A);
    ASSERT_EQ(s.divisors, oracle::minor_gcd_divisors(A)) << A.to_string();
    expect_smith_identity(A, s);
    EXPECT_EQ(s.rank, rank_fraction_free(A));
    EXPECT_EQ(elementary_divisors(A), s.divisors);
  }
}

TEST(SmithNormalForm, SparsePathAgreesOnLargerMatrices) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> pick(0, 9);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix A(14, 12);
    for (std::size_t i = 0; i < 14; ++i)
      for (std::size_t j = 0; j < 12; ++j) {
        int r = pick(rng);
        A(i, j) = r < 6 ? 0 : (r < 8 ? 1 : (r == 8 ? -1 : 2));
      }
    EXPECT_EQ(elementary_divisors(A), smith_normal_form(A).divisors) << A.to_string();
  }
}

TEST(Determinant, MatchesCofactorExpansion) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix A = oracle::random_matrix(rng, 4, 4, 5);
    EXPECT_EQ(determinant(A), oracle::cofactor_det(A));
  }
}

TEST(KernelLattice, ZeroMatrixGivesEverything) {
  Lattice k = kernel_lattice(Matrix(3, 3));
  EXPECT_TRUE(k.is_full());
  EXPECT_EQ(k.rank(), 3u);
}

TEST(KernelLattice, TwoTransversalTransvectionsHaveNoCommonInvariant) {
  // Transvections v -> v + <v, n> m along m = (1,1) and m = (1,-1).
  Matrix T1{{0, 1}, {-1, 2}};
  Matrix T2{{2, 1}, {-1, 0}};
  Matrix I = Matrix::identity(2);
  Matrix stacked = (T1 - I).vstack(T2 - I);
  EXPECT_EQ(kernel_lattice(stacked).rank(), 0u);
}

TEST(KernelLattice, AlwaysSaturatedAndHermite) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    Matrix A = oracle::random_matrix(rng, 2, 5, 6);
    Lattice k = kernel_lattice(A);
    EXPECT_TRUE(k.saturated());
    EXPECT_TRUE((A * k.basis()).is_zero());
    auto d = smith_normal_form(k.basis()).divisors;
    for (const auto& v : d) EXPECT_EQ(v, 1);
    EXPECT_EQ(hermite_column_form(k.basis()), k.basis());
    EXPECT_EQ(k.rank(), 5 - rank_fraction_free(A));
  }
}

TEST(Lattice, EqualityIsBasisEquality) {
  Lattice a = Lattice::span(Matrix{{1, 1}, {0, 2}});
  Lattice b = Lattice::span(Matrix{{1, 3}, {2, 4}});
  EXPECT_TRUE(a == b);
  EXPECT_FALSE(a.saturated());
  EXPECT_TRUE(a.contains(ints({0, 2})));
  EXPECT_FALSE(a.contains(ints({0, 1})));
  auto c = a.coordinates(ints({3, 4}));
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(a.basis() * *c, ints({3, 4}));
}

TEST(Lattice, IntersectionAndSaturation) {
  Lattice a = Lattice::span(Matrix{{1, 0}, {0, 1}, {0, 0}});
  Lattice b = Lattice::span(Matrix{{1}, {1}, {0}});
  EXPECT_EQ(intersect(a, b), b);
  Lattice c = Lattice::span(Matrix{{2}, {0}});
  EXPECT_EQ(saturation(c), Lattice::span(Matrix{{1}, {0}}));
}

TEST(Cokernel, Examples) {
  auto c = cokernel_invariants(Matrix{{2}});
  EXPECT_EQ(c.betti, 0u);
  EXPECT_EQ(c.torsion, ints({2}));
  // Boundary of a triangulated circle with three vertices and three edges.
  Matrix d1{{-1, 0, -1}, {1, -1, 0}, {0, 1, 1}};
  auto h = cokernel_invariants(d1);
  EXPECT_EQ(h.betti, 1u);
  EXPECT_TRUE(h.torsion.empty());
}

TEST(ExteriorPower, Examples) {
  EXPECT_TRUE(exterior_power_matrix(Matrix::identity(3), 2).is_identity());
  Matrix T{{1, 2}, {3, 4}};
  EXPECT_EQ(exterior_power_matrix(T, 1), T);
  Matrix D = Matrix::diagonal(ints({1, 2, 3}));
  EXPECT_EQ(exterior_power_matrix(D, 2), Matrix::diagonal(ints({2, 3, 6})));
  EXPECT_EQ(exterior_power_matrix(T, 0), Matrix::identity(1));
  EXPECT_THROW(exterior_power_matrix(T, 3), std::invalid_argument);
}

TEST(ExteriorPower, Functorial) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    Matrix S = oracle::random_unimodular(rng, 3), T = oracle::random_unimodular(rng, 3);
    for (std::size_t p = 0; p <= 3; ++p)
      EXPECT_EQ(exterior_power_matrix(S * T, p), exterior_power_matrix(S, p) * exterior_power_matrix(T, p));
  }
}

TEST(ExteriorPower, TopDegreeIsDeterminant) {
  std::mt19937 rng(8);
  Matrix A = oracle::random_matrix(rng, 4, 4, 3);
  EXPECT_EQ(exterior_power_matrix(A, 4)(0, 0), determinant(A));
}

TEST(WedgeRatio, Examples) {
  EXPECT_EQ(wedge_ratio(ints({1, 0}), 1, ints({0, 1}), 2, 1), 1);
  EXPECT_EQ(wedge_ratio(ints({0, 1}), 1, ints({1, 0}), 2, 1), -1);
  EXPECT_EQ(wedge_ratio(ints({1, 1}), 1, ints({0, 1}), 2, 1), 1);
  EXPECT_EQ(wedge_ratio(ints({1, 0}), 1, ints({2, 0}), 2, 1), 0);
  EXPECT_EQ(wedge_ratio(ints({1, 0}), 1, ints({0, 1}), 2, -1), -1);
}

TEST(WedgeRatio, GradedAntisymmetry) {
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> dist(-4, 4);
  for (std::size_t n = 1; n <= 4; ++n)
    for (std::size_t p = 0; p <= n; ++p)
      for (int trial = 0; trial < 10; ++trial) {
        IntVec xi(binomial(n, p)), eta(binomial(n, n - p));
        for (auto& v : xi) v = dist(rng);
        for (auto& v : eta) v = dist(rng);
        Int a = wedge_ratio(xi, p, eta, n, 1);
        Int b = wedge_ratio(eta, n - p, xi, n, 1);
        EXPECT_EQ(a, ((p * (n - p)) % 2 ? -1 : 1) * b);
      }
}

TEST(WedgeRatio, MatchesDeterminantOfVectors) {
  // For p = 1 in dimension 2 the ratio is the 2x2 determinant.
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> dist(-9, 9);
  for (int trial = 0; trial < 20; ++trial) {
    IntVec x{dist(rng), dist(rng)}, y{dist(rng), dist(rng)};
    Matrix M = Matrix::from_columns({x, y}, 2);
    EXPECT_EQ(wedge_ratio(x, 1, y, 2, 1), determinant(M));
  }
}

TEST(DualLattice, Examples) {
  Lattice full = Lattice::full(3);
  EXPECT_TRUE(dual_lattice_map(full).is_full());
  Lattice line = Lattice::span(Matrix{{1}, {0}});
  Lattice dual = dual_lattice_map(line);
  EXPECT_EQ(dual.rank(), 1u);
  Lattice bad = Lattice::span(Matrix{{2}, {0}});
  EXPECT_THROW(dual_lattice_map(bad), std::invalid_argument);
}

TEST(DualLattice, LeftInverse) {
  Lattice L = kernel_lattice(Matrix{{1, 2, 3}});
  Matrix P = left_inverse(L);
  EXPECT_TRUE((P * L.basis()).is_identity());
}

TEST(Solve, IntegerSolutions) {
  Matrix A{{2, 0}, {0, 3}};
  auto x = solve_integer(A, ints({4, 9}));
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(A * *x, ints({4, 9}));
  EXPECT_FALSE(solve_integer(A, ints({1, 0})).has_value());
}

TEST(Inverse, Unimodular) {
  Matrix T{{1, 1}, {0, 1}};
  EXPECT_EQ(inverse_unimodular(T), Matrix({{1, -1}, {0, 1}}));
  EXPECT_THROW(inverse_unimodular(Matrix{{2}}), std::invalid_argument);
}
