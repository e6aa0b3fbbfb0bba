#include "latpoly/exactmath.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace latpoly;

namespace {

// Independent oracle: Laplace expansion along the first row.
Integer cofactor_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    IntMatrix sub(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) sub(r - 1, cc++) = m(r, c);
    Integer term = m(0, j) * cofactor_det(sub);
    total += (j % 2) ? Integer(-term) : term;
  }
  return total;
}

IntMatrix random_int_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = dist(rng);
  return m;
}

// The 10x6 generator matrix of the counter-example cone.
RatMatrix cone_matrix() {
  return RatMatrix{{0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}, {0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 1, 0},
                   {0, 0, 0, 0, 0, 1}, {1, 0, 2, 1, 1, 2}, {1, 2, 0, 2, 1, 1}, {1, 1, 2, 0, 2, 1},
                   {1, 1, 1, 2, 0, 2}, {1, 2, 1, 1, 2, 0}};
}

}  // namespace

TEST(Det, IdentityAndPermutation) {
  EXPECT_EQ(det(RatMatrix::identity(3)), 1);
  EXPECT_EQ(det(RatMatrix{{0, 1}, {1, 0}}), -1);
  EXPECT_EQ(det(RatMatrix(0, 0)), 1);
}

TEST(Det, NonSquareThrows) { EXPECT_THROW(det(RatMatrix(2, 3)), DimensionError); }

TEST(Det, ConeMinorMatchesCofactorOracle) {
  RatMatrix b = minor(cone_matrix(), {0, 1, 2, 3, 4, 5}, All);
  Integer oracle = cofactor_det(to_integer(b));
  EXPECT_EQ(oracle, -1);  // frozen from the oracle
  EXPECT_EQ(det(b), Rational(oracle));
}

TEST(Det, RandomMatricesAgreeWithCofactorExpansion) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + trial % 6;
    IntMatrix m = random_int_matrix(rng, n, n, -4, 4);
    EXPECT_EQ(det(m), cofactor_det(m));
    EXPECT_EQ(det(to_rational(m)), Rational(cofactor_det(m)));
  }
}

TEST(Det, RationalEntries) {
  RatMatrix m{{Rational(1, 2), 1}, {1, Rational(1, 3)}};
  EXPECT_EQ(det(m), Rational(1, 6) - 1);
}

TEST(LinSolve, Identity) {
  auto x = lin_solve(RatMatrix::identity(3), RatVector{1, 2, 3});
  ASSERT_TRUE(x);
  EXPECT_EQ(*x, (RatVector{1, 2, 3}));
}

TEST(LinSolve, InconsistentIsAbsent) {
  EXPECT_FALSE(lin_solve(RatMatrix{{1, 1}, {1, 1}}, RatVector{1, 2}));
  EXPECT_FALSE(lin_solve(RatMatrix{{1, 1}, {2, 2}}, RatVector{1, 2}));  // consistent but not unique
}

TEST(LinSolve, DimensionMismatchThrows) {
  EXPECT_THROW(lin_solve(RatMatrix::identity(2), RatVector{1, 2, 3}), DimensionError);
}

TEST(LinSolve, ConeSystemMatchesCramer) {
  RatMatrix bt = transpose(minor(cone_matrix(), {0, 1, 2, 3, 4, 5}, All));
  RatVector x{9, 13, 13, 13, 13, 13};
  // Cramer's rule with the cofactor oracle
  IntMatrix bi = to_integer(bt);
  Integer d = cofactor_det(bi);
  RatVector cramer;
  for (std::size_t j = 0; j < 6; ++j) {
    IntMatrix a = bi;
    for (std::size_t i = 0; i < 6; ++i) a(i, j) = x[i].get_num();
    cramer.push_back(Rational(cofactor_det(a), d));
  }
  for (auto& q : cramer) q.canonicalize();
  EXPECT_EQ(cramer, (RatVector{13, -5, 4, 4, -5, 9}));
  auto y = lin_solve(bt, x);
  ASSERT_TRUE(y);
  EXPECT_EQ(*y, cramer);
}

TEST(LinSolve, RandomSolutionsSatisfySystem) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 1 + trial % 5;
    RatMatrix a = to_rational(random_int_matrix(rng, n, n, -3, 3));
    RatVector b;
    for (std::size_t i = 0; i < n; ++i) b.push_back(Rational(static_cast<long>(rng() % 7) - 3));
    auto x = lin_solve(a, b);
    if (det(a) != 0) {
      ASSERT_TRUE(x);
    }
    if (x) EXPECT_EQ(a * *x, b);
  }
}

TEST(Minor, RowsAndAll) {
  RatMatrix m{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
  EXPECT_EQ(minor(m, {2, 0}, All), (RatMatrix{{1, 2, 3}, {7, 8, 9}}));
  EXPECT_EQ(minor(m, {0, 1, 2}, {2}), (RatMatrix{{3}, {6}, {9}}));
  EXPECT_EQ(minor(cone_matrix(), sequence(0, 9), All), cone_matrix());
  RatMatrix tail = minor(cone_matrix(), {5, 6, 7, 8, 9}, All);
  EXPECT_EQ(tail.rows(), 5u);
  EXPECT_EQ(tail.row_vector(0), (RatVector{1, 0, 2, 1, 1, 2}));
  EXPECT_EQ(tail.row_vector(4), (RatVector{1, 2, 1, 1, 2, 0}));
  EXPECT_THROW(minor(m, {3}, All), DimensionError);
}

TEST(Subsets, SmallCases) {
  EXPECT_EQ(all_subsets_of_k(2, {0, 1, 2}), (std::vector<IndexSet>{{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_EQ(all_subsets_of_k(0, {0, 1, 2}), (std::vector<IndexSet>{{}}));
  EXPECT_TRUE(all_subsets_of_k(4, {0, 1, 2}).empty());
}

TEST(Subsets, CountLexOrderAndUniqueness) {
  for (std::size_t n = 0; n <= 10; ++n)
    for (std::size_t k = 0; k <= n; ++k) {
      auto subsets = all_subsets_of_k(k, sequence(0, static_cast<int>(n) - 1));
      EXPECT_EQ(Integer(static_cast<long>(subsets.size())), binomial(n, k));
      for (std::size_t i = 1; i < subsets.size(); ++i) EXPECT_LT(subsets[i - 1], subsets[i]);
      for (const auto& s : subsets) {
        EXPECT_EQ(s.size(), k);
        EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
      }
    }
  EXPECT_EQ(all_subsets_of_k(6, sequence(0, 9)).size(), 210u);
}

TEST(Hermite, FixedExamples) {
  auto id = hermite_normal_form(IntMatrix::identity(3));
  EXPECT_EQ(id.h, IntMatrix::identity(3));
  EXPECT_EQ(id.u, IntMatrix::identity(3));

  IntMatrix diag{{2, 0}, {0, 3}};
  EXPECT_EQ(hermite_normal_form(diag).h, diag);

  IntMatrix m{{1, 2}, {3, 4}};
  auto r = hermite_normal_form(m);
  EXPECT_EQ(r.u * m, r.h);
  EXPECT_EQ(abs(cofactor_det(r.u)), 1);
  EXPECT_EQ(abs(cofactor_det(r.h)), 2);
  EXPECT_EQ(r.h(1, 0), 0);
}

TEST(Hermite, RandomInvariants) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t rows = 1 + trial % 5, cols = 1 + (trial / 5) % 5;
    IntMatrix m = random_int_matrix(rng, rows, cols, -6, 6);
    auto r = hermite_normal_form(m);
    EXPECT_EQ(r.u * m, r.h);
    EXPECT_EQ(abs(det(r.u)), 1);
    if (rows == cols) EXPECT_EQ(abs(det(r.h)), abs(det(m)));
    // echelon shape with positive reduced pivots
    for (std::size_t i = 0; i < r.pivot_cols.size(); ++i) {
      std::size_t c = r.pivot_cols[i];
      EXPECT_GT(r.h(i, c), 0);
      for (std::size_t k = 0; k < i; ++k) {
        EXPECT_GE(r.h(k, c), 0);
        EXPECT_LT(r.h(k, c), r.h(i, c));
      }
      for (std::size_t k = i + 1; k < rows; ++k) EXPECT_EQ(r.h(k, c), 0);
    }
    EXPECT_EQ(r.pivot_cols.size(), rank(m));
  }
}

TEST(Rank, Basics) {
  EXPECT_EQ(rank(RatMatrix(3, 4)), 0u);
  EXPECT_EQ(rank(RatMatrix::identity(5)), 5u);
  EXPECT_EQ(rank(cone_matrix()), 6u);
  EXPECT_EQ(rank(RatMatrix{{1, 2}, {2, 4}}), 1u);
}

TEST(Primitive, Examples) {
  EXPECT_EQ(primitive({2, 4, 6}), (IntVector{1, 2, 3}));
  EXPECT_EQ(primitive({0, -3, 0}), (IntVector{0, -1, 0}));
  EXPECT_EQ(primitive({5, 0, 0, 5}), (IntVector{1, 0, 0, 1}));
  EXPECT_THROW(primitive({0, 0}), std::domain_error);
}

TEST(Primitive, GcdOneAndPositiveMultiple) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    IntVector v;
    for (int j = 0; j < 4; ++j) v.push_back(Integer(static_cast<long>(rng() % 41) - 20) * 6);
    if (std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; })) continue;
    IntVector p = primitive(v);
    Integer g = 0;
    for (auto& x : p) g = gcd(g, x);
    EXPECT_EQ(g, 1);
    // v = c * p with c > 0
    std::size_t j = 0;
    while (p[j] == 0) ++j;
    Rational c(v[j], p[j]);
    c.canonicalize();
    EXPECT_GT(c, 0);
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_EQ(Rational(v[i]), c * p[i]);
  }
}

TEST(IntegerKernel, SaturatedBasis) {
  IntMatrix m{{2, 4, 6}};
  IntMatrix k = integer_kernel(m);
  EXPECT_EQ(k.rows(), 2u);
  for (std::size_t i = 0; i < k.rows(); ++i) {
    IntVector row = k.row_vector(i);
    EXPECT_EQ(m * row, IntVector{0});
  }
}
