#include "oracles.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace exteria;

TEST(Rational, ArithmeticAndParsing) {
  Rational a = Rational::parse("3/4"), b = Rational::parse("-5/6");
  EXPECT_EQ((a + b).str(), "-1/12");
  EXPECT_EQ((a * b).str(), "-5/8");
  EXPECT_EQ((a / b).str(), "-9/10");
  EXPECT_EQ(Rational::parse("6/4").str(), "3/2");
  EXPECT_EQ(Rational::parse("-7").str(), "-7");
  EXPECT_TRUE(Rational::parse("0/5").is_zero());
  EXPECT_THROW(Rational::parse("1/0"), std::domain_error);
  EXPECT_THROW(Rational::parse("x"), std::invalid_argument);
  EXPECT_THROW(Rational(0).inverse(), std::domain_error);
  EXPECT_LT(b, a);
}

TEST(ModP, FieldOperations) {
  const std::uint64_t p = 101;
  ModP a(7, p), b(-3, p);
  EXPECT_EQ(b.residue(), 98u);
  EXPECT_EQ((a * a.inverse()).residue(), 1u);
  EXPECT_EQ(a.pow(100).residue(), 1u);  // Fermat
  EXPECT_EQ(ModP::from_rational(Rational::parse("1/2"), p).residue(), 51u);
  ModP big(3, kDefaultPrime);
  EXPECT_EQ((big * big.inverse()).residue(), 1u);
}

TEST(Combinations, LexIndexMatchesEnumerationOrder) {
  for (int n = 0; n <= 7; ++n)
    for (int t = 0; t <= n; ++t) {
      auto all = combinations(n, t);
      ASSERT_EQ(all.size(), binomial(n, t));
      for (std::size_t i = 0; i < all.size(); ++i) {
        EXPECT_EQ(all[i].lex_index(), i);
        EXPECT_EQ(Combination::from_lex_index(i, n, t), all[i]);
        if (i) EXPECT_LT(all[i - 1].indices(), all[i].indices());
      }
    }
}

TEST(Combinations, SortWithSignCountsInversions) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> v(6);
    std::iota(v.begin(), v.end(), 1);
    std::shuffle(v.begin(), v.end(), rng);
    int inv = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j) inv += v[i] > v[j];
    auto w = v;
    EXPECT_EQ(sort_with_sign(w), inv % 2 ? -1 : 1);
    EXPECT_TRUE(std::is_sorted(w.begin(), w.end()));
  }
  std::vector<int> rep{3, 1, 3};
  EXPECT_EQ(sort_with_sign(rep), 0);
}

TEST(Matrix, DeterminantMatchesLeibniz) {
  std::mt19937_64 rng(11);
  for (int n = 0; n <= 6; ++n)
    for (int trial = 0; trial < 5; ++trial) {
      QMatrix a = oracle::random_small(n, n, rng);
      if (n <= 5) EXPECT_EQ(det(a), oracle::leibniz_det(a));
      EXPECT_EQ(det(a), oracle::laplace_det(a));
    }
  QMatrix h = QMatrix::from_rows({{1, 2}, {2, 4}});
  h(0, 0) = Rational::parse("1/2");
  EXPECT_EQ(det(h), Rational(2) - Rational(4));
}

TEST(Matrix, RankMatchesMinorsOverQAndModP) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = 1 + trial % 4, n = 1 + (trial / 4) % 4, r = trial % (std::min(m, n) + 1);
    QMatrix a = oracle::random_rank(m, n, r, rng);
    EXPECT_EQ(rank(a), r);
    EXPECT_EQ(rank(reduce_mod(a, kDefaultPrime)), r);
  }
}

TEST(Matrix, SolveLinearAndNullspace) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    QMatrix a = oracle::random_rank(4, 6, 3, rng);
    auto x = oracle::random_vector(6, rng);
    auto b = exteria::apply(a, x);
    auto sol = solve_linear(a, b);
    ASSERT_TRUE(sol.consistent);
    EXPECT_EQ(exteria::apply(a, sol.particular), b);
    EXPECT_EQ(sol.kernel.size(), 3u);
    for (const auto& k : sol.kernel)
      for (const auto& e : exteria::apply(a, k)) EXPECT_TRUE(e.is_zero());
  }
  QMatrix z = QMatrix::from_rows({{1, 1}, {1, 1}});
  EXPECT_FALSE(solve_linear(z, {Rational(1), Rational(2)}).consistent);
}

TEST(Matrix, InverseAndProducts) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    QMatrix a = random_invertible(4, 100 + trial);
    EXPECT_EQ(a * inverse(a), QMatrix::identity(4));
    QMatrix b = oracle::random_small(4, 3, rng);
    EXPECT_EQ(a * b, oracle::multiply(a, b));
  }
  EXPECT_THROW(inverse(QMatrix::from_rows({{1, 2}, {2, 4}})), std::domain_error);
}

TEST(Matrix, RandomMatrixHasRequestedRank) {
  for (std::size_t r = 0; r <= 4; ++r) {
    QMatrix a = random_matrix(4, 5, r, 7 + r);
    EXPECT_EQ(oracle::minor_rank(a), r);
  }
}

TEST(Matrix, TextFormatRoundTrip) {
  QMatrix a = QMatrix::from_rows({{1, -2, 0}, {3, 4, 5}});
  a(1, 2) = Rational::parse("-7/3");
  EXPECT_EQ(parse_matrix(format_matrix(a)), a);
  EXPECT_THROW(parse_matrix("2 2\n1 2 3"), std::invalid_argument);
  EXPECT_THROW(parse_matrix("2 2\n1 2 3 4 5"), std::invalid_argument);
  EXPECT_THROW(parse_matrix("2 2\n1 2 x 4"), std::invalid_argument);
}

TEST(Matrix, MinorOfSubmatrix) {
  QMatrix b = QMatrix::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 10}});
  EXPECT_EQ(minor(b, Combination({1, 3}, 3), Combination({2, 3}, 3)), Rational(2 * 10 - 3 * 8));
  EXPECT_EQ(minor(b, Combination(std::vector<int>{}, 3), Combination(std::vector<int>{}, 3)), Rational(1));
  EXPECT_EQ(minor(b, Combination({1, 2, 3}, 3), Combination({1, 2, 3}, 3)), oracle::leibniz_det(b));
}
