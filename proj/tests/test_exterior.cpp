#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace exteria;

namespace {

ExteriorPoint random_point(int m, int n, int t, std::mt19937_64& rng) {
  return ExteriorPoint(m, n, t, oracle::random_small(binomial(m, t), binomial(n, t), rng, -3, 3));
}

DecomposableSpec random_spec(int v, int dim, std::mt19937_64& rng) {
  for (;;) {
    std::vector<std::vector<Rational>> fs;
    for (int i = 0; i < v; ++i) fs.push_back(oracle::random_vector(dim, rng));
    QMatrix m(v, dim);
    for (int i = 0; i < v; ++i)
      for (int j = 0; j < dim; ++j) m(i, j) = fs[i][j];
    if (oracle::minor_rank(m) == static_cast<std::size_t>(v)) return DecomposableSpec(fs, dim);
  }
}

DecomposableSpec standard_spec(int v, int dim) {
  std::vector<std::vector<Rational>> fs(v, std::vector<Rational>(dim, Rational(0)));
  for (int i = 0; i < v; ++i) fs[i][i] = Rational(1);
  return DecomposableSpec(fs, dim);
}

}  // namespace

TEST(Compound, MatchesLaplaceMinors) {
  std::mt19937_64 rng(21);
  for (int m = 1; m <= 4; ++m)
    for (int n = 1; n <= 4; ++n)
      for (int t = 0; t <= std::min(m, n); ++t) {
        QMatrix b = oracle::random_small(m, n, rng);
        EXPECT_EQ(compound(b, t).coords, oracle::compound(b, t)) << m << "x" << n << " t=" << t;
      }
}

TEST(Compound, RankLaw) {
  std::mt19937_64 rng(22);
  for (int m = 1; m <= 5; ++m)
    for (int n = m; n <= 5; ++n)
      for (std::size_t r = 0; r <= static_cast<std::size_t>(m); ++r) {
        QMatrix b = oracle::random_rank(m, n, r, rng);
        for (int t = 1; t <= m; ++t) EXPECT_EQ(compound(b, t).rank(), binomial(r, t));
      }
}

TEST(Compound, BinetCauchy) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const int p = 2 + trial % 3, q = 2 + (trial + 1) % 3, s = 2 + (trial + 2) % 3;
    QMatrix a = oracle::random_small(p, q, rng), b = oracle::random_small(q, s, rng);
    for (int t = 1; t <= std::min({p, q, s}); ++t) {
      EXPECT_EQ(compound_matrix(oracle::multiply(a, b), t),
                oracle::multiply(compound_matrix(a, t), compound_matrix(b, t)));
      EXPECT_TRUE(binet_check(a, b, initial_segment(t, p), initial_segment(t, s)));
    }
  }
}

TEST(Compound, PointValidation) {
  EXPECT_THROW(ExteriorPoint(3, 3, 4, QMatrix(1, 1)), std::invalid_argument);
  EXPECT_THROW(ExteriorPoint(3, 4, 2, QMatrix(3, 3)), std::invalid_argument);
  EXPECT_EQ(ExteriorPoint::zero(3, 4, 2).coords.cols(), 6u);
}

TEST(Multivector, TopWedgeIsDeterminant) {
  std::mt19937_64 rng(24);
  for (int n = 1; n <= 5; ++n) {
    QMatrix a = oracle::random_small(n, n, rng);
    std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) rows[i][j] = a(i, j);
    EXPECT_EQ(Multivector::wedge_of(rows, n)[0], oracle::leibniz_det(a));
  }
}

TEST(Multivector, WedgeCoordinatesAreMaximalMinors) {
  std::mt19937_64 rng(25);
  QMatrix a = oracle::random_small(3, 5, rng);
  std::vector<std::vector<Rational>> rows(3, std::vector<Rational>(5));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 5; ++j) rows[i][j] = a(i, j);
  Multivector w = Multivector::wedge_of(rows, 5);
  auto subsets = combinations(5, 3);
  for (std::size_t s = 0; s < subsets.size(); ++s)
    EXPECT_EQ(w[s], oracle::laplace_det(a.select({1, 2, 3}, subsets[s].indices())));
}

TEST(Multivector, ContractionIsAlternatingDerivation) {
  // (v_1 ^ ... ^ v_k) -| alpha = sum_j (-1)^{j-1} alpha(v_j) v_1 ^ .. v_j omitted .. ^ v_k
  std::mt19937_64 rng(26);
  for (int k = 1; k <= 4; ++k) {
    std::vector<std::vector<Rational>> vs;
    for (int i = 0; i < k; ++i) vs.push_back(oracle::random_vector(5, rng));
    auto alpha = oracle::random_vector(5, rng);
    Multivector expected(5, k - 1);
    for (int j = 0; j < k; ++j) {
      Rational a(0);
      for (int c = 0; c < 5; ++c) a += alpha[c] * vs[j][c];
      auto rest = vs;
      rest.erase(rest.begin() + j);
      Multivector term = Multivector::wedge_of(rest, 5) * a;
      if (j % 2) expected -= term; else expected += term;
    }
    EXPECT_EQ(Multivector::wedge_of(vs, 5).contract(alpha), expected);
  }
}

TEST(Multivector, ClosedFormContractionMatchesIterated) {
  std::mt19937_64 rng(27);
  for (int grade = 1; grade <= 4; ++grade)
    for (int v = 1; v <= grade; ++v) {
      Multivector x(5, grade);
      for (std::size_t i = 0; i < binomial(5, grade); ++i) x[i] = Rational(static_cast<int>(rng() % 7) - 3);
      std::vector<std::vector<Rational>> alphas;
      for (int i = 0; i < v; ++i) alphas.push_back(oracle::random_vector(5, rng));
      EXPECT_EQ(contract_wedge(x, alphas), x.contract_all(alphas));
    }
}

TEST(Multivector, ContractionAnnihilatesAfterFullGrade) {
  Multivector e = Multivector::basis(Combination({2}, 3));
  std::vector<Rational> a{Rational(0), Rational(5), Rational(1)};
  EXPECT_EQ(e.contract(a)[0], Rational(5));
  EXPECT_THROW(e.contract(a).contract(a), std::invalid_argument);
}

TEST(Theta, BasisChangeRoundTrip) {
  std::mt19937_64 rng(28);
  ExteriorPoint x = random_point(4, 5, 2, rng);
  QMatrix p = random_invertible(4, 3), q = random_invertible(5, 4);
  EXPECT_EQ(from_basis(to_basis(x, p, q), p, q), x);
}

TEST(Theta, AdaptedBasesHaveDualProperty) {
  std::mt19937_64 rng(29);
  auto alpha = random_spec(2, 5, rng);
  auto y = random_spec(2, 4, rng);
  auto b = adapted_bases(alpha, y);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 5; ++j) {
      Rational s(0);
      for (int c = 0; c < 5; ++c) s += alpha.factors[i][c] * b.domain(j, c);
      EXPECT_EQ(s, Rational(i == j ? 1 : 0));
    }
  EXPECT_EQ(rank(b.domain), 5u);
  EXPECT_EQ(rank(b.codomain), 4u);
}

TEST(Theta, DirectFormulaAgreesWithCoordinateSubstitution) {
  std::mt19937_64 rng(30);
  for (int v = 1; v <= 2; ++v)
    for (int trial = 0; trial < 3; ++trial) {
      const int m = 4, n = 5, s = 1 + trial % 2;
      auto alpha = random_spec(v, m, rng);
      auto y = random_spec(v, n, rng);
      ExteriorPoint f = random_point(m, n, s, rng);
      ExteriorPoint direct = theta_direct(alpha, y, f);
      EXPECT_EQ(theta(alpha, y, induced_map(alpha, y, f)), direct) << "v=" << v << " s=" << s;
    }
}

TEST(Theta, StandardThetaLiftsNormalForms) {
  const int m = 5, n = 5, t = 3;
  for (int v = 1; v <= 2; ++v)
    for (const auto& o : admissible_orbits(m - v, n - v, t - v)) {
      if (o.u < 2) continue;
      ExteriorPoint small = normal_form(o, m - v, n - v, t - v);
      EXPECT_EQ(theta(standard_spec(v, m), standard_spec(v, n), small), normal_form(o, m, n, t))
          << "v=" << v << " u=" << o.u << " k=" << o.k;
    }
}

TEST(Theta, RetractionUndoesTheta) {
  std::mt19937_64 rng(31);
  const int m = 5, n = 5, t = 3;
  for (int v = 1; v <= 2; ++v)
    for (int trial = 0; trial < 4; ++trial) {
      ExteriorPoint f = random_point(m - v, n - v, t - v, rng);
      EXPECT_EQ(retract_project(theta_substitute(f, v), v), f);
      auto alpha = random_spec(v, m, rng);
      auto y = random_spec(v, n, rng);
      EXPECT_EQ(retract_project(theta(alpha, y, f), alpha, y), f);
    }
}
