#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace exteria;

namespace {

// Value of a relation at a numeric matrix, with every minor from Laplace expansion.
Rational oracle_value(const RelationExpr& rel, const QMatrix& x) {
  Rational acc(0);
  for (const auto& term : rel.terms()) {
    Rational p = term.coeff;
    for (const auto& f : term.factors) p *= oracle::laplace_det(x.select(f.rows, f.cols));
    acc += p;
  }
  return acc;
}

std::vector<Rational> flatten(const QMatrix& x) {
  std::vector<Rational> v;
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) v.push_back(x(i, j));
  return v;
}

void expect_zero(const RelationExpr& rel, const std::string& what) {
  auto [m, n] = rel.extent();
  EXPECT_TRUE(expand(rel, m, n).is_zero()) << what << ": " << rel.str();
}

}  // namespace

TEST(Polynomial, MinorPolyTwoByTwo) {
  SparsePoly p = minor_poly(MinorSymbol({1, 2}, {1, 2}), 2, 2);
  SparsePoly expected = SparsePoly::variable(4, 0) * SparsePoly::variable(4, 3) -
                        SparsePoly::variable(4, 1) * SparsePoly::variable(4, 2);
  EXPECT_EQ(p, expected);
  EXPECT_EQ(minor_poly(MinorSymbol({1}, {1}), 2, 2), SparsePoly::variable(4, 0));
  EXPECT_EQ(minor_poly(MinorSymbol({1, 2, 3}, {1, 2, 4}), 3, 4).size(), 6u);
}

TEST(Polynomial, ExpansionEvaluatesToMinor) {
  std::mt19937_64 rng(51);
  QMatrix x = oracle::random_small(4, 5, rng, -9, 9);
  RationalField q;
  for (int k = 1; k <= 4; ++k)
    for (const auto& r : combinations(4, k))
      for (const auto& c : combinations(5, k)) {
        MinorSymbol s(r.indices(), c.indices());
        EXPECT_EQ(minor_poly(s, 4, 5).eval(flatten(x), q), oracle::laplace_det(x.select(r.indices(), c.indices())));
      }
}

TEST(Polynomial, MultidegreeAndDerivative) {
  SparsePoly p = minor_poly(MinorSymbol({1, 3}, {2, 3}), 3, 3);
  auto d = poly_multidegree(p, 3, 3);
  ASSERT_TRUE(d);
  EXPECT_EQ(*d, (std::vector<int>{1, 0, 1, 0, 1, 1}));
  // d/dX_{12} of X_{12} X_{33} - X_{13} X_{32} is X_{33}.
  EXPECT_EQ(p.derivative(1), SparsePoly::variable(9, 8));
  EXPECT_FALSE(poly_multidegree(p + SparsePoly::variable(9, 0), 3, 3));
}

TEST(Relations, ParseAndPrint) {
  RelationExpr r = parse_relation("+[12|14][34|23]-2[14|14][23|23]+1/2[1,10|2,3]");
  EXPECT_EQ(r.size(), 3u);
  EXPECT_EQ(parse_relation(r.str()), r);
  // Unsorted indices are sorted with a sign; repeated indices drop the term.
  EXPECT_EQ(parse_relation("[21|12]"), parse_relation("-[12|12]"));
  EXPECT_TRUE(parse_relation("[11|12]").empty());
  EXPECT_THROW(parse_relation("[12|1"), std::invalid_argument);
  EXPECT_TRUE(expand(RelationExpr{}, 2, 2).is_zero());
}

TEST(Relations, ExpansionMatchesOracleEvaluation) {
  std::mt19937_64 rng(52);
  RelationExpr r = parse_relation("[12|13][34|24]-3[1|2][234|134]+1/2[13|12]");
  for (int trial = 0; trial < 5; ++trial) {
    QMatrix x = oracle::random_small(4, 4, rng, -9, 9);
    EXPECT_EQ(expand(r, 4, 4).eval(flatten(x), RationalField{}), oracle_value(r, x));
    EXPECT_EQ(evaluate(r, x), oracle_value(r, x));
  }
}

TEST(Relations, Plu2) {
  EXPECT_EQ(plu2_relation(), parse_relation("[12|12][12|34]-[12|13][12|24]+[12|14][12|23]"));
  expect_zero(plu2_relation(), "plu2");
  EXPECT_TRUE(plu2_relation().is_homogeneous());
}

TEST(Relations, AllPluckerRelations) {
  for (int t = 1; t <= 3; ++t)
    for (int n = t + 1; n <= 6; ++n)
      for (const auto& r : all_plucker_relations(t, n)) expect_zero(r, "plucker");
  // Repeated columns produce vanishing minors; still zero.
  expect_zero(plucker_relation({2}, {1, 2, 3}), "degenerate plucker");
}

TEST(Relations, ZeroTestModesAgree) {
  RelationExpr good = twelve_term_relation();
  RelationExpr bad = parse_relation("[12|12][12|34]+[12|13][12|24]+[12|14][12|23]");
  for (auto mode : {ZeroTestMode::Exact, ZeroTestMode::Probabilistic}) {
    EXPECT_TRUE(is_zero(good, mode).zero);
    ZeroVerdict v = is_zero(bad, mode);
    EXPECT_FALSE(v.zero);
    EXPECT_FALSE(v.witness.empty());
  }
  for (const auto& [name, r] : degree3_catalog())
    EXPECT_TRUE(is_zero(r, ZeroTestMode::Probabilistic, 9).zero) << name;
}

TEST(Relations, TwelveTermFamilies) {
  expect_zero(twelve_term_relation(), "12 terms");
  EXPECT_EQ(twelve_term_relation().size(), 12u);
  RelationExpr three = append_index(twelve_term_relation());
  EXPECT_EQ(three.extent(), (std::pair<int, int>{5, 5}));
  expect_zero(three, "12 terms on 3-minors");
  expect_zero(append_index(plu2_relation()), "appended plu2");
  EXPECT_TRUE(append_index(RelationExpr{}).empty());
  EXPECT_EQ(twelve_term_relation(), genplu2_relation(0, 2) * Rational(-1));
}

TEST(Relations, Genplu2) {
  EXPECT_EQ(genplu2_index_sets(0, 2), (std::vector<std::vector<int>>{{1, 2}, {1, 4}, {2, 3}, {3, 4}}));
  for (int t = 1; t <= 3; ++t)
    for (int s = 0; s <= t; ++s) {
      RelationExpr g = genplu2_relation(s, t);
      expect_zero(g, "genplu2");
      RelationExpr p = genplu2_via_pushforward(s, t);
      EXPECT_EQ(g.canonical(), (p * Rational(t % 2 ? 1 : -1)).canonical()) << "s=" << s << " t=" << t;
    }
}

TEST(Relations, Pushforward) {
  std::mt19937_64 rng(53);
  for (int t = 2; t <= 3; ++t) {
    RelationExpr base = plucker_relation(detail::iota_vec(1, t - 1), detail::iota_vec(t, 2 * t));
    for (int trial = 0; trial < 5; ++trial) {
      QMatrix a = oracle::random_small(t, t + 2, rng, -3, 3);
      std::vector<int> u(2 * t);
      for (auto& x : u) x = 1 + static_cast<int>(rng() % (t + 2));
      expect_zero(pushforward_relation(base, a, u), "pushforward");
    }
  }
  RelationExpr base = plu2_relation();
  QMatrix sel = QMatrix::from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}});
  EXPECT_THROW(pushforward_relation(base, sel, {1, 2, 5, 1}), std::out_of_range);
  EXPECT_THROW(pushforward_relation(base, sel, {1, 2, 3}), std::invalid_argument);
}

TEST(Relations, Degree3Catalog) {
  auto cat = degree3_catalog();
  ASSERT_EQ(cat.size(), 5u);
  for (const auto& [name, r] : cat) {
    auto [m, n] = r.extent();
    EXPECT_LE(m, 4) << name;
    EXPECT_LE(n, 4) << name;
    EXPECT_TRUE(expand(r, 4, 4).is_zero()) << name;
  }
}

TEST(Relations, BinetExhaustive) {
  std::mt19937_64 rng(54);
  QMatrix a = oracle::random_small(3, 4, rng), b = oracle::random_small(4, 3, rng);
  for (const auto& r : combinations(3, 2))
    for (const auto& c : combinations(3, 2)) EXPECT_TRUE(binet_check(a, b, r, c));
  EXPECT_TRUE(binet_check(QMatrix::identity(3), QMatrix::identity(3), initial_segment(3, 3), initial_segment(3, 3)));
}

TEST(AntiStraightening, SmallCases) {
  // u = 0 is a Laplace-type expansion.
  AntiStraightening l = anti_straighten({}, {}, {1, 2, 3}, {1, 2, 3});
  expect_zero(l.identity, "u=0");
  AntiStraightening s = anti_straighten({1}, {1}, {1, 2, 3}, {1, 2, 3});
  EXPECT_EQ(s.index_pairs.size(), 4u);
  expect_zero(s.identity, "u=1 v=3");
  EXPECT_THROW(anti_straighten({1, 2}, {1, 2}, {1, 2, 3}, {1, 2, 3}), std::invalid_argument);
  EXPECT_THROW(anti_straighten({2}, {1}, {1, 2, 3}, {1, 2, 3}), std::invalid_argument);
}

TEST(AntiStraightening, NestedPairsUpToFour) {
  // Every nested pair with v <= 4 on at most 5 x 5: delta's indices are any
  // u-subset of eta's, placed first.
  std::size_t cases = 0;
  for (int v = 2; v <= 4; ++v)
    for (const auto& ra : combinations(5, v))
      for (const auto& cb : combinations(5, v))
        for (int u = 0; u + 1 < v; ++u)
          for (const auto& pa : combinations(v, u))
            for (const auto& pb : combinations(v, u)) {
              auto arrange = [](const std::vector<int>& all, const std::vector<int>& pick) {
                std::vector<int> head, tail;
                for (int i = 0; i < static_cast<int>(all.size()); ++i)
                  (std::find(pick.begin(), pick.end(), i + 1) != pick.end() ? head : tail).push_back(all[i]);
                return std::pair{head, detail::concat(head, tail)};
              };
              auto [a, big_a] = arrange(ra.indices(), pa.indices());
              auto [b, big_b] = arrange(cb.indices(), pb.indices());
              AntiStraightening r = anti_straighten(a, b, big_a, big_b);
              ASSERT_TRUE(expand(r.identity, 5, 5).is_zero()) << r.identity.str();
              ++cases;
            }
  EXPECT_EQ(cases, 2425u);
}

TEST(AntiStraightening, IndependentOfEquationOrder) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto a = anti_straighten({2}, {3}, {2, 1, 4}, {3, 1, 2});
    auto b = anti_straighten({2}, {3}, {2, 1, 4}, {3, 1, 2}, seed);
    EXPECT_EQ(a.coefficients, b.coefficients);
    expect_zero(b.identity, "shuffled");
  }
}

TEST(Membership, BasicCases) {
  MinorExpander ex(3, 3);
  std::vector<SparsePoly> gens;
  for (const auto& s : all_minors(3, 3, 2)) gens.push_back(ex(s));
  Membership one = subalgebra_membership(gens[4], gens, 3, 3, 3);
  ASSERT_TRUE(one.found);
  EXPECT_EQ(one.degree, 1);
  Membership none = subalgebra_membership(SparsePoly::variable(9, 0), gens, 3, 3, 3);
  EXPECT_FALSE(none.found);
  // delta_1 delta_3 is a 2 x 2 determinant of 2-minors.
  SparsePoly target = expand(parse_relation("[1|1][123|123]"), 3, 3);
  for (auto method : {SolveMethod::Modular, SolveMethod::Exact}) {
    Membership m = subalgebra_membership(target, gens, 3, 3, 2, method);
    ASSERT_TRUE(m.found);
    EXPECT_EQ(m.degree, 2);
    SparsePoly check = target * Rational(-1);
    for (const auto& term : m.terms) {
      SparsePoly p = SparsePoly::constant(9, term.coeff);
      for (auto g : term.generators) p = p * gens[g];
      check += p;
    }
    EXPECT_TRUE(check.is_zero());
  }
}

TEST(Membership, RationalReconstruction) {
  const std::uint64_t p = kDefaultPrime;
  for (auto text : {"3/7", "-22/5", "1", "-1000/999"}) {
    Rational r = Rational::parse(text);
    auto back = detail::rational_reconstruct(ModP::from_rational(r, p).residue(), p);
    ASSERT_TRUE(back);
    EXPECT_EQ(*back, r);
  }
}
