// Relation families among minors (Binet, Pluecker, push-forwards, the
// genplu2 family, degree-3 relations among 2-minors), zero testing,
// anti-straightening and bounded-degree subalgebra membership.
#pragma once

#include "exteria/combinations.hpp"
#include "exteria/matrix.hpp"
#include "exteria/polynomial.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace exteria {

namespace detail {
inline std::vector<int> iota_vec(int from, int to) {
  std::vector<int> v;
  for (int i = from; i <= to; ++i) v.push_back(i);
  return v;
}
inline std::vector<int> concat(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}
}  // namespace detail

/// Checks [a|b]_{AB} = sum_c [a|c]_A [c|b]_B over increasing c.
inline bool binet_check(const QMatrix& a, const QMatrix& b, const Combination& rows, const Combination& cols) {
  if (a.cols() != b.rows()) throw std::invalid_argument("binet_check: matrices are not composable");
  if (rows.size() != cols.size()) throw std::invalid_argument("binet_check: index tuples differ in size");
  QMatrix ab = a * b;
  Rational lhs = minor(ab, rows, cols);
  Rational rhs(0);
  for (const auto& c : combinations(static_cast<int>(a.cols()), static_cast<int>(rows.size())))
    rhs += minor(a, rows, c) * minor(b, c, cols);
  return lhs == rhs;
}

/// sum_{j=1}^{t+1} (-1)^{j+1} [r | a, b_j] [r | b without b_j] for a of
/// length t-1 and b of length t+1, on the row set r (default 1..t).
inline RelationExpr plucker_relation(const std::vector<int>& a, const std::vector<int>& b,
                                     std::optional<std::vector<int>> rows = std::nullopt) {
  if (b.size() != a.size() + 2) throw std::invalid_argument("plucker_relation: need |b| = |a| + 2");
  const int t = static_cast<int>(a.size()) + 1;
  std::vector<int> r = rows ? *rows : detail::iota_vec(1, t);
  if (static_cast<int>(r.size()) != t) throw std::invalid_argument("plucker_relation: row set must have t entries");
  for (int x : a)
    if (x < 1) throw std::out_of_range("plucker_relation: indices are 1-based");
  for (int x : b)
    if (x < 1) throw std::out_of_range("plucker_relation: indices are 1-based");
  RelationExpr rel;
  for (int j = 0; j <= t; ++j) {
    std::vector<int> rest;
    for (int k = 0; k <= t; ++k)
      if (k != j) rest.push_back(b[k]);
    rel.add_product(Rational(j % 2 == 0 ? 1 : -1), {{r, detail::concat(a, {b[j]})}, {r, rest}});
  }
  return rel;
}

/// [12][34] - [13][24] + [14][23] on a generic 2 x 4 matrix.
inline RelationExpr plu2_relation() { return plucker_relation({1}, {2, 3, 4}); }

/// Every typical Pluecker relation for increasing a, b inside [n].
inline std::vector<RelationExpr> all_plucker_relations(int t, int n) {
  std::vector<RelationExpr> out;
  if (t < 1 || t + 1 > n) return out;
  for (const auto& a : combinations(n, t - 1))
    for (const auto& b : combinations(n, t + 1)) out.push_back(plucker_relation(a.indices(), b.indices()));
  return out;
}

/// Push-forward of a homogeneous relation among maximal minors of a t x n
/// matrix: sum_c [c]_A [c']_A sum_i l_i [c|alpha_i][c'|beta_i], over increasing
/// c inside the multiset u (|u| = 2t) with c' = u - c.
inline RelationExpr pushforward_relation(const RelationExpr& rel, const QMatrix& a, std::vector<int> u) {
  if (rel.empty()) return {};
  if (!rel.is_homogeneous()) throw std::invalid_argument("pushforward: relation is not homogeneous");
  const std::size_t t = a.rows();
  if (u.size() != 2 * t) throw std::invalid_argument("pushforward: multiset must have 2t elements");
  for (const auto& term : rel.terms())
    if (term.factors.size() != 2 || term.factors[0].size() != t || term.factors[1].size() != t)
      throw std::invalid_argument("pushforward: relation must be quadratic in t-minors");
  std::sort(u.begin(), u.end());
  for (int x : u)
    if (x < 1 || x > static_cast<int>(a.cols())) throw std::out_of_range("pushforward: multiset entry outside A's columns");

  // Distinct increasing sub-sequences c of u, each once.
  std::vector<std::vector<int>> cs;
  std::vector<int> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (cur.size() == t) {
      cs.push_back(cur);
      return;
    }
    for (std::size_t i = pos; i < u.size(); ++i) {
      if (i > pos && u[i] == u[i - 1]) continue;
      if (!cur.empty() && u[i] <= cur.back()) continue;
      cur.push_back(u[i]);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);

  auto a_minor = [&](const std::vector<int>& cols) {
    return det(a.select(detail::iota_vec(1, static_cast<int>(t)), cols));
  };
  RelationExpr out;
  for (const auto& c : cs) {
    std::vector<int> rest;
    std::multiset<int> pool(u.begin(), u.end());
    for (int x : c) pool.erase(pool.find(x));
    rest.assign(pool.begin(), pool.end());
    if (std::adjacent_find(rest.begin(), rest.end()) != rest.end()) continue;
    Rational w = a_minor(c) * a_minor(rest);
    if (w.is_zero()) continue;
    for (const auto& term : rel.terms())
      out.add_product(w * term.coeff, {{c, term.factors[0].cols}, {rest, term.factors[1].cols}});
  }
  return out;
}

/// The block matrix [[I_s, 0, 0], [0, I_{t-s}, I_{t-s}]] of size t x (2t - s).
inline QMatrix genplu2_block_matrix(int s, int t) {
  QMatrix a(t, 2 * t - s);
  for (int i = 0; i < s; ++i) a(i, i) = Rational(1);
  for (int i = 0; i < t - s; ++i) {
    a(s + i, s + i) = Rational(1);
    a(s + i, t + i) = Rational(1);
  }
  return a;
}

/// The multiset {1,1,2,2,...,s,s,s+1,...,2t-s}.
inline std::vector<int> genplu2_multiset(int s, int t) {
  std::vector<int> u;
  for (int i = 1; i <= s; ++i) u.insert(u.end(), {i, i});
  for (int i = s + 1; i <= 2 * t - s; ++i) u.push_back(i);
  return u;
}

/// Subsets b of w = {s+1..2t-s} of size t-s meeting each pair {i, i+t-s},
/// i = s+1..t, in exactly one element.
inline std::vector<std::vector<int>> genplu2_index_sets(int s, int t) {
  const int d = t - s;
  std::vector<std::vector<int>> out;
  for (int mask = 0; mask < (1 << d); ++mask) {
    std::vector<int> b;
    for (int i = 0; i < d; ++i) b.push_back((mask >> i) & 1 ? s + 1 + i + d : s + 1 + i);
    std::sort(b.begin(), b.end());
    out.push_back(b);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Sign attached to b: +1 if t-s is odd or #{i in b : i <= t} is even.
inline int genplu2_sign(const std::vector<int>& b, int s, int t) {
  if ((t - s) % 2 == 1) return 1;
  int low = static_cast<int>(std::count_if(b.begin(), b.end(), [t](int i) { return i <= t; }));
  return low % 2 == 0 ? 1 : -1;
}

/// sum_{b in B} (-1)^b sum_{j=t}^{2t} (-1)^{j+1} [1..s, b | 1..t-1, j][1..s, b' | t..2t without j].
inline RelationExpr genplu2_relation(int s, int t) {
  if (t < 1 || s < 0 || s > t) throw std::out_of_range("genplu2: need 0 <= s <= t");
  RelationExpr rel;
  const auto head = detail::iota_vec(1, s);
  const auto w = detail::iota_vec(s + 1, 2 * t - s);
  for (const auto& b : genplu2_index_sets(s, t)) {
    std::vector<int> bc;
    std::set_difference(w.begin(), w.end(), b.begin(), b.end(), std::back_inserter(bc));
    const int sb = genplu2_sign(b, s, t);
    for (int j = t; j <= 2 * t; ++j) {
      std::vector<int> cols2;
      for (int c = t; c <= 2 * t; ++c)
        if (c != j) cols2.push_back(c);
      int sign = sb * ((j + 1) % 2 == 0 ? 1 : -1);
      rel.add_product(Rational(sign), {{detail::concat(head, b), detail::concat(detail::iota_vec(1, t - 1), {j})},
                                       {detail::concat(head, bc), cols2}});
    }
  }
  return rel;
}

/// The same family produced by push-forward of the Pluecker relation with
/// a = 1..t-1, b = t..2t along the block matrix and multiset above.
inline RelationExpr genplu2_via_pushforward(int s, int t) {
  return pushforward_relation(plucker_relation(detail::iota_vec(1, t - 1), detail::iota_vec(t, 2 * t)),
                              genplu2_block_matrix(s, t), genplu2_multiset(s, t));
}

/// The 12-term relation among 2-minors of a 4 x 4 matrix, in its customary order.
inline RelationExpr twelve_term_relation() {
  return parse_relation(
      "+[12|14][34|23]-[14|14][23|23]-[23|14][14|23]+[34|14][12|23]"
      "-[12|13][34|24]+[14|13][23|24]+[23|13][14|24]-[34|13][12|24]"
      "+[12|12][34|34]-[14|12][23|34]-[23|12][14|34]+[34|12][12|34]");
}

/// Prepends a new row and column index 1 to every minor, shifting the rest by one.
inline RelationExpr append_index(const RelationExpr& rel) {
  RelationExpr out;
  for (const auto& t : rel.terms()) {
    std::vector<MinorSymbol> fs;
    for (const auto& f : t.factors) {
      std::vector<int> r{1}, c{1};
      for (int x : f.rows) r.push_back(x + 1);
      for (int x : f.cols) c.push_back(x + 1);
      fs.emplace_back(std::move(r), std::move(c));
    }
    out.add_term(t.coeff, std::move(fs));
  }
  return out;
}

/// det([R_i | C_j])_{i,j}: a minor of the compound matrix, as a relation expression.
inline RelationExpr compound_minor(const std::vector<std::vector<int>>& row_sets,
                                   const std::vector<std::vector<int>>& col_sets) {
  if (row_sets.size() != col_sets.size()) throw std::invalid_argument("compound_minor: sizes differ");
  const std::size_t k = row_sets.size();
  std::vector<int> perm(k);
  for (std::size_t i = 0; i < k; ++i) perm[i] = static_cast<int>(i);
  RelationExpr out;
  do {
    std::vector<int> p = perm;
    int sign = sort_with_sign(p);
    std::vector<std::pair<std::vector<int>, std::vector<int>>> fs;
    for (std::size_t i = 0; i < k; ++i) fs.emplace_back(row_sets[i], col_sets[perm[i]]);
    out.add_product(Rational(sign), fs);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// Degree-3 relations among the 2-minors of a 4 x 4 matrix, each written as
/// left side minus right side.
inline std::vector<std::pair<std::string, RelationExpr>> degree3_catalog() {
  using V = std::vector<std::vector<int>>;
  auto cm = [](const V& r, const V& c) { return compound_minor(r, c); };
  std::vector<std::pair<std::string, RelationExpr>> out;
  out.emplace_back("6a", cm({{1, 2}, {1, 3}, {2, 4}}, {{1, 2}, {1, 3}, {2, 4}}) -
                             cm({{1, 2}, {1, 4}, {2, 3}}, {{1, 2}, {1, 4}, {2, 3}}));
  out.emplace_back("6b", cm({{1, 2}, {1, 3}, {2, 3}}, {{1, 2}, {1, 3}, {2, 4}}) -
                             cm({{1, 2}, {1, 3}, {2, 3}}, {{1, 2}, {1, 4}, {2, 3}}));
  out.emplace_back("6c", cm({{1, 2}, {1, 3}, {1, 4}}, {{1, 2}, {1, 3}, {2, 4}}) +
                             cm({{1, 2}, {1, 3}, {1, 4}}, {{1, 2}, {1, 4}, {2, 3}}));
  out.emplace_back("6d", cm({{1, 2}, {1, 3}, {1, 4}}, {{1, 2}, {1, 3}, {2, 3}}));
  RelationExpr g = parse_relation("-[12|23][13|14]+[12|24][13|13]-[12|34][13|12]");
  RelationExpr e = parse_relation("[13|24]") * cm({{1, 2}, {1, 3}}, {{1, 2}, {1, 3}}) -
                   parse_relation("[13|23]") * cm({{1, 2}, {1, 3}}, {{1, 2}, {1, 4}}) -
                   parse_relation("[13|12]") * g;
  out.emplace_back("6e", e);
  return out;
}

/// Outcome of a zero test; `witness` describes a nonzero evaluation.
struct ZeroVerdict {
  bool zero = true;
  std::string witness;
};

enum class ZeroTestMode { Exact, Probabilistic };

/// Exact mode expands fully; probabilistic mode evaluates at `trials`
/// random points over F_p (a nonzero answer is always certain).
inline ZeroVerdict is_zero(const RelationExpr& rel, ZeroTestMode mode = ZeroTestMode::Exact, std::uint64_t seed = 1,
                           int trials = 20, std::uint64_t modulus = kDefaultPrime) {
  auto [m, n] = rel.extent();
  m = std::max(m, 1);
  n = std::max(n, 1);
  if (mode == ZeroTestMode::Exact) {
    SparsePoly p = expand(rel, m, n);
    if (p.is_zero()) return {};
    const auto& [mono, c] = *p.terms().begin();
    std::string w = "coefficient " + c.str() + " on monomial";
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j)
        if (mono[i * n + j]) w += " x" + std::to_string(i + 1) + "_" + std::to_string(j + 1) + "^" + std::to_string(mono[i * n + j]);
    return {false, w};
  }
  std::mt19937_64 rng(seed);
  PrimeField field{modulus};
  std::uniform_int_distribution<std::uint64_t> dist(0, modulus - 1);
  for (int trial = 0; trial < trials; ++trial) {
    PMatrix x(m, n, field);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j) x(i, j) = ModP::from_raw(dist(rng), modulus);
    ModP v = evaluate(rel, x);
    if (!v.is_zero())
      return {false, "trial " + std::to_string(trial) + " evaluates to " + v.str() + " mod " + std::to_string(modulus)};
  }
  return {};
}

/// Coefficients lambda_{kl} with delta eta = sum lambda_{kl} [a, A_k | b, B_l][A - A_k | B - B_l].
struct AntiStraightening {
  std::vector<std::pair<int, int>> index_pairs;  // (k, l), 1-based positions in A and B
  std::vector<Rational> coefficients;
  RelationExpr identity;  // delta eta - sum lambda_{kl} (...), expands to zero
};

namespace detail {

// Solves target = sum_j x_j cols[j] by equating monomial coefficients.
// Equations are taken in the order given by `row_order` over the monomials
// (empty = natural order).
inline std::optional<std::vector<Rational>> solve_coefficients(const SparsePoly& target,
                                                               const std::vector<SparsePoly>& cols,
                                                               const std::vector<std::size_t>& row_order = {}) {
  std::map<Monomial, std::size_t> index;
  auto note = [&](const SparsePoly& p) {
    for (const auto& [mono, c] : p.terms()) index.try_emplace(mono, 0);
  };
  note(target);
  for (const auto& c : cols) note(c);
  std::size_t r = 0;
  for (auto& [mono, idx] : index) idx = r++;
  std::vector<std::size_t> order(r);
  for (std::size_t i = 0; i < r; ++i) order[i] = i;
  if (!row_order.empty()) {
    if (row_order.size() != r) throw std::invalid_argument("solve_coefficients: row order has wrong length");
    order = row_order;
  }
  std::vector<std::size_t> where(r);
  for (std::size_t i = 0; i < r; ++i) where[order[i]] = i;
  QMatrix a(r, cols.size());
  std::vector<Rational> rhs(r, Rational(0));
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [mono, c] : cols[j].terms()) a(where[index[mono]], j) = c;
  for (const auto& [mono, c] : target.terms()) rhs[where[index[mono]]] = c;
  auto sol = solve_linear(a, rhs);
  if (!sol.consistent) return std::nullopt;
  return sol.particular;
}

inline std::size_t monomial_count(const SparsePoly& target, const std::vector<SparsePoly>& cols) {
  std::map<Monomial, int> seen;
  for (const auto& [mono, c] : target.terms()) seen[mono];
  for (const auto& p : cols)
    for (const auto& [mono, c] : p.terms()) seen[mono];
  return seen.size();
}

}  // namespace detail

/// Solves for the anti-straightening coefficients of delta = [a|b] (length
/// u) nested in eta = [A|B] (length v, beginning with a and b), u < v - 1.
/// Returns the basic solution (free unknowns set to zero). A permutation
/// `equation_seed` != 0 shuffles the order of the equations.
inline AntiStraightening anti_straighten(const std::vector<int>& a, const std::vector<int>& b,
                                         const std::vector<int>& big_a, const std::vector<int>& big_b,
                                         std::uint64_t equation_seed = 0) {
  const std::size_t u = a.size(), v = big_a.size();
  if (b.size() != u || big_b.size() != v) throw std::invalid_argument("anti_straighten: tuple sizes differ");
  if (u + 1 >= v) throw std::invalid_argument("anti_straighten: needs u < v - 1");
  if (!std::equal(a.begin(), a.end(), big_a.begin()) || !std::equal(b.begin(), b.end(), big_b.begin()))
    throw std::invalid_argument("anti_straighten: delta must be nested in eta");
  const int m = *std::max_element(big_a.begin(), big_a.end());
  const int n = *std::max_element(big_b.begin(), big_b.end());

  RelationExpr lhs;
  lhs.add_product(Rational(1), {{a, b}, {big_a, big_b}});
  AntiStraightening out;
  std::vector<RelationExpr> products;
  for (std::size_t k = u; k < v; ++k)
    for (std::size_t l = u; l < v; ++l) {
      std::vector<int> ra = detail::concat(a, {big_a[k]}), cb = detail::concat(b, {big_b[l]});
      std::vector<int> rest_r, rest_c;
      for (std::size_t i = 0; i < v; ++i) {
        if (i != k) rest_r.push_back(big_a[i]);
        if (i != l) rest_c.push_back(big_b[i]);
      }
      RelationExpr p;
      p.add_product(Rational(1), {{ra, cb}, {rest_r, rest_c}});
      products.push_back(std::move(p));
      out.index_pairs.emplace_back(static_cast<int>(k) + 1, static_cast<int>(l) + 1);
    }
  SparsePoly target = expand(lhs, m, n);
  std::vector<SparsePoly> cols;
  for (const auto& p : products) cols.push_back(expand(p, m, n));
  std::vector<std::size_t> order;
  if (equation_seed != 0) {
    std::size_t rows = detail::monomial_count(target, cols);
    order.resize(rows);
    for (std::size_t i = 0; i < rows; ++i) order[i] = i;
    std::mt19937_64 rng(equation_seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  auto sol = detail::solve_coefficients(target, cols, order);
  if (!sol) throw std::logic_error("anti_straighten: no solution found for a nested pair");
  out.coefficients = *sol;
  out.identity = lhs;
  for (std::size_t i = 0; i < products.size(); ++i)
    if (!out.coefficients[i].is_zero()) out.identity += products[i] * (-out.coefficients[i]);
  return out;
}

/// A product of generators with a coefficient.
struct GeneratorProduct {
  Rational coeff;
  std::vector<std::size_t> generators;  // indices into the generator list, non-decreasing
};

struct Membership {
  bool found = false;
  int degree = 0;  // number of generator factors per product
  std::vector<GeneratorProduct> terms;
  std::size_t candidates = 0;
  std::string method;
};

enum class SolveMethod { Modular, Exact };

namespace detail {

// Rational p/q with |p|, q <= sqrt(modulus / 2) congruent to r, if any.
inline std::optional<Rational> rational_reconstruct(std::uint64_t r, std::uint64_t modulus) {
  mpz_class m(std::to_string(modulus)), bound = sqrt(mpz_class(m / 2));
  mpz_class r0 = m, r1(std::to_string(r)), s0 = 0, s1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1, s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (s1 == 0 || abs(s1) > bound) return std::nullopt;
  if (s1 < 0) {
    s1 = -s1;
    r1 = -r1;
  }
  return Rational(r1, s1);
}

}  // namespace detail

/// Expresses `target` as a linear combination of products of `generators`
/// (at most `degree_bound` factors), working in the multidegree of the
/// target. The modular method solves at random points over F_p, lifts the
/// coefficients to Q and verifies the identity exactly, falling back to the
/// exact method if the lift fails.
inline Membership subalgebra_membership(const SparsePoly& target, const std::vector<SparsePoly>& generators, int m,
                                        int n, int degree_bound, SolveMethod method = SolveMethod::Modular,
                                        std::uint64_t seed = 1, std::size_t max_candidates = 200000) {
  Membership out;
  if (target.is_zero()) {
    out.found = true;
    out.method = "trivial";
    return out;
  }
  auto td = poly_multidegree(target, m, n);
  if (!td) throw std::invalid_argument("subalgebra_membership: target is not multihomogeneous");
  std::vector<std::vector<int>> gd;
  for (const auto& g : generators) {
    auto d = poly_multidegree(g, m, n);
    if (!d || g.is_zero()) throw std::invalid_argument("subalgebra_membership: generator is not multihomogeneous");
    gd.push_back(*d);
  }
  int target_degree = 0;
  for (int i = 0; i < m; ++i) target_degree += (*td)[i];

  std::vector<std::vector<std::size_t>> cands;
  std::vector<std::size_t> cur;
  std::vector<int> rem = *td;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (std::all_of(rem.begin(), rem.end(), [](int x) { return x == 0; })) {
      cands.push_back(cur);
      if (cands.size() > max_candidates)
        throw std::length_error("subalgebra_membership: more than " + std::to_string(max_candidates) +
                                " candidate products; lower the degree bound");
      return;
    }
    if (static_cast<int>(cur.size()) >= degree_bound) return;
    for (std::size_t g = start; g < generators.size(); ++g) {
      bool fits = true;
      for (std::size_t i = 0; i < rem.size() && fits; ++i) fits = gd[g][i] <= rem[i];
      if (!fits) continue;
      for (std::size_t i = 0; i < rem.size(); ++i) rem[i] -= gd[g][i];
      cur.push_back(g);
      rec(g);
      cur.pop_back();
      for (std::size_t i = 0; i < rem.size(); ++i) rem[i] += gd[g][i];
    }
  };
  if (target_degree > 0) rec(0);
  out.candidates = cands.size();
  if (cands.empty()) return out;

  auto product_poly = [&](const std::vector<std::size_t>& c) {
    SparsePoly p = SparsePoly::constant(static_cast<std::size_t>(m) * n, Rational(1));
    for (auto g : c) p = p * generators[g];
    return p;
  };
  auto finish = [&](const std::vector<Rational>& coeffs, const std::string& how) {
    out.found = true;
    out.method = how;
    out.degree = static_cast<int>(cands.front().size());
    for (std::size_t j = 0; j < cands.size(); ++j)
      if (!coeffs[j].is_zero()) out.terms.push_back({coeffs[j], cands[j]});
    return out;
  };

  if (method == SolveMethod::Modular) {
    const std::uint64_t p = kDefaultPrime;
    PrimeField field{p};
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> dist(1, p - 1);
    const std::size_t points = cands.size() + 8;
    PMatrix a(points, cands.size(), field);
    std::vector<ModP> rhs(points);
    const std::size_t nv = static_cast<std::size_t>(m) * n;
    for (std::size_t r = 0; r < points; ++r) {
      std::vector<ModP> x(nv);
      for (auto& xi : x) xi = ModP::from_raw(dist(rng), p);
      std::vector<ModP> gv;
      gv.reserve(generators.size());
      for (const auto& g : generators) gv.push_back(g.eval(x, field));
      for (std::size_t j = 0; j < cands.size(); ++j) {
        ModP v = field.one();
        for (auto g : cands[j]) v *= gv[g];
        a(r, j) = v;
      }
      rhs[r] = target.eval(x, field);
    }
    auto sol = solve_linear(a, rhs);
    if (!sol.consistent) return out;
    std::vector<Rational> coeffs;
    bool lifted = true;
    for (const auto& c : sol.particular) {
      auto q = detail::rational_reconstruct(c.residue(), p);
      if (!q) {
        lifted = false;
        break;
      }
      coeffs.push_back(*q);
    }
    if (lifted) {
      SparsePoly check = target * Rational(-1);
      for (std::size_t j = 0; j < cands.size(); ++j)
        if (!coeffs[j].is_zero()) check += product_poly(cands[j]) * coeffs[j];
      if (check.is_zero()) return finish(coeffs, "modular");
    }
  }
  std::vector<SparsePoly> cols;
  cols.reserve(cands.size());
  for (const auto& c : cands) cols.push_back(product_poly(c));
  auto sol = detail::solve_coefficients(target, cols);
  if (!sol) return out;
  return finish(*sol, "exact");
}

}  // namespace exteria
