// Rank and small-rank invariants, the test functions f_v, the normal forms
// d_{u,u+k-1}, orbit classification and dimensions, and the fibers of Lambda_t.
#pragma once

#include "exteria/exterior.hpp"
#include "exteria/shapes.hpp"

#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace exteria {

/// Orbit type: u = small rank, k as in d_{u,u+k-1}. The zero orbit is
/// (0, 0) and the rank-1 orbit is (1, 0).
struct OrbitType {
  int u = 0;
  int k = 0;
  friend bool operator==(const OrbitType&, const OrbitType&) = default;
};

/// Rank of the normal form of the given type.
inline std::size_t orbit_rank(const OrbitType& o) {
  if (o.u <= 1) return static_cast<std::size_t>(o.u);
  return binomial(o.u + o.k - 1, o.u - 1);
}

inline bool is_admissible(const OrbitType& o, int m, int n, int t) {
  const int mm = std::min(m, n);
  if (o.u == 0 || o.u == 1) return o.k == 0;
  return o.u >= 2 && o.u <= t + 1 && o.k >= 1 && o.k <= mm - t;
}

/// All orbit types of X_t(m, n): zero, rank 1, then (u, k) by increasing u and k.
inline std::vector<OrbitType> admissible_orbits(int m, int n, int t) {
  if (t < 1 || t > std::min(m, n)) throw std::out_of_range("admissible_orbits: need 1 <= t <= min(m, n)");
  std::vector<OrbitType> out{{0, 0}, {1, 0}};
  for (int u = 2; u <= t + 1; ++u)
    for (int k = 1; k <= std::min(m, n) - t; ++k) out.push_back({u, k});
  return out;
}

/// Dimension of the orbit (equivalently of its closure).
inline long orbit_dimension(const OrbitType& o, int m, int n, int t) {
  if (!is_admissible(o, m, n, t)) throw std::invalid_argument("orbit_dimension: inadmissible orbit type");
  if (o.u == 0) return 0;
  if (o.u == 1) return static_cast<long>(m - t) * t + static_cast<long>(n - t) * t + 1;
  long a = t - o.u + 1;
  return static_cast<long>(m) * n - a * a - static_cast<long>(m - t - o.k) * (n - t - o.k);
}

/// zero -> q_t, rank 1 -> q_{t+1}, (u, k) -> p_{t-u} + q_{t+1+k}.
inline PrimeIdeal orbit_to_prime(const OrbitType& o, int m, int n, int t) {
  if (!is_admissible(o, m, n, t)) throw std::invalid_argument("orbit_to_prime: inadmissible orbit type");
  const int mm = std::min(m, n);
  if (o.u == 0) return make_q_t(mm, t);
  if (o.u == 1) return make_q_next(mm, t);
  return make_pq(t - o.u, t + 1 + o.k, mm, t);
}

/// The 0/1 diagonal normal form d_{u,u+k-1}: with v = t + 1 - u, ones at
/// ({1..v} + I, {1..v} + I) for the (u-1)-subsets I of {v+1, ..., t+k}.
inline ExteriorPoint normal_form(const OrbitType& o, int m, int n, int t) {
  if (!is_admissible(o, m, n, t)) throw std::invalid_argument("normal_form: inadmissible orbit type");
  ExteriorPoint x = ExteriorPoint::zero(m, n, t);
  if (o.u == 0) return x;
  if (o.u == 1) {
    x.at(initial_segment(t, m), initial_segment(t, n)) = Rational(1);
    return x;
  }
  const int v = t + 1 - o.u;
  for (const auto& tail : combinations(o.u + o.k - 1, o.u - 1)) {
    std::vector<int> idx;
    for (int i = 1; i <= v; ++i) idx.push_back(i);
    for (int i : tail) idx.push_back(i + v);
    x.at(Combination(idx, m), Combination(idx, n)) = Rational(1);
  }
  return x;
}

namespace detail {

inline QMatrix random_invertible_from(std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    QMatrix g = random_integer_matrix(n, n, rng);
    if (rank(g) == n) return g;
  }
}

// The (t+1) x (t+1) block of x on rows and columns that are t-subsets of
// {1..t+1}; index r corresponds to the subset missing t+1-r.
inline QMatrix leading_block(const ExteriorPoint& x) {
  const int t = x.t;
  QMatrix b(t + 1, t + 1);
  auto sub = combinations(t + 1, t);
  for (int i = 0; i <= t; ++i)
    for (int j = 0; j <= t; ++j) {
      Combination ri(sub[i].indices(), x.m), cj(sub[j].indices(), x.n);
      b(i, j) = x.at(ri, cj);
    }
  return b;
}

}  // namespace detail

/// g . x for g = (P, Q): Lambda(P) x Lambda(Q).
inline ExteriorPoint act(const QMatrix& p, const ExteriorPoint& x, const QMatrix& q) {
  return ExteriorPoint(x.m, x.n, x.t, compound_matrix(p, x.t) * x.coords * compound_matrix(q, x.t));
}

/// f_v(x) = det((-1)^{i+j} E_{[t+1]\i, [t+1]\j}(x)), i, j = v+1..t+1.
inline Rational f_v_eval(const ExteriorPoint& x, int v) {
  const int t = x.t;
  if (x.m < t + 1 || x.n < t + 1) throw std::invalid_argument("f_v: needs m, n >= t + 1");
  if (v < 0 || v > t + 1) throw std::out_of_range("f_v: v out of range");
  QMatrix block = detail::leading_block(x);
  const int size = t + 1 - v;
  QMatrix a(size, size);
  for (int i = v + 1; i <= t + 1; ++i)
    for (int j = v + 1; j <= t + 1; ++j) {
      Rational e = block(t + 1 - i, t + 1 - j);
      a(i - v - 1, j - v - 1) = (i + j) % 2 == 0 ? e : -e;
    }
  return det(a);
}

enum class SmallRankStrategy { Randomized, Certificate };

/// Small rank: the largest rank of x restricted to wedge^t U over subspaces
/// U of dimension <= t + 1. The randomized strategy maximizes over random
/// U and always returns a lower bound. The certificate strategy returns
/// t + 1 - min{v : f_v(g x) != 0} over random g in G and is exact on X_t.
inline int small_rank(const ExteriorPoint& x, SmallRankStrategy strategy = SmallRankStrategy::Randomized,
                      std::uint64_t seed = 1, int trials = 20) {
  if (x.is_zero()) return 0;
  const int t = x.t;
  std::mt19937_64 rng(seed);
  if (strategy == SmallRankStrategy::Certificate && x.m > t && x.n > t) {
    int best_v = t + 1;
    for (int trial = 0; trial < trials && best_v > 0; ++trial) {
      QMatrix p = detail::random_invertible_from(x.m, rng), q = detail::random_invertible_from(x.n, rng);
      ExteriorPoint gx = act(p, x, q);
      for (int v = 0; v < best_v; ++v)
        if (!f_v_eval(gx, v).is_zero()) {
          best_v = v;
          break;
        }
    }
    return t + 1 - best_v;
  }
  const std::size_t dim_u = std::min<std::size_t>(t + 1, x.m);
  int best = 0;
  for (int trial = 0; trial < trials; ++trial) {
    QMatrix u = random_integer_matrix(dim_u, x.m, rng);
    best = std::max(best, static_cast<int>(rank(compound_matrix(u, t) * x.coords)));
    if (best == static_cast<int>(binomial(dim_u, t))) break;
  }
  return best;
}

/// True when the t-vector p in wedge^t K^dim satisfies every Pluecker
/// relation sum_j (-1)^{j+1} p(a + b_j) p(b - b_j) = 0.
inline bool satisfies_plucker(const std::vector<Rational>& p, int dim, int t) {
  if (t <= 1 || t >= dim - 1) return true;
  for (const auto& a : combinations(dim, t - 1))
    for (const auto& b : combinations(dim, t + 1)) {
      Rational sum(0);
      for (int j = 0; j <= t; ++j) {
        std::vector<int> left = a.indices();
        left.push_back(b[j]);
        int sign = sort_with_sign(left);
        if (sign == 0) continue;
        Rational l = p[Combination(left, dim).lex_index()];
        if (l.is_zero()) continue;
        Rational r = p[without(b, b[j]).lex_index()];
        Rational term = l * r;
        if ((j % 2 == 0) == (sign > 0)) sum += term; else sum -= term;
      }
      if (!sum.is_zero()) return false;
    }
  return true;
}

/// Rows of a point of X_t are decomposable t-vectors of W and columns are
/// decomposable in wedge^t V*. Returns false if some row or column is not.
inline bool rows_and_columns_decomposable(const ExteriorPoint& x) {
  for (std::size_t i = 0; i < x.coords.rows(); ++i) {
    std::vector<Rational> row(x.coords.cols());
    for (std::size_t j = 0; j < x.coords.cols(); ++j) row[j] = x.coords(i, j);
    if (!satisfies_plucker(row, x.n, x.t)) return false;
  }
  for (std::size_t j = 0; j < x.coords.cols(); ++j) {
    std::vector<Rational> col(x.coords.rows());
    for (std::size_t i = 0; i < x.coords.rows(); ++i) col[i] = x.coords(i, j);
    if (!satisfies_plucker(col, x.m, x.t)) return false;
  }
  return true;
}

struct OrbitDescriptor {
  bool in_variety = false;
  std::string reason;  // why the point was rejected, empty otherwise
  int small_rank = 0;
  std::size_t rank = 0;
  std::optional<OrbitType> orbit;
  long dimension = 0;
  std::optional<PrimeIdeal> prime;
};

/// Classifies x by its pair (small rank, rank). An inadmissible pair, or a
/// row/column of x or of a random G-translate violating the Pluecker
/// relations, certifies x is not in X_t.
inline OrbitDescriptor classify(const ExteriorPoint& x, std::uint64_t seed = 1, int trials = 20) {
  OrbitDescriptor d;
  d.rank = x.rank();
  d.small_rank = small_rank(x, SmallRankStrategy::Randomized, seed, trials);
  const int m = x.m, n = x.n, t = x.t;
  std::optional<OrbitType> match;
  for (const auto& o : admissible_orbits(m, n, t))
    if (o.u == d.small_rank && orbit_rank(o) == d.rank) match = o;
  if (!match) {
    d.reason = "inadmissible (small rank, rank) pair";
    return d;
  }
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  bool decomposable = rows_and_columns_decomposable(x);
  for (int trial = 0; trial < 2 && decomposable; ++trial) {
    QMatrix p = detail::random_invertible_from(m, rng), q = detail::random_invertible_from(n, rng);
    decomposable = rows_and_columns_decomposable(act(p, x, q));
  }
  if (!decomposable) {
    d.reason = "Pluecker relation violated by a row or column";
    return d;
  }
  d.in_variety = true;
  d.orbit = match;
  d.dimension = orbit_dimension(*match, m, n, t);
  d.prime = orbit_to_prime(*match, m, n, t);
  return d;
}

/// For rank f, rank g > t: Lambda_t(f) = Lambda_t(g) iff g = zeta f with
/// zeta^t = 1. Over the rationals zeta = +-1, and -1 only for even t.
inline bool same_fiber_high_rank(const QMatrix& f, const QMatrix& g, int t) {
  if (f.rows() != g.rows() || f.cols() != g.cols()) throw std::invalid_argument("fiber: shapes differ");
  if (rank(f) <= static_cast<std::size_t>(t) || rank(g) <= static_cast<std::size_t>(t))
    throw std::invalid_argument("same_fiber_high_rank: needs rank > t");
  return f == g || (t % 2 == 0 && f == -g);
}

struct RankTFiber {
  bool same_line = false;  // Lambda_t(g) = c Lambda_t(f) for some c != 0
  Rational scalar;         // c when same_line
  bool scalar_is_one = false;
};

/// For rank f = rank g = t: the compounds are proportional iff f and g
/// have the same kernel and image; reports the factor.
inline RankTFiber same_fiber_rank_t(const QMatrix& f, const QMatrix& g, int t) {
  if (f.rows() != g.rows() || f.cols() != g.cols()) throw std::invalid_argument("fiber: shapes differ");
  const auto tt = static_cast<std::size_t>(t);
  if (rank(f) != tt || rank(g) != tt) throw std::invalid_argument("same_fiber_rank_t: needs rank exactly t");
  const std::size_t m = f.rows(), n = f.cols();
  QMatrix side(m, 2 * n), stacked(2 * m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      side(i, j) = f(i, j);
      side(i, n + j) = g(i, j);
      stacked(i, j) = f(i, j);
      stacked(m + i, j) = g(i, j);
    }
  RankTFiber out;
  if (rank(side) != tt || rank(stacked) != tt) return out;
  QMatrix cf = compound_matrix(f, t), cg = compound_matrix(g, t);
  for (std::size_t i = 0; i < cf.rows() && !out.same_line; ++i)
    for (std::size_t j = 0; j < cf.cols(); ++j)
      if (!cf(i, j).is_zero()) {
        out.scalar = cg(i, j) / cf(i, j);
        out.same_line = true;
        break;
      }
  out.scalar_is_one = out.scalar.is_one();
  return out;
}

}  // namespace exteria
