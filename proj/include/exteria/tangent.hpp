// Differential of Lambda_t, low-degree pieces of the ideal of relations
// among t-minors, tangent dimensions at points of X_t, and the minor count
// behind singularity at rank-1 points.
#pragma once

#include "exteria/exterior.hpp"
#include "exteria/localization.hpp"
#include "exteria/parallel.hpp"
#include "exteria/polynomial.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace exteria {

/// Rank of the differential of Lambda_t at B. Entry (I,J),(i,j) of the
/// Jacobian is (-1)^{pos(i)+pos(j)} [I-i | J-j]_B when i in I and j in J.
inline std::size_t d_lambda_rank(const QMatrix& b, int t) {
  const int m = static_cast<int>(b.rows()), n = static_cast<int>(b.cols());
  if (t < 1 || t > std::min(m, n)) throw std::invalid_argument("d_lambda_rank: needs 1 <= t <= min(m, n)");
  auto rows = combinations(m, t), cols = combinations(n, t);
  QMatrix jac(rows.size() * cols.size(), static_cast<std::size_t>(m) * n);
  for (std::size_t a = 0; a < rows.size(); ++a)
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const std::size_t r = a * cols.size() + c;
      for (int pi = 0; pi < t; ++pi)
        for (int pj = 0; pj < t; ++pj) {
          Rational v = minor(b, without(rows[a], rows[a][pi]), without(cols[c], cols[c][pj]));
          if (v.is_zero()) continue;
          jac(r, static_cast<std::size_t>(rows[a][pi] - 1) * n + (cols[c][pj] - 1)) = (pi + pj) % 2 ? -v : v;
        }
    }
  return rank(jac);
}

/// Dimension of X_t(m, n): m(n - m) + 1 (m <= n) when t = min(m, n), else mn.
inline long variety_dimension(int m, int n, int t) {
  const int lo = std::min(m, n), hi = std::max(m, n);
  if (t < 1 || t > lo) throw std::invalid_argument("variety_dimension: needs 1 <= t <= min(m, n)");
  if (t == lo) return static_cast<long>(lo) * (hi - lo) + 1;
  return static_cast<long>(m) * n;
}

/// Relations of one multidegree: a basis of the kernel of Y_gamma -> gamma
/// on the span of the Y-monomials of that multidegree.
struct SliceBlock {
  int degree = 0;
  std::vector<int> multidegree;              // row counts, then column counts
  std::vector<std::vector<int>> monomials;   // non-decreasing Y indices
  std::vector<std::vector<Rational>> kernel; // coefficient vectors over `monomials`
};

/// Degree <= d part of the ideal of relations among the t-minors of the
/// generic m x n matrix. Y variable r * C(n,t) + c is the minor on the r-th
/// row subset and c-th column subset, matching ExteriorPoint coordinates.
struct RelationIdealSlice {
  int m = 0, n = 0, t = 0, d = 0;
  std::vector<MinorSymbol> symbols;
  std::map<std::vector<int>, SliceBlock> blocks;

  [[nodiscard]] std::size_t variables() const { return symbols.size(); }
  [[nodiscard]] std::size_t dimension() const {
    std::size_t s = 0;
    for (const auto& [key, b] : blocks) s += b.kernel.size();
    return s;
  }
  [[nodiscard]] std::size_t dimension(int degree) const {
    std::size_t s = 0;
    for (const auto& [key, b] : blocks)
      if (b.degree == degree) s += b.kernel.size();
    return s;
  }
};

inline constexpr std::size_t kSliceMaxVariables = 40;
inline constexpr int kSliceMaxDegree = 3;

namespace detail {

inline std::vector<int> y_multidegree(const std::vector<int>& mono, const std::vector<MinorSymbol>& symbols, int m,
                                      int n) {
  std::vector<int> key(m + n, 0);
  for (int y : mono) {
    for (int r : symbols[y].rows) ++key[r - 1];
    for (int c : symbols[y].cols) ++key[m + c - 1];
  }
  return key;
}

}  // namespace detail

inline RelationIdealSlice relation_ideal_slice(int m, int n, int t, int d, unsigned threads = 1) {
  if (t < 1 || t > std::min(m, n)) throw std::invalid_argument("relation_ideal_slice: needs 1 <= t <= min(m, n)");
  const std::size_t nvars = binomial(m, t) * binomial(n, t);
  if (nvars > kSliceMaxVariables)
    throw std::length_error("relation_ideal_slice: C(m,t)*C(n,t) = " + std::to_string(nvars) + " exceeds " +
                            std::to_string(kSliceMaxVariables));
  if (d < 1 || d > kSliceMaxDegree)
    throw std::length_error("relation_ideal_slice: degree " + std::to_string(d) + " outside 1.." +
                            std::to_string(kSliceMaxDegree));
  RelationIdealSlice s;
  s.m = m;
  s.n = n;
  s.t = t;
  s.d = d;
  s.symbols = all_minors(m, n, t);

  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int start, int left) {
    if (left == 0) {
      auto key = detail::y_multidegree(cur, s.symbols, m, n);
      auto& b = s.blocks[key];
      b.degree = static_cast<int>(cur.size());
      b.multidegree = key;
      b.monomials.push_back(cur);
      return;
    }
    for (int y = start; y < static_cast<int>(nvars); ++y) {
      cur.push_back(y);
      rec(y, left - 1);
      cur.pop_back();
    }
  };
  for (int e = 1; e <= d; ++e) rec(0, e);

  std::vector<SliceBlock*> work;
  for (auto& [key, b] : s.blocks)
    if (b.monomials.size() > 1) work.push_back(&b);
  std::vector<SparsePoly> minors;
  for (const auto& sym : s.symbols) minors.push_back(minor_poly(sym, m, n));
  parallel_for(work.size(), threads, [&](std::size_t w) {
    SliceBlock& b = *work[w];
    std::vector<SparsePoly> cols;
    for (const auto& mono : b.monomials) {
      SparsePoly p = minors[mono[0]];
      for (std::size_t i = 1; i < mono.size(); ++i) p = p * minors[mono[i]];
      cols.push_back(std::move(p));
    }
    std::map<Monomial, std::size_t> rows;
    for (const auto& p : cols)
      for (const auto& [mono, c] : p.terms()) rows.try_emplace(mono, rows.size());
    QMatrix a(rows.size(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (const auto& [mono, c] : cols[j].terms()) a(rows[mono], j) = c;
    b.kernel = nullspace(a);
  });
  return s;
}

/// Y-polynomial of a relation among t-minors, split by multidegree:
/// key -> (Y-monomial -> coefficient).
inline std::map<std::vector<int>, std::map<std::vector<int>, Rational>> relation_to_y(const RelationIdealSlice& s,
                                                                                       const RelationExpr& rel) {
  std::map<MinorSymbol, int> index;
  for (std::size_t i = 0; i < s.symbols.size(); ++i) index[s.symbols[i]] = static_cast<int>(i);
  std::map<std::vector<int>, std::map<std::vector<int>, Rational>> out;
  for (const auto& term : rel.terms()) {
    std::vector<int> mono;
    for (const auto& f : term.factors) {
      auto it = index.find(f);
      if (it == index.end())
        throw std::invalid_argument("relation uses " + f.str() + ", which is not a t-minor of the " +
                                    std::to_string(s.m) + " x " + std::to_string(s.n) + " matrix");
      mono.push_back(it->second);
    }
    std::sort(mono.begin(), mono.end());
    auto& slot = out[detail::y_multidegree(mono, s.symbols, s.m, s.n)][mono];
    slot += term.coeff;
  }
  return out;
}

/// Whether the relation lies in the span of the slice (it must have degree <= d).
inline bool slice_contains(const RelationIdealSlice& s, const RelationExpr& rel) {
  for (const auto& [key, poly] : relation_to_y(s, rel)) {
    bool nonzero = false;
    for (const auto& [mono, c] : poly) nonzero = nonzero || !c.is_zero();
    if (!nonzero) continue;
    const int deg = static_cast<int>(poly.begin()->first.size());
    if (deg == 0) return false;
    if (deg > s.d) throw std::invalid_argument("slice_contains: relation degree exceeds the slice degree");
    auto it = s.blocks.find(key);
    if (it == s.blocks.end()) return false;
    const SliceBlock& b = it->second;
    std::map<std::vector<int>, std::size_t> pos;
    for (std::size_t i = 0; i < b.monomials.size(); ++i) pos[b.monomials[i]] = i;
    QMatrix a(b.kernel.size() + 1, b.monomials.size());
    for (std::size_t r = 0; r < b.kernel.size(); ++r)
      for (std::size_t j = 0; j < b.monomials.size(); ++j) a(r, j) = b.kernel[r][j];
    for (const auto& [mono, c] : poly) a(b.kernel.size(), pos.at(mono)) = c;
    if (rank(a) != b.kernel.size()) return false;
  }
  return true;
}

/// Number of Y variables minus the rank at x of the Jacobian of the slice.
/// This is at least the local dimension of X_t at x; equality with the
/// dimension of X_t certifies smoothness.
inline std::size_t tangent_dim_at(const ExteriorPoint& x, const RelationIdealSlice& s) {
  if (x.m != s.m || x.n != s.n || x.t != s.t) throw std::invalid_argument("tangent_dim_at: point and slice differ in (m, n, t)");
  const std::size_t nv = s.variables();
  const std::size_t nc = x.coords.cols();
  std::vector<Rational> y(nv);
  for (std::size_t i = 0; i < nv; ++i) y[i] = x.coords(i / nc, i % nc);

  // Reduced rows with their pivot columns.
  std::vector<std::vector<Rational>> basis;
  std::vector<std::size_t> pivot;
  auto insert = [&](std::vector<Rational> v) {
    for (std::size_t r = 0; r < basis.size(); ++r)
      if (!v[pivot[r]].is_zero()) {
        Rational f = v[pivot[r]];
        for (std::size_t j = 0; j < nv; ++j)
          if (!basis[r][j].is_zero()) v[j] -= f * basis[r][j];
      }
    std::size_t p = 0;
    while (p < nv && v[p].is_zero()) ++p;
    if (p == nv) return;
    Rational inv = v[p].inverse();
    for (auto& e : v) e *= inv;
    for (std::size_t r = 0; r < basis.size(); ++r)
      if (!basis[r][p].is_zero()) {
        Rational f = basis[r][p];
        for (std::size_t j = 0; j < nv; ++j)
          if (!v[j].is_zero()) basis[r][j] -= f * v[j];
      }
    basis.push_back(std::move(v));
    pivot.push_back(p);
  };

  for (const auto& [key, b] : s.blocks) {
    if (basis.size() == nv) break;
    // Gradient of each monomial at y.
    std::vector<std::map<std::size_t, Rational>> grads(b.monomials.size());
    for (std::size_t i = 0; i < b.monomials.size(); ++i) {
      const auto& mono = b.monomials[i];
      for (std::size_t k = 0; k < mono.size(); ++k) {
        if (k && mono[k] == mono[k - 1]) continue;
        Rational v(1);
        bool skipped = false;
        for (std::size_t l = 0; l < mono.size() && !v.is_zero(); ++l) {
          if (!skipped && mono[l] == mono[k]) {
            skipped = true;
            continue;
          }
          v *= y[mono[l]];
        }
        if (v.is_zero()) continue;
        int mult = static_cast<int>(std::count(mono.begin(), mono.end(), mono[k]));
        grads[i][mono[k]] += v * Rational(mult);
      }
    }
    for (const auto& g : b.kernel) {
      std::vector<Rational> row(nv);
      bool any = false;
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i].is_zero()) continue;
        for (const auto& [j, v] : grads[i]) {
          row[j] += g[i] * v;
          any = true;
        }
      }
      if (any) insert(std::move(row));
      if (basis.size() == nv) break;
    }
  }
  return nv - basis.size();
}

/// Count of t-minors sharing a (t+1) x (t+1) submatrix with [1..t|1..t].
struct SingCount {
  int m = 0, n = 0, t = 0;
  long enumerated = 0;
  long closed_form = 0;  // (t(m-t)+1)(t(n-t)+1)
  long mn = 0;
  [[nodiscard]] bool matches() const { return enumerated == closed_form; }
  [[nodiscard]] bool exceeds() const { return enumerated > mn; }
};

/// Whether (m, n, t) avoids the cases t <= 1, t >= min(m, n) and t = m - 1 = n - 1.
inline bool sing_count_in_range(int m, int n, int t) {
  return t > 1 && t < std::min(m, n) && !(m == n && t == m - 1);
}

inline SingCount sing_counting_check(int m, int n, int t) {
  if (!sing_count_in_range(m, n, t))
    throw std::invalid_argument("sing_counting_check: needs 1 < t < min(m, n) and not t = m - 1 = n - 1");
  SingCount out{m, n, t};
  auto near = [t](const Combination& c) {
    int outside = 0;
    for (int i : c) outside += i > t;
    return outside <= 1;
  };
  long rows = 0, cols = 0;
  for (const auto& r : combinations(m, t)) rows += near(r);
  for (const auto& c : combinations(n, t)) cols += near(c);
  out.enumerated = rows * cols;
  out.closed_form = static_cast<long>(t * (m - t) + 1) * (t * (n - t) + 1);
  out.mn = static_cast<long>(m) * n;
  return out;
}

}  // namespace exteria
