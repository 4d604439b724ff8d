// Exterior powers: compound matrices, multivectors with wedge and
// contraction, and the multiplication maps Theta between L_{t-v} and L_t.
//
// Conventions. A linear map K^m -> K^n is an m x n matrix B acting on row
// vectors: e_i |-> sum_j B(i,j) f_j. A point of L_t(m,n) is the
// C(m,t) x C(n,t) matrix E with e_I |-> sum_J E(I,J) f_J, rows and columns
// indexed by lex-ordered t-subsets. Under Lambda_t, E(I,J) = [I|J]_B.
#pragma once

#include "exteria/combinations.hpp"
#include "exteria/matrix.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace exteria {

/// Element of L_t(m,n) = Hom(wedge^t K^m, wedge^t K^n).
struct ExteriorPoint {
  int m = 0, n = 0, t = 0;
  QMatrix coords;

  ExteriorPoint() = default;
  ExteriorPoint(int m_, int n_, int t_, QMatrix c) : m(m_), n(n_), t(t_), coords(std::move(c)) {
    if (t < 0 || t > m || t > n) throw std::invalid_argument("exterior point: t out of range");
    if (coords.rows() != binomial(m, t) || coords.cols() != binomial(n, t))
      throw std::invalid_argument("exterior point: coordinate shape does not match (m, n, t)");
  }
  static ExteriorPoint zero(int m, int n, int t) {
    return ExteriorPoint(m, n, t, QMatrix(binomial(m, t), binomial(n, t)));
  }

  [[nodiscard]] const Rational& at(const Combination& I, const Combination& J) const {
    return coords(I.lex_index(), J.lex_index());
  }
  Rational& at(const Combination& I, const Combination& J) { return coords(I.lex_index(), J.lex_index()); }
  [[nodiscard]] bool is_zero() const { return coords.is_zero(); }
  [[nodiscard]] std::size_t rank() const { return exteria::rank(coords); }

  friend bool operator==(const ExteriorPoint& a, const ExteriorPoint& b) {
    return a.m == b.m && a.n == b.n && a.t == b.t && a.coords == b.coords;
  }
};

/// Matrix of all t-minors of B (t = 0 gives the 1 x 1 identity).
template <ExactScalar F>
DenseMatrix<F> compound_matrix(const DenseMatrix<F>& b, int t) {
  const int m = static_cast<int>(b.rows()), n = static_cast<int>(b.cols());
  if (t < 0 || t > m || t > n) throw std::invalid_argument("compound: t exceeds matrix dimensions");
  auto rows = combinations(m, t), cols = combinations(n, t);
  DenseMatrix<F> out(rows.size(), cols.size(), b.field());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = minor(b, rows[i], cols[j]);
  return out;
}

/// Lambda_t(B) as a point of L_t(m,n).
inline ExteriorPoint compound(const QMatrix& b, int t) {
  return ExteriorPoint(static_cast<int>(b.rows()), static_cast<int>(b.cols()), t, compound_matrix(b, t));
}

/// Element of wedge^grade K^dim in the lex-ordered basis e_S.
class Multivector {
 public:
  Multivector() = default;
  Multivector(int dim, int grade) : dim_(dim), grade_(grade), c_(checked_size(dim, grade)) {}

  static Multivector basis(const Combination& s) {
    Multivector x(s.bound(), static_cast<int>(s.size()));
    x.c_[s.lex_index()] = Rational(1);
    return x;
  }
  /// Grade-1 element with the given coordinates.
  static Multivector vector(const std::vector<Rational>& v) {
    Multivector x(static_cast<int>(v.size()), 1);
    x.c_ = v;
    return x;
  }
  /// v_1 ^ ... ^ v_k for coordinate vectors of equal length (k = 0 gives 1).
  static Multivector wedge_of(const std::vector<std::vector<Rational>>& vs, int dim) {
    Multivector acc(dim, 0);
    acc.c_[0] = Rational(1);
    for (const auto& v : vs) acc = acc.wedge(vector(v));
    return acc;
  }

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] int grade() const { return grade_; }
  [[nodiscard]] const std::vector<Rational>& coefficients() const { return c_; }
  [[nodiscard]] const Rational& operator[](std::size_t i) const { return c_[i]; }
  Rational& operator[](std::size_t i) { return c_[i]; }
  [[nodiscard]] const Rational& coefficient(const Combination& s) const { return c_[s.lex_index()]; }
  [[nodiscard]] bool is_zero() const {
    for (const auto& x : c_)
      if (!x.is_zero()) return false;
    return true;
  }

  /// Exterior product with the shuffle sign of the merged index sets.
  [[nodiscard]] Multivector wedge(const Multivector& o) const {
    if (dim_ != o.dim_) throw std::invalid_argument("wedge: ambient dimensions differ");
    if (grade_ + o.grade_ > dim_) throw std::invalid_argument("wedge: grade exceeds ambient dimension");
    Multivector out(dim_, grade_ + o.grade_);
    auto lhs = combinations(dim_, grade_), rhs = combinations(dim_, o.grade_);
    for (std::size_t a = 0; a < lhs.size(); ++a) {
      if (c_[a].is_zero()) continue;
      for (std::size_t b = 0; b < rhs.size(); ++b) {
        if (o.c_[b].is_zero()) continue;
        std::vector<int> merged = lhs[a].indices();
        merged.insert(merged.end(), rhs[b].begin(), rhs[b].end());
        int sign = sort_with_sign(merged);
        if (sign == 0) continue;
        Rational term = c_[a] * o.c_[b];
        auto& slot = out.c_[Combination(std::move(merged), dim_).lex_index()];
        if (sign > 0) slot += term; else slot -= term;
      }
    }
    return out;
  }

  /// Right contraction x -| alpha by a covector:
  /// e_{s_1} ^ ... ^ e_{s_u} -| alpha = sum_k (-1)^{k-1} alpha(e_{s_k}) e_{S \ s_k}.
  [[nodiscard]] Multivector contract(const std::vector<Rational>& alpha) const {
    if (static_cast<int>(alpha.size()) != dim_) throw std::invalid_argument("contract: covector length mismatch");
    if (grade_ == 0) throw std::invalid_argument("contract: grade 0 element");
    Multivector out(dim_, grade_ - 1);
    auto basis_sets = combinations(dim_, grade_);
    for (std::size_t a = 0; a < basis_sets.size(); ++a) {
      if (c_[a].is_zero()) continue;
      const auto& s = basis_sets[a];
      for (std::size_t k = 0; k < s.size(); ++k) {
        const Rational& ak = alpha[s[k] - 1];
        if (ak.is_zero()) continue;
        Rational term = c_[a] * ak;
        auto& slot = out.c_[without(s, s[k]).lex_index()];
        if (k % 2 == 0) slot += term; else slot -= term;
      }
    }
    return out;
  }

  /// Contraction by alpha_1 ^ ... ^ alpha_v, i.e. by alpha_1 first, then alpha_2, ...
  [[nodiscard]] Multivector contract_all(const std::vector<std::vector<Rational>>& alphas) const {
    Multivector x = *this;
    for (const auto& a : alphas) x = x.contract(a);
    return x;
  }

  Multivector& operator+=(const Multivector& o) {
    same_space(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Multivector& operator-=(const Multivector& o) {
    same_space(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Multivector& operator*=(const Rational& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(Multivector a, const Rational& s) { return a *= s; }
  friend bool operator==(const Multivector& a, const Multivector& b) {
    return a.dim_ == b.dim_ && a.grade_ == b.grade_ && a.c_ == b.c_;
  }

 private:
  static std::size_t checked_size(int dim, int grade) {
    if (dim < 0 || grade < 0 || grade > dim) throw std::invalid_argument("multivector: grade out of range");
    return binomial(dim, grade);
  }
  void same_space(const Multivector& o) const {
    if (dim_ != o.dim_ || grade_ != o.grade_) throw std::invalid_argument("multivectors live in different spaces");
  }
  int dim_ = 0, grade_ = 0;
  std::vector<Rational> c_;
};

/// Closed form of contract_all on a basis element: for S = (s_1 < ... < s_u),
/// e_S -| (alpha_1 ^ ... ^ alpha_v) = sum_T (-1)^{sum_j (T_j - j)} det[alpha_i(e_{s_{T_j}})] e_{S \ S_T}
/// over v-subsets T of positions.
inline Multivector contract_wedge(const Multivector& x, const std::vector<std::vector<Rational>>& alphas) {
  const int v = static_cast<int>(alphas.size());
  if (v > x.grade()) throw std::invalid_argument("contract_wedge: too many covectors");
  for (const auto& a : alphas)
    if (static_cast<int>(a.size()) != x.dim()) throw std::invalid_argument("contract_wedge: covector length mismatch");
  Multivector out(x.dim(), x.grade() - v);
  auto basis_sets = combinations(x.dim(), x.grade());
  auto position_sets = combinations(x.grade(), v);
  for (std::size_t a = 0; a < basis_sets.size(); ++a) {
    if (x[a].is_zero()) continue;
    const auto& s = basis_sets[a];
    for (const auto& T : position_sets) {
      QMatrix m(v, v);
      int exponent = 0;
      for (int j = 0; j < v; ++j) {
        exponent += T[j] - (j + 1);
        for (int i = 0; i < v; ++i) m(i, j) = alphas[i][s[T[j] - 1] - 1];
      }
      Rational d = det(m);
      if (d.is_zero()) continue;
      std::vector<int> rest;
      for (int p = 1; p <= x.grade(); ++p)
        if (!T.contains(p)) rest.push_back(s[p - 1]);
      Rational term = x[a] * d;
      auto& slot = out[Combination(std::move(rest), x.dim()).lex_index()];
      if (exponent % 2 == 0) slot += term; else slot -= term;
    }
  }
  return out;
}

/// f(x) for f in L_s(m,n) and x in wedge^s K^m.
inline Multivector apply_point(const ExteriorPoint& f, const Multivector& x) {
  if (x.dim() != f.m || x.grade() != f.t) throw std::invalid_argument("apply_point: argument outside the domain");
  Multivector y(f.n, f.t);
  for (std::size_t i = 0; i < f.coords.rows(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < f.coords.cols(); ++j)
      if (!f.coords(i, j).is_zero()) y[j] += x[i] * f.coords(i, j);
  }
  return y;
}

/// A decomposable element given by its v factors: covectors of V* (each of
/// length m) or vectors of W (each of length n). The wedge must be nonzero.
struct DecomposableSpec {
  std::vector<std::vector<Rational>> factors;
  int dim = 0;

  DecomposableSpec() = default;
  DecomposableSpec(std::vector<std::vector<Rational>> fs, int dim_) : factors(std::move(fs)), dim(dim_) {
    for (const auto& f : factors)
      if (static_cast<int>(f.size()) != dim) throw std::invalid_argument("decomposable: factor length mismatch");
    if (rank(as_matrix()) < factors.size()) throw std::invalid_argument("decomposable: factors are linearly dependent");
  }
  [[nodiscard]] int size() const { return static_cast<int>(factors.size()); }
  [[nodiscard]] QMatrix as_matrix() const {
    QMatrix m(factors.size(), dim);
    for (std::size_t i = 0; i < factors.size(); ++i)
      for (int j = 0; j < dim; ++j) m(i, j) = factors[i][j];
    return m;
  }
};

/// Adapted bases for (alpha, y). Rows of `domain` are a basis x_1..x_m of V
/// with alpha_i(x_j) = delta_ij for j <= v and x_{v+1}, ..., x_m spanning
/// V_alpha. Rows of `codomain` are y_1..y_v completed by standard vectors.
struct AdaptedBases {
  QMatrix domain, codomain;
};

inline AdaptedBases adapted_bases(const DecomposableSpec& alpha, const DecomposableSpec& y) {
  if (alpha.size() != y.size()) throw std::invalid_argument("adapted bases: alpha and y differ in length");
  const int v = alpha.size(), m = alpha.dim, n = y.dim;
  AdaptedBases out{QMatrix(m, m), QMatrix(n, n)};

  // x_j solves A x = e_j where A holds the covectors as rows.
  QMatrix a = alpha.as_matrix();
  for (int j = 0; j < v; ++j) {
    std::vector<Rational> rhs(v, Rational(0));
    rhs[j] = Rational(1);
    auto sol = solve_linear(a, rhs);
    for (int k = 0; k < m; ++k) out.domain(j, k) = sol.particular[k];
  }
  auto ker = nullspace(a);
  for (int r = 0; r < m - v; ++r)
    for (int k = 0; k < m; ++k) out.domain(v + r, k) = ker[r][k];

  QMatrix ym = y.as_matrix();
  for (int r = 0; r < v; ++r)
    for (int k = 0; k < n; ++k) out.codomain(r, k) = ym(r, k);
  int row = v;
  for (int k = 0; k < n && row < n; ++k) {
    out.codomain(row, k) = Rational(1);
    if (rank(out.codomain.select(initial_segment(row + 1, n).indices(), initial_segment(n, n).indices())) ==
        static_cast<std::size_t>(row + 1))
      ++row;
    else
      out.codomain(row, k) = Rational(0);
  }
  return out;
}

/// Expresses x (standard coordinates) in the bases given by the rows of P
/// (domain) and Q (codomain): Lambda(P) E Lambda(Q)^{-1}.
inline ExteriorPoint to_basis(const ExteriorPoint& x, const QMatrix& p, const QMatrix& q) {
  return ExteriorPoint(x.m, x.n, x.t, compound_matrix(p, x.t) * x.coords * inverse(compound_matrix(q, x.t)));
}
inline ExteriorPoint from_basis(const ExteriorPoint& x, const QMatrix& p, const QMatrix& q) {
  return ExteriorPoint(x.m, x.n, x.t, inverse(compound_matrix(p, x.t)) * x.coords * compound_matrix(q, x.t));
}

/// Coordinate substitution theta: E(I,J) = f(I^-, J^-) if {1..v} is in both
/// I and J, else 0. Here f is a point of L_{t-v}(m-v, n-v).
inline ExteriorPoint theta_substitute(const ExteriorPoint& f, int v) {
  if (v < 0) throw std::invalid_argument("theta: negative v");
  const int m = f.m + v, n = f.n + v, t = f.t + v;
  ExteriorPoint out = ExteriorPoint::zero(m, n, t);
  auto rows = combinations(f.m, f.t), cols = combinations(f.n, f.t);
  auto lift = [v](const Combination& c, int bound) {
    std::vector<int> idx;
    for (int i = 1; i <= v; ++i) idx.push_back(i);
    for (int i : c) idx.push_back(i + v);
    return Combination(std::move(idx), bound);
  };
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (!f.coords(i, j).is_zero()) out.at(lift(rows[i], m), lift(cols[j], n)) = f.coords(i, j);
  return out;
}

/// Theta_{alpha,y}(f) in standard coordinates; f is given in the adapted
/// bases of V_alpha and W_y (see adapted_bases).
inline ExteriorPoint theta(const DecomposableSpec& alpha, const DecomposableSpec& y, const ExteriorPoint& f) {
  const int v = alpha.size();
  if (f.m != alpha.dim - v || f.n != y.dim - v)
    throw std::invalid_argument("theta: f must live on (m - v, n - v)");
  auto bases = adapted_bases(alpha, y);
  return from_basis(theta_substitute(f, v), bases.domain, bases.codomain);
}

/// Theta_{alpha,y}(f) evaluated straight from x |-> y ^ f(x -| alpha), with
/// f a point of L_{t-v}(m, n) in standard coordinates.
inline ExteriorPoint theta_direct(const DecomposableSpec& alpha, const DecomposableSpec& y, const ExteriorPoint& f) {
  const int v = alpha.size(), m = alpha.dim, n = y.dim, t = f.t + v;
  if (f.m != m || f.n != n) throw std::invalid_argument("theta_direct: f must live on (m, n)");
  Multivector yw = Multivector::wedge_of(y.factors, n);
  ExteriorPoint out = ExteriorPoint::zero(m, n, t);
  auto rows = combinations(m, t);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Multivector img = yw.wedge(apply_point(f, Multivector::basis(rows[i]).contract_all(alpha.factors)));
    for (std::size_t j = 0; j < out.coords.cols(); ++j) out.coords(i, j) = img[j];
  }
  return out;
}

/// The point of L_{t-v}(V_alpha, W_y) induced by f in L_{t-v}(m, n), in adapted bases.
inline ExteriorPoint induced_map(const DecomposableSpec& alpha, const DecomposableSpec& y, const ExteriorPoint& f) {
  const int v = alpha.size();
  auto bases = adapted_bases(alpha, y);
  ExteriorPoint adapted = to_basis(f, bases.domain, bases.codomain);
  auto rows = combinations(f.m - v, f.t), cols = combinations(f.n - v, f.t);
  ExteriorPoint out = ExteriorPoint::zero(f.m - v, f.n - v, f.t);
  auto shift = [v](const Combination& c, int bound) {
    std::vector<int> idx;
    for (int i : c) idx.push_back(i + v);
    return Combination(std::move(idx), bound);
  };
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out.coords(i, j) = adapted.at(shift(rows[i], f.m), shift(cols[j], f.n));
  return out;
}

/// Retraction onto L_{t-v}(m-v, n-v): entry (L, M) of the result is x(L^+, M^+)
/// with L^+ = {1..v} together with L shifted up by v.
inline ExteriorPoint retract_project(const ExteriorPoint& x, int v) {
  if (v < 0 || v > x.t) throw std::invalid_argument("retract_project: v out of range");
  ExteriorPoint out = ExteriorPoint::zero(x.m - v, x.n - v, x.t - v);
  auto rows = combinations(out.m, out.t), cols = combinations(out.n, out.t);
  auto lift = [v](const Combination& c, int bound) {
    std::vector<int> idx;
    for (int i = 1; i <= v; ++i) idx.push_back(i);
    for (int i : c) idx.push_back(i + v);
    return Combination(std::move(idx), bound);
  };
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out.coords(i, j) = x.at(lift(rows[i], x.m), lift(cols[j], x.n));
  return out;
}

/// Retraction relative to (alpha, y): pass to adapted bases, then project.
inline ExteriorPoint retract_project(const ExteriorPoint& x, const DecomposableSpec& alpha, const DecomposableSpec& y) {
  auto bases = adapted_bases(alpha, y);
  return retract_project(to_basis(x, bases.domain, bases.codomain), alpha.size());
}

}  // namespace exteria
