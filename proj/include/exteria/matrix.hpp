// Dense matrices over exact fields and the elimination kernels behind
// rank, determinant, minors and linear solving.
#pragma once

#include "exteria/combinations.hpp"
#include "exteria/scalar.hpp"

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace exteria {

template <ExactScalar F>
class DenseMatrix {
 public:
  using scalar_type = F;
  using field_type = field_t<F>;

  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, field_type field = {})
      : rows_(rows), cols_(cols), field_(field), data_(rows * cols, field.zero()) {}
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<F> entries, field_type field = {})
      : rows_(rows), cols_(cols), field_(field), data_(std::move(entries)) {
    if (data_.size() != rows * cols) throw std::invalid_argument("entry count does not match shape");
  }

  static DenseMatrix identity(std::size_t n, field_type field = {}) {
    DenseMatrix m(n, n, field);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }
  /// Builds from integer rows (handy in tests).
  static DenseMatrix from_rows(const std::vector<std::vector<long long>>& rows, field_type field = {}) {
    std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
    DenseMatrix m(r, c, field);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw std::invalid_argument("ragged rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = field.from_int(rows[i][j]);
    }
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] const field_type& field() const { return field_; }
  [[nodiscard]] const std::vector<F>& entries() const { return data_; }

  F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  [[nodiscard]] bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const F& x) { return x.is_zero(); });
  }
  [[nodiscard]] bool is_square() const { return rows_ == cols_; }

  [[nodiscard]] DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_, field_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Submatrix on the given 1-based rows and columns (in the given order).
  [[nodiscard]] DenseMatrix select(const std::vector<int>& rs, const std::vector<int>& cs) const {
    DenseMatrix s(rs.size(), cs.size(), field_);
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) s(i, j) = (*this)(rs[i] - 1, cs[j] - 1);
    return s;
  }

  DenseMatrix& operator*=(const F& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  friend DenseMatrix operator*(DenseMatrix a, const F& s) { return a *= s; }
  friend DenseMatrix operator-(DenseMatrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }
  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) {
    a.require_same_shape(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) {
    a.require_same_shape(b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }
  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: inner dimensions differ");
    DenseMatrix c(a.rows_, b.cols_, a.field_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const F& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
      }
    return c;
  }
  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  template <class Fn>
  [[nodiscard]] auto map(Fn&& fn) const {
    using G = std::invoke_result_t<Fn, const F&>;
    std::vector<G> out;
    out.reserve(data_.size());
    for (const auto& x : data_) out.push_back(fn(x));
    field_t<G> gf = out.empty() ? field_t<G>{} : field_of(out.front());
    return DenseMatrix<G>(rows_, cols_, std::move(out), gf);
  }

 private:
  void require_same_shape(const DenseMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw std::invalid_argument("matrix shapes differ");
  }
  std::size_t rows_ = 0, cols_ = 0;
  [[no_unique_address]] field_type field_{};
  std::vector<F> data_;
};

using QMatrix = DenseMatrix<Rational>;
using PMatrix = DenseMatrix<ModP>;

inline PMatrix reduce_mod(const QMatrix& m, std::uint64_t modulus) {
  PrimeField f{modulus};
  PMatrix out(m.rows(), m.cols(), f);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = f.from_rational(m(i, j));
  return out;
}

namespace detail {

// Integer matrix with rows scaled to clear denominators; `scale` collects
// the product of the row multipliers so determinants can be undone.
struct IntegerRows {
  std::vector<std::vector<mpz_class>> a;
  mpz_class scale = 1;
};

inline IntegerRows clear_denominators(const QMatrix& m) {
  IntegerRows out;
  out.a.assign(m.rows(), std::vector<mpz_class>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).value().get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const mpq_class& q = m(i, j).value();
      out.a[i][j] = q.get_num() * (l / q.get_den());
    }
    out.scale *= l;
  }
  return out;
}

// Fraction-free (Bareiss) forward elimination in place. Returns the rank;
// `sign` tracks row swaps and `last_pivot` the final leading minor.
inline std::size_t bareiss(std::vector<std::vector<mpz_class>>& a, std::size_t cols, int& sign, mpz_class& last_pivot) {
  const std::size_t rows = a.size();
  mpz_class prev = 1, tmp;
  std::size_t r = 0;
  sign = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(a[p], a[r]);
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        tmp = a[r][c] * a[i][j];
        tmp -= a[i][c] * a[r][j];
        mpz_divexact(a[i][j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  last_pivot = prev;
  return r;
}

// Plain Gaussian elimination over a prime field; returns the rank.
inline std::size_t eliminate_mod(PMatrix& m, int& sign) {
  sign = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
      sign = -sign;
    }
    ModP inv = m(r, c).inverse();
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (m(i, c).is_zero()) continue;
      ModP f = m(i, c) * inv;
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

}  // namespace detail

/// Exact rank over the scalar's field.
inline std::size_t rank(const QMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  auto ints = detail::clear_denominators(m);
  int sign;
  mpz_class last;
  return detail::bareiss(ints.a, m.cols(), sign, last);
}
inline std::size_t rank(const PMatrix& m) {
  PMatrix w = m;
  int sign;
  return detail::eliminate_mod(w, sign);
}

/// Exact determinant; throws on non-square input.
inline Rational det(const QMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("determinant of non-square matrix");
  if (m.rows() == 0) return Rational(1);
  auto ints = detail::clear_denominators(m);
  int sign;
  mpz_class last;
  std::size_t r = detail::bareiss(ints.a, m.cols(), sign, last);
  if (r < m.rows()) return Rational(0);
  return Rational(mpz_class(sign * last), ints.scale);
}
inline ModP det(const PMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("determinant of non-square matrix");
  PMatrix w = m;
  int sign;
  std::size_t r = detail::eliminate_mod(w, sign);
  if (r < m.rows()) return m.field().zero();
  ModP d = sign > 0 ? m.field().one() : -m.field().one();
  for (std::size_t i = 0; i < m.rows(); ++i) d *= w(i, i);
  return d;
}

/// Determinant of the submatrix on rows `a` and columns `b`.
template <ExactScalar F>
F minor(const DenseMatrix<F>& m, const Combination& a, const Combination& b) {
  if (a.size() != b.size()) throw std::invalid_argument("minor: row and column tuples differ in size");
  for (int i : a)
    if (i > static_cast<int>(m.rows())) throw std::out_of_range("minor: row index out of range");
  for (int j : b)
    if (j > static_cast<int>(m.cols())) throw std::out_of_range("minor: column index out of range");
  const std::size_t k = a.size();
  if (k == 0) return m.field().one();
  if (k == 1) return m(a[0] - 1, b[0] - 1);
  if (k == 2) return m(a[0] - 1, b[0] - 1) * m(a[1] - 1, b[1] - 1) - m(a[0] - 1, b[1] - 1) * m(a[1] - 1, b[0] - 1);
  return det(m.select(a.indices(), b.indices()));
}

/// Reduced row echelon form with the list of pivot columns.
template <ExactScalar F>
struct Echelon {
  DenseMatrix<F> form;
  std::vector<std::size_t> pivots;
};

template <ExactScalar F>
Echelon<F> rref(DenseMatrix<F> m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    F inv = m(r, c).inverse();
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      F f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

/// Outcome of solving A x = b: a particular solution (free variables set
/// to zero) and a basis of the nullspace of A, or an inconsistency flag.
template <ExactScalar F>
struct LinearSolution {
  bool consistent = false;
  std::vector<F> particular;
  std::vector<std::vector<F>> kernel;
};

template <ExactScalar F>
LinearSolution<F> solve_linear(const DenseMatrix<F>& a, const std::vector<F>& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_linear: right-hand side length mismatch");
  const auto field = a.field();
  DenseMatrix<F> aug(a.rows(), a.cols() + 1, field);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto [form, pivots] = rref(std::move(aug));
  LinearSolution<F> out;
  if (!pivots.empty() && pivots.back() == a.cols()) return out;  // inconsistent
  out.consistent = true;
  out.particular.assign(a.cols(), field.zero());
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    is_pivot[pivots[r]] = true;
    out.particular[pivots[r]] = form(r, a.cols());
  }
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<F> v(a.cols(), field.zero());
    v[free] = field.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -form(r, free);
    out.kernel.push_back(std::move(v));
  }
  return out;
}

/// Basis of { x : A x = 0 }.
template <ExactScalar F>
std::vector<std::vector<F>> nullspace(const DenseMatrix<F>& a) {
  return solve_linear(a, std::vector<F>(a.rows(), a.field().zero())).kernel;
}

template <ExactScalar F>
std::vector<F> apply(const DenseMatrix<F>& a, const std::vector<F>& x) {
  if (x.size() != a.cols()) throw std::invalid_argument("apply: vector length mismatch");
  std::vector<F> y(a.rows(), a.field().zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero() && !x[j].is_zero()) y[i] += a(i, j) * x[j];
  return y;
}

/// Inverse of a square invertible rational matrix.
inline QMatrix inverse(const QMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = m.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Rational(1);
  }
  auto [form, pivots] = rref(std::move(aug));
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw std::domain_error("matrix is singular");
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = form(i, n + j);
  return inv;
}

/// Uniform integer matrix with entries in [lo, hi].
inline QMatrix random_integer_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng, int lo = -9, int hi = 9) {
  std::uniform_int_distribution<int> dist(lo, hi);
  QMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = Rational(dist(rng));
  return m;
}

/// Random m x n integer matrix of exactly the requested rank, built as a
/// product of m x r and r x n factors with entries in [-9, 9].
inline QMatrix random_matrix(std::size_t m, std::size_t n, std::size_t target_rank, std::uint64_t seed) {
  if (target_rank > std::min(m, n)) throw std::invalid_argument("random_matrix: rank exceeds min(m, n)");
  std::mt19937_64 rng(seed);
  if (target_rank == 0) return QMatrix(m, n);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    QMatrix left = random_integer_matrix(m, target_rank, rng);
    QMatrix right = random_integer_matrix(target_rank, n, rng);
    QMatrix prod = left * right;
    if (rank(prod) == target_rank) return prod;
  }
  throw std::runtime_error("random_matrix: could not reach target rank");
}

/// Random invertible n x n integer matrix.
inline QMatrix random_invertible(std::size_t n, std::uint64_t seed) { return random_matrix(n, n, n, seed); }

// Matrix text format: "m n" on the first line, then m rows of n rationals.

inline QMatrix read_matrix(std::istream& in) {
  long long rows = -1, cols = -1;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0) throw std::invalid_argument("matrix text: expected 'm n' header");
  QMatrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  std::string tok;
  for (long long i = 0; i < rows; ++i)
    for (long long j = 0; j < cols; ++j) {
      if (!(in >> tok)) throw std::invalid_argument("matrix text: too few entries");
      m(i, j) = Rational::parse(tok);
    }
  if (in >> tok) throw std::invalid_argument("matrix text: trailing data '" + tok + "'");
  return m;
}

inline QMatrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  return read_matrix(in);
}

inline std::string format_matrix(const QMatrix& m) {
  std::string s = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s += ' ';
      s += m(i, j).str();
    }
    s += '\n';
  }
  return s;
}

}  // namespace exteria
