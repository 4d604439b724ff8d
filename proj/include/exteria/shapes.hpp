// Shapes of products of minors, the valuations gamma_j and pi_j, weights
// epsilon, and the catalog of G-stable prime ideals of the algebra A_t of
// t-minors together with their faces.
#pragma once

#include "exteria/scalar.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace exteria {

/// Non-increasing sequence of positive integers (the sizes of the minors in
/// a product). `bound` is min(m, n) of the ambient matrix, or 0 if unset.
class Shape {
 public:
  Shape() = default;
  explicit Shape(std::vector<int> parts, int bound = 0) : parts_(std::move(parts)), bound_(bound) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 1) throw std::invalid_argument("shape parts must be positive");
      if (i && parts_[i] > parts_[i - 1]) throw std::invalid_argument("shape parts must be non-increasing");
      if (bound_ > 0 && parts_[i] > bound_) throw std::invalid_argument("shape part exceeds min(m, n)");
    }
  }
  /// Sorts arbitrary positive sizes into a shape.
  static Shape from_sizes(std::vector<int> sizes, int bound = 0) {
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    return Shape(std::move(sizes), bound);
  }

  [[nodiscard]] const std::vector<int>& parts() const { return parts_; }
  [[nodiscard]] int bound() const { return bound_; }
  [[nodiscard]] int length() const { return static_cast<int>(parts_.size()); }
  [[nodiscard]] int boxes() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  [[nodiscard]] int largest() const { return parts_.empty() ? 0 : parts_.front(); }

  /// gamma_j = sum_i max(lambda_i - j + 1, 0).
  [[nodiscard]] long gamma(int j) const {
    if (j < 1 || (bound_ > 0 && j > bound_ + 1)) throw std::out_of_range("gamma: index out of range");
    long g = 0;
    for (int p : parts_) g += std::max(p - j + 1, 0);
    return g;
  }

  /// pi_j = gamma_j - gamma_1 (t - j + 1) / t.
  [[nodiscard]] Rational pi(int j, int t) const {
    if (t < 1) throw std::invalid_argument("pi: t must be positive");
    if (j < 1 || (bound_ > 0 && j > std::max(t, bound_))) throw std::out_of_range("pi: index out of range");
    return Rational(gamma(j)) - Rational(mpz_class(mpz_class(gamma(1)) * (t - j + 1)), mpz_class(t));
  }

  /// epsilon_i = #{j : lambda_j = i} for i = 1..m (entry i-1 of the result).
  [[nodiscard]] std::vector<int> epsilon(int m) const {
    std::vector<int> e(m, 0);
    for (int p : parts_) {
      if (p > m) throw std::out_of_range("epsilon: part exceeds m");
      ++e[p - 1];
    }
    return e;
  }

  [[nodiscard]] std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "," : "") + std::to_string(parts_[i]);
    return s + ")";
  }

  friend bool operator==(const Shape& a, const Shape& b) { return a.parts_ == b.parts_; }

 private:
  std::vector<int> parts_;
  int bound_ = 0;
};

/// Products of minors of shape lambda lie in A_t exactly when t divides
/// gamma_1 and pi_2 >= 0.
inline bool in_At_support(const Shape& s, int t) {
  if (t < 1) throw std::invalid_argument("t must be positive");
  if (t == 1) return true;
  return s.gamma(1) % t == 0 && s.pi(2, t).sign() >= 0;
}

/// Right-hand side of pi_u = (u-1) pi_2 + sum_{k=1}^{u-2} (u-1-k) epsilon_k.
inline Rational pi_formula_rhs(const Shape& s, int u, int t) {
  Rational rhs = s.pi(2, t) * Rational(u - 1);
  for (int p : s.parts())
    if (p <= u - 2) rhs += Rational(u - 1 - p);
  return rhs;
}

/// Checks the pi_u identity for one shape; u ranges over 3..max(t, bound).
inline bool pi_formula_check(const Shape& s, int u, int t) {
  if (u < 3 || u > std::max(t, s.bound())) throw std::out_of_range("pi_formula_check: u out of range");
  return s.pi(u, t) == pi_formula_rhs(s, u, t);
}

/// All shapes with exactly `boxes` boxes and parts at most `max_part`.
inline std::vector<Shape> shapes_with_boxes(int boxes, int max_part, int bound = 0) {
  std::vector<Shape> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int remaining, int cap) {
    if (remaining == 0) {
      out.emplace_back(cur, bound);
      return;
    }
    for (int p = std::min(cap, remaining); p >= 1; --p) {
      cur.push_back(p);
      rec(remaining - p, p);
      cur.pop_back();
    }
  };
  rec(boxes, max_part);
  return out;
}

/// Descriptor of a G-stable prime ideal of A_t(m, n) (m <= n).
struct PrimeIdeal {
  enum class Kind { PQ, QNext, QT };
  Kind kind = Kind::PQ;
  int i = -1;  // p_i index for Kind::PQ (-1 means p_{-1} = 0)
  int j = 0;   // q_j index (m + 1 means q_{m+1} = 0)
  int m = 0, t = 0;
  std::set<int> face;  // facet labels 0..m cutting out the face

  [[nodiscard]] std::string label() const {
    switch (kind) {
      case Kind::QT: return "q" + std::to_string(t);
      case Kind::QNext: return t + 1 == m + 1 ? "0" : "q" + std::to_string(t + 1);
      case Kind::PQ: break;
    }
    bool no_p = i == -1, no_q = j == m + 1;
    if (no_p && no_q) return "0";
    if (no_p) return "q" + std::to_string(j);
    if (no_q) return "p" + std::to_string(i);
    return "p" + std::to_string(i) + "+q" + std::to_string(j);
  }
  friend bool operator==(const PrimeIdeal& a, const PrimeIdeal& b) {
    return a.kind == b.kind && a.i == b.i && a.j == b.j && a.m == b.m && a.t == b.t;
  }
};

namespace detail {
inline std::set<int> facet_range(int lo, int hi, std::set<int> acc = {}) {
  for (int x = lo; x <= hi; ++x) acc.insert(x);
  return acc;
}
}  // namespace detail

inline PrimeIdeal make_pq(int i, int j, int m, int t) {
  PrimeIdeal p{PrimeIdeal::Kind::PQ, i, j, m, t, {}};
  p.face = detail::facet_range(j, m, detail::facet_range(0, i));
  return p;
}
inline PrimeIdeal make_q_next(int m, int t) {
  PrimeIdeal p{PrimeIdeal::Kind::QNext, -1, t + 1, m, t, {}};
  p.face = detail::facet_range(t + 1, m, detail::facet_range(0, t - 1));
  return p;
}
inline PrimeIdeal make_q_t(int m, int t) {
  PrimeIdeal p{PrimeIdeal::Kind::QT, -1, t, m, t, {}};
  p.face = detail::facet_range(0, m);
  return p;
}

/// The t(m - t) + 2 G-stable primes: p_i + q_j (i in [-1, t-2],
/// j in [t+2, m+1]), then q_{t+1} and q_t.
inline std::vector<PrimeIdeal> prime_catalog(int m, int t) {
  if (t < 1 || t > m) throw std::out_of_range("prime_catalog: need 1 <= t <= m");
  std::vector<PrimeIdeal> out;
  for (int i = -1; i <= t - 2; ++i)
    for (int j = t + 2; j <= m + 1; ++j) out.push_back(make_pq(i, j, m, t));
  out.push_back(make_q_next(m, t));
  out.push_back(make_q_t(m, t));
  return out;
}

/// Whether M_lambda lies in the ideal: p_i needs pi_{i+2} > 0, q_j needs gamma_j > 0.
inline bool shape_in_prime(const Shape& s, const PrimeIdeal& p) {
  if (!in_At_support(s, p.t)) throw std::invalid_argument("shape_in_prime: shape outside the support of A_t");
  auto in_q = [&](int j) { return j <= p.m && s.gamma(j) > 0; };
  auto in_p = [&](int i) { return i >= 0 && s.pi(i + 2, p.t).sign() > 0; };
  switch (p.kind) {
    case PrimeIdeal::Kind::QT:
    case PrimeIdeal::Kind::QNext: return in_q(p.j);
    case PrimeIdeal::Kind::PQ: return in_p(p.i) || in_q(p.j);
  }
  return false;
}

/// Whether epsilon(lambda) lies on the face: facet 0 is pi_2 = 0, facet i >= 1 is epsilon_i = 0.
inline bool weight_in_face(const Shape& s, const PrimeIdeal& p) {
  auto eps = s.epsilon(p.m);
  for (int f : p.face) {
    if (f == 0 ? !s.pi(2, p.t).is_zero() : eps[f - 1] != 0) return false;
  }
  return true;
}

}  // namespace exteria
