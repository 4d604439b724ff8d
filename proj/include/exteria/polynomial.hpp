// Sparse polynomials with rational coefficients, minor symbols [rows|cols]
// and formal relations among products of minors.
#pragma once

#include "exteria/combinations.hpp"
#include "exteria/matrix.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace exteria {

/// Exponent vector of a monomial.
using Monomial = std::vector<std::uint8_t>;

/// Polynomial over Q in a fixed number of variables; zero coefficients are
/// never stored.
class SparsePoly {
 public:
  SparsePoly() = default;
  explicit SparsePoly(std::size_t nvars) : nvars_(nvars) {}

  static SparsePoly constant(std::size_t nvars, const Rational& c) {
    SparsePoly p(nvars);
    p.add_term(Monomial(nvars, 0), c);
    return p;
  }
  static SparsePoly variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw std::out_of_range("variable index out of range");
    Monomial mono(nvars, 0);
    mono[index] = 1;
    SparsePoly p(nvars);
    p.add_term(mono, Rational(1));
    return p;
  }

  [[nodiscard]] std::size_t nvars() const { return nvars_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] const std::map<Monomial, Rational>& terms() const { return terms_; }

  void add_term(const Monomial& mono, const Rational& c) {
    if (mono.size() != nvars_) throw std::invalid_argument("monomial length does not match variable count");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(mono, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  [[nodiscard]] Rational coefficient(const Monomial& mono) const {
    auto it = terms_.find(mono);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  [[nodiscard]] int total_degree() const {
    int d = -1;
    for (const auto& [mono, c] : terms_) {
      int s = 0;
      for (auto e : mono) s += e;
      d = std::max(d, s);
    }
    return d;
  }

  SparsePoly& operator+=(const SparsePoly& o) {
    same_ring(o);
    for (const auto& [mono, c] : o.terms_) add_term(mono, c);
    return *this;
  }
  SparsePoly& operator-=(const SparsePoly& o) {
    same_ring(o);
    for (const auto& [mono, c] : o.terms_) add_term(mono, -c);
    return *this;
  }
  SparsePoly& operator*=(const Rational& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [mono, c] : terms_) c *= s;
    return *this;
  }
  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
  friend SparsePoly operator*(SparsePoly a, const Rational& s) { return a *= s; }
  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    a.same_ring(b);
    SparsePoly out(a.nvars_);
    Monomial mono(a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        for (std::size_t i = 0; i < mono.size(); ++i) {
          unsigned e = static_cast<unsigned>(ma[i]) + mb[i];
          if (e > 255) throw std::overflow_error("exponent overflow");
          mono[i] = static_cast<std::uint8_t>(e);
        }
        out.add_term(mono, ca * cb);
      }
    return out;
  }
  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  /// Value at a point; `field` supplies the constants.
  template <ExactScalar F>
  [[nodiscard]] F eval(const std::vector<F>& point, const field_t<F>& field) const {
    if (point.size() != nvars_) throw std::invalid_argument("eval: point has wrong length");
    F acc = field.zero();
    for (const auto& [mono, c] : terms_) {
      F term = field.from_rational(c);
      for (std::size_t i = 0; i < nvars_ && !term.is_zero(); ++i)
        for (std::uint8_t e = 0; e < mono[i]; ++e) term *= point[i];
      acc += term;
    }
    return acc;
  }

  /// Partial derivative with respect to variable `index`.
  [[nodiscard]] SparsePoly derivative(std::size_t index) const {
    SparsePoly out(nvars_);
    for (const auto& [mono, c] : terms_) {
      if (mono[index] == 0) continue;
      Monomial d = mono;
      --d[index];
      out.add_term(d, c * Rational(static_cast<int>(mono[index])));
    }
    return out;
  }

 private:
  void same_ring(const SparsePoly& o) const {
    if (nvars_ != o.nvars_) throw std::invalid_argument("polynomials in different rings");
  }
  std::size_t nvars_ = 0;
  std::map<Monomial, Rational> terms_;
};

/// Row and column degree vectors of a monomial in the entries X_{ij} of an
/// m x n matrix (variable i*n + j): concatenation of row counts and column counts.
inline std::vector<int> multidegree(const Monomial& mono, int m, int n) {
  if (mono.size() != static_cast<std::size_t>(m) * n) throw std::invalid_argument("multidegree: wrong ring");
  std::vector<int> d(m + n, 0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      int e = mono[i * n + j];
      d[i] += e;
      d[m + j] += e;
    }
  return d;
}

/// The multidegree shared by all monomials, or nullopt if p is not multihomogeneous.
inline std::optional<std::vector<int>> poly_multidegree(const SparsePoly& p, int m, int n) {
  std::optional<std::vector<int>> d;
  for (const auto& [mono, c] : p.terms()) {
    auto md = multidegree(mono, m, n);
    if (!d) d = md;
    else if (*d != md) return std::nullopt;
  }
  return d;
}

/// Minor [rows|cols] with strictly increasing index lists (empty = 1).
struct MinorSymbol {
  std::vector<int> rows, cols;

  MinorSymbol() = default;
  MinorSymbol(std::vector<int> r, std::vector<int> c) : rows(std::move(r)), cols(std::move(c)) {
    if (rows.size() != cols.size()) throw std::invalid_argument("minor symbol: row and column counts differ");
    for (const auto* v : {&rows, &cols})
      for (std::size_t i = 0; i < v->size(); ++i) {
        if ((*v)[i] < 1) throw std::out_of_range("minor symbol: indices are 1-based");
        if (i && (*v)[i] <= (*v)[i - 1]) throw std::invalid_argument("minor symbol: indices must increase");
      }
  }

  /// Canonical symbol for arbitrary index sequences, with the sign of the
  /// sorting permutations (sign 0 if an index repeats).
  static std::pair<int, MinorSymbol> make(std::vector<int> r, std::vector<int> c) {
    if (r.size() != c.size()) throw std::invalid_argument("minor symbol: row and column counts differ");
    int s = sort_with_sign(r) * sort_with_sign(c);
    if (s == 0) return {0, MinorSymbol{}};
    return {s, MinorSymbol(std::move(r), std::move(c))};
  }

  [[nodiscard]] std::size_t size() const { return rows.size(); }

  [[nodiscard]] std::string str() const {
    auto join = [](const std::vector<int>& v) {
      bool wide = std::any_of(v.begin(), v.end(), [](int x) { return x > 9; });
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) s += (wide && i ? "," : "") + std::to_string(v[i]);
      return s;
    };
    return "[" + join(rows) + "|" + join(cols) + "]";
  }

  friend bool operator==(const MinorSymbol&, const MinorSymbol&) = default;
  friend auto operator<=>(const MinorSymbol& a, const MinorSymbol& b) {
    if (auto c = a.rows <=> b.rows; c != 0) return c;
    return a.cols <=> b.cols;
  }
};

/// Expansion of a minor of the generic m x n matrix (variable i*n + j).
inline SparsePoly minor_poly(const MinorSymbol& s, int m, int n) {
  const std::size_t nv = static_cast<std::size_t>(m) * n;
  for (int r : s.rows)
    if (r > m) throw std::out_of_range("minor_poly: row index exceeds m");
  for (int c : s.cols)
    if (c > n) throw std::out_of_range("minor_poly: column index exceeds n");
  const std::size_t k = s.size();
  SparsePoly out(nv);
  std::vector<int> perm(k);
  for (std::size_t i = 0; i < k; ++i) perm[i] = static_cast<int>(i);
  do {
    std::vector<int> p = perm;
    int sign = sort_with_sign(p);
    Monomial mono(nv, 0);
    for (std::size_t i = 0; i < k; ++i) ++mono[(s.rows[i] - 1) * n + (s.cols[perm[i]] - 1)];
    out.add_term(mono, Rational(sign));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// Numeric value of a minor symbol on a concrete matrix.
template <ExactScalar F>
F minor_value(const DenseMatrix<F>& x, const MinorSymbol& s) {
  if (s.size() == 0) return x.field().one();
  for (int r : s.rows)
    if (r > static_cast<int>(x.rows())) throw std::out_of_range("minor_value: row index exceeds matrix");
  for (int c : s.cols)
    if (c > static_cast<int>(x.cols())) throw std::out_of_range("minor_value: column index exceeds matrix");
  return det(x.select(s.rows, s.cols));
}

/// One term coeff * prod(factors) of a relation.
struct RelationTerm {
  Rational coeff;
  std::vector<MinorSymbol> factors;  // sorted
  friend bool operator==(const RelationTerm&, const RelationTerm&) = default;
};

/// Formal linear combination of products of minors. Terms keep the order
/// in which they were added; identical products are merged.
class RelationExpr {
 public:
  RelationExpr() = default;

  /// Adds coeff * prod [r_i | c_i] for arbitrary index sequences.
  void add_product(const Rational& coeff, const std::vector<std::pair<std::vector<int>, std::vector<int>>>& factors) {
    Rational c = coeff;
    std::vector<MinorSymbol> syms;
    for (const auto& [r, col] : factors) {
      auto [sign, sym] = MinorSymbol::make(r, col);
      if (sign == 0) return;
      if (sign < 0) c = -c;
      if (sym.size() > 0) syms.push_back(std::move(sym));
    }
    add_term(c, std::move(syms));
  }

  void add_term(const Rational& coeff, std::vector<MinorSymbol> factors) {
    if (coeff.is_zero()) return;
    std::erase_if(factors, [](const MinorSymbol& s) { return s.size() == 0; });
    std::sort(factors.begin(), factors.end());
    for (auto it = terms_.begin(); it != terms_.end(); ++it)
      if (it->factors == factors) {
        it->coeff += coeff;
        if (it->coeff.is_zero()) terms_.erase(it);
        return;
      }
    terms_.push_back({coeff, std::move(factors)});
  }

  [[nodiscard]] const std::vector<RelationTerm>& terms() const { return terms_; }
  [[nodiscard]] bool empty() const { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }

  /// Same relation with terms in sorted order (for term-by-term comparison).
  [[nodiscard]] RelationExpr canonical() const {
    RelationExpr r = *this;
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const RelationTerm& a, const RelationTerm& b) { return a.factors < b.factors; });
    return r;
  }

  RelationExpr& operator+=(const RelationExpr& o) {
    for (const auto& t : o.terms_) add_term(t.coeff, t.factors);
    return *this;
  }
  RelationExpr& operator*=(const Rational& s) {
    if (s.is_zero()) terms_.clear();
    for (auto& t : terms_) t.coeff *= s;
    return *this;
  }
  friend RelationExpr operator+(RelationExpr a, const RelationExpr& b) { return a += b; }
  friend RelationExpr operator-(RelationExpr a, RelationExpr b) { return a += (b *= Rational(-1)); }
  friend RelationExpr operator*(RelationExpr a, const Rational& s) { return a *= s; }

  /// Product of two relations (distributing over terms).
  friend RelationExpr operator*(const RelationExpr& a, const RelationExpr& b) {
    RelationExpr out;
    for (const auto& ta : a.terms_)
      for (const auto& tb : b.terms_) {
        auto f = ta.factors;
        f.insert(f.end(), tb.factors.begin(), tb.factors.end());
        out.add_term(ta.coeff * tb.coeff, std::move(f));
      }
    return out;
  }

  /// Multiset union of column indices, if it is the same for every term.
  [[nodiscard]] std::optional<std::vector<int>> column_degree() const {
    std::optional<std::vector<int>> deg;
    for (const auto& t : terms_) {
      std::vector<int> d;
      for (const auto& f : t.factors) d.insert(d.end(), f.cols.begin(), f.cols.end());
      std::sort(d.begin(), d.end());
      if (!deg) deg = d;
      else if (*deg != d) return std::nullopt;
    }
    return deg;
  }
  [[nodiscard]] bool is_homogeneous() const { return column_degree().has_value(); }

  /// Largest row and column index used.
  [[nodiscard]] std::pair<int, int> extent() const {
    int r = 0, c = 0;
    for (const auto& t : terms_)
      for (const auto& f : t.factors) {
        if (!f.rows.empty()) r = std::max(r, f.rows.back());
        if (!f.cols.empty()) c = std::max(c, f.cols.back());
      }
    return {r, c};
  }

  [[nodiscard]] std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& t : terms_) {
      Rational a = t.coeff;
      s += a.sign() < 0 ? "-" : "+";
      if (a.sign() < 0) a = -a;
      if (!a.is_one() || t.factors.empty()) s += a.str();
      for (const auto& f : t.factors) s += f.str();
    }
    return s;
  }

  friend bool operator==(const RelationExpr& a, const RelationExpr& b) {
    return a.canonical().terms_ == b.canonical().terms_;
  }

 private:
  std::vector<RelationTerm> terms_;
};

/// Parses text such as "+[12|14][34|23]-2[14|14][23|23]+1/2[1,10|2,3]".
/// Indices are single digits unless separated by commas.
inline RelationExpr parse_relation(const std::string& text) {
  RelationExpr out;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto parse_indices = [&](char stop) {
    std::string body;
    while (i < text.size() && text[i] != stop) body += text[i++];
    if (i == text.size()) throw std::invalid_argument("relation text: unterminated minor");
    ++i;
    std::vector<int> v;
    if (body.find(',') != std::string::npos) {
      std::size_t pos = 0;
      while (pos <= body.size()) {
        auto next = body.find(',', pos);
        if (next == std::string::npos) next = body.size();
        v.push_back(std::stoi(body.substr(pos, next - pos)));
        pos = next + 1;
      }
    } else {
      for (char ch : body) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) throw std::invalid_argument("relation text: bad index");
        v.push_back(ch - '0');
      }
    }
    return v;
  };
  skip_ws();
  while (i < text.size()) {
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      if (text[i] == '-') sign = -1;
      ++i;
      skip_ws();
    }
    std::string num;
    while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/')) num += text[i++];
    Rational coeff = num.empty() ? Rational(1) : Rational::parse(num);
    if (sign < 0) coeff = -coeff;
    std::vector<std::pair<std::vector<int>, std::vector<int>>> factors;
    skip_ws();
    while (i < text.size() && text[i] == '[') {
      ++i;
      auto rows = parse_indices('|');
      auto cols = parse_indices(']');
      factors.emplace_back(std::move(rows), std::move(cols));
      skip_ws();
    }
    if (factors.empty() && num.empty()) throw std::invalid_argument("relation text: empty term");
    out.add_product(coeff, factors);
    skip_ws();
  }
  return out;
}

/// Cache of minor expansions for one generic matrix.
class MinorExpander {
 public:
  MinorExpander(int m, int n) : m_(m), n_(n) {}
  [[nodiscard]] int m() const { return m_; }
  [[nodiscard]] int n() const { return n_; }
  const SparsePoly& operator()(const MinorSymbol& s) {
    auto it = cache_.find(s);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(s, minor_poly(s, m_, n_)).first->second;
  }
  SparsePoly product(const std::vector<MinorSymbol>& factors) {
    SparsePoly p = SparsePoly::constant(static_cast<std::size_t>(m_) * n_, Rational(1));
    for (const auto& f : factors) p = p * (*this)(f);
    return p;
  }

 private:
  int m_, n_;
  std::map<MinorSymbol, SparsePoly> cache_;
};

/// Exact expansion of a relation in the entries of the generic m x n matrix.
inline SparsePoly expand(const RelationExpr& rel, int m, int n) {
  auto [r, c] = rel.extent();
  if (r > m || c > n) throw std::out_of_range("expand: relation uses indices beyond the matrix size");
  MinorExpander ex(m, n);
  SparsePoly out(static_cast<std::size_t>(m) * n);
  for (const auto& t : rel.terms()) out += ex.product(t.factors) * t.coeff;
  return out;
}

/// Value of a relation on a concrete matrix.
template <ExactScalar F>
F evaluate(const RelationExpr& rel, const DenseMatrix<F>& x) {
  const auto field = x.field();
  std::map<MinorSymbol, F> cache;
  F acc = field.zero();
  for (const auto& t : rel.terms()) {
    F term = field.from_rational(t.coeff);
    for (const auto& f : t.factors) {
      auto it = cache.find(f);
      if (it == cache.end()) it = cache.emplace(f, minor_value(x, f)).first;
      term *= it->second;
    }
    acc += term;
  }
  return acc;
}

}  // namespace exteria
