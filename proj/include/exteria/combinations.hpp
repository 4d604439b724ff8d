// Index tuples i_1 < ... < i_t and their lexicographic enumeration.
#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace exteria {

/// Binomial coefficient; zero when k < 0 or k > n.
inline std::uint64_t binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t r = 1;
  for (long long i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

/// Strictly increasing tuple of 1-based indices bounded by `bound`.
class Combination {
 public:
  Combination() = default;
  Combination(std::vector<int> indices, int bound) : idx_(std::move(indices)), bound_(bound) { validate(); }
  Combination(std::initializer_list<int> indices, int bound) : idx_(indices), bound_(bound) { validate(); }

  [[nodiscard]] std::size_t size() const { return idx_.size(); }
  [[nodiscard]] bool empty() const { return idx_.empty(); }
  [[nodiscard]] int bound() const { return bound_; }
  [[nodiscard]] int operator[](std::size_t i) const { return idx_[i]; }
  [[nodiscard]] const std::vector<int>& indices() const { return idx_; }
  [[nodiscard]] auto begin() const { return idx_.begin(); }
  [[nodiscard]] auto end() const { return idx_.end(); }
  [[nodiscard]] bool contains(int i) const {
    for (int x : idx_)
      if (x == i) return true;
    return false;
  }

  /// Position in the lexicographic order of all size()-subsets of [bound].
  [[nodiscard]] std::size_t lex_index() const {
    const auto t = static_cast<long long>(idx_.size());
    std::uint64_t acc = 0;
    for (long long i = 0; i < t; ++i) acc += binomial(bound_ - idx_[i], t - i);
    return static_cast<std::size_t>(binomial(bound_, t) - 1 - acc);
  }

  static Combination from_lex_index(std::size_t index, int bound, int t) {
    if (t < 0 || t > bound || index >= binomial(bound, t)) throw std::out_of_range("combination index out of range");
    std::vector<int> out;
    int next = 1;
    std::uint64_t rem = index;
    for (int pos = 0; pos < t; ++pos) {
      for (;; ++next) {
        std::uint64_t block = binomial(bound - next, t - pos - 1);
        if (rem < block) break;
        rem -= block;
      }
      out.push_back(next++);
    }
    return Combination(std::move(out), bound);
  }

  [[nodiscard]] std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < idx_.size(); ++i) {
      if (i && bound_ >= 10) s += ',';
      s += std::to_string(idx_[i]);
    }
    return s;
  }

  friend bool operator==(const Combination& a, const Combination& b) { return a.idx_ == b.idx_; }
  friend auto operator<=>(const Combination& a, const Combination& b) { return a.idx_ <=> b.idx_; }

 private:
  void validate() const {
    for (std::size_t i = 0; i < idx_.size(); ++i) {
      if (idx_[i] < 1 || idx_[i] > bound_) throw std::out_of_range("combination entry outside [1, bound]");
      if (i && idx_[i] <= idx_[i - 1]) throw std::invalid_argument("combination must be strictly increasing");
    }
  }
  std::vector<int> idx_;
  int bound_ = 0;
};

/// All t-subsets of [n] in lexicographic order.
inline std::vector<Combination> combinations(int n, int t) {
  if (t < 0 || n < 0) throw std::invalid_argument("negative combination parameters");
  if (t > n) throw std::invalid_argument("combinations: t > n");
  std::vector<Combination> out;
  out.reserve(binomial(n, t));
  std::vector<int> cur(t);
  for (int i = 0; i < t; ++i) cur[i] = i + 1;
  while (true) {
    out.emplace_back(cur, n);
    int i = t - 1;
    while (i >= 0 && cur[i] == n - t + i + 1) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < t; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

/// {1, ..., k}
inline Combination initial_segment(int k, int bound) {
  std::vector<int> v(k);
  for (int i = 0; i < k; ++i) v[i] = i + 1;
  return Combination(std::move(v), bound);
}

/// Sorts `seq` in place and returns the sign of the sorting permutation,
/// or 0 if `seq` has a repeated entry.
inline int sort_with_sign(std::vector<int>& seq) {
  int sign = 1;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    for (std::size_t j = i; j > 0 && seq[j - 1] >= seq[j]; --j) {
      if (seq[j - 1] == seq[j]) return 0;
      std::swap(seq[j - 1], seq[j]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < seq.size(); ++i)
    if (seq[i] == seq[i - 1]) return 0;
  return sign;
}

/// Entries of `c` with `removed` taken out; `removed` must be a member.
inline Combination without(const Combination& c, int removed) {
  std::vector<int> v;
  for (int x : c)
    if (x != removed) v.push_back(x);
  return Combination(std::move(v), c.bound());
}

/// 1-based position of `value` in `c`, or 0 if absent.
inline int position_of(const Combination& c, int value) {
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] == value) return static_cast<int>(i) + 1;
  return 0;
}

}  // namespace exteria
