// Exact scalars: arbitrary-precision rationals and residues modulo a prime.
#pragma once

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace exteria {

/// Rational number in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() = default;
  template <std::integral I>
  Rational(I value) : v_(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)
  Rational(const mpz_class& num, const mpz_class& den) : v_(num, den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    v_.canonicalize();
  }
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Parses "p/q" or "p" (optional sign on p).
  static Rational parse(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    try {
      if (slash == std::string::npos) return Rational(mpz_class(s), mpz_class(1));
      return Rational(mpz_class(s.substr(0, slash)), mpz_class(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("malformed rational '" + s + "'");
    }
  }

  [[nodiscard]] const mpq_class& value() const { return v_; }
  [[nodiscard]] mpz_class numerator() const { return v_.get_num(); }
  [[nodiscard]] mpz_class denominator() const { return v_.get_den(); }
  [[nodiscard]] bool is_zero() const { return sgn(v_) == 0; }
  [[nodiscard]] bool is_one() const { return v_ == 1; }
  [[nodiscard]] bool is_integer() const { return v_.get_den() == 1; }
  [[nodiscard]] int sign() const { return sgn(v_); }

  [[nodiscard]] Rational inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    return Rational(mpq_class(1) / v_);
  }

  [[nodiscard]] std::string str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    v_ /= o.v_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class v_{0};
};

/// 2^61 - 1, a Mersenne prime.
inline constexpr std::uint64_t kDefaultPrime = (std::uint64_t{1} << 61) - 1;

/// Residue modulo a prime. Each value carries its modulus; combining two
/// values with different moduli throws.
class ModP {
 public:
  ModP() = default;
  ModP(std::int64_t value, std::uint64_t modulus) : p_(modulus) {
    if (modulus < 2) throw std::invalid_argument("modulus must be >= 2");
    auto r = value % static_cast<std::int64_t>(modulus);
    v_ = static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(modulus) : r);
  }
  static ModP from_raw(std::uint64_t residue, std::uint64_t modulus) {
    ModP x;
    x.v_ = residue % modulus;
    x.p_ = modulus;
    return x;
  }
  /// Reduces an exact rational; throws if the denominator vanishes mod p.
  static ModP from_rational(const Rational& r, std::uint64_t modulus) {
    mpz_class p(std::to_string(modulus));
    mpz_class num = r.numerator() % p, den = r.denominator() % p;
    if (num < 0) num += p;
    if (den == 0) throw std::domain_error("denominator divisible by modulus");
    ModP a = from_raw(std::stoull(num.get_str()), modulus);
    ModP b = from_raw(std::stoull(den.get_str()), modulus);
    return a / b;
  }

  [[nodiscard]] std::uint64_t residue() const { return v_; }
  [[nodiscard]] std::uint64_t modulus() const { return p_; }
  [[nodiscard]] bool is_zero() const { return v_ == 0; }
  [[nodiscard]] bool is_one() const { return v_ == 1; }

  [[nodiscard]] ModP pow(std::uint64_t e) const {
    ModP base = *this, acc = from_raw(1, p_);
    while (e) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }
  [[nodiscard]] ModP inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero residue");
    return pow(p_ - 2);
  }
  [[nodiscard]] std::string str() const { return std::to_string(v_); }

  ModP& operator+=(const ModP& o) {
    check(o);
    v_ += o.v_;
    if (v_ >= p_) v_ -= p_;
    return *this;
  }
  ModP& operator-=(const ModP& o) {
    check(o);
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
    return *this;
  }
  ModP& operator*=(const ModP& o) {
    check(o);
    v_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(v_) * o.v_) % p_);
    return *this;
  }
  ModP& operator/=(const ModP& o) { return *this *= o.inverse(); }
  friend ModP operator+(ModP a, const ModP& b) { return a += b; }
  friend ModP operator-(ModP a, const ModP& b) { return a -= b; }
  friend ModP operator*(ModP a, const ModP& b) { return a *= b; }
  friend ModP operator/(ModP a, const ModP& b) { return a /= b; }
  friend ModP operator-(const ModP& a) { return from_raw(a.v_ == 0 ? 0 : a.p_ - a.v_, a.p_); }
  friend bool operator==(const ModP& a, const ModP& b) { return a.p_ == b.p_ && a.v_ == b.v_; }
  friend std::ostream& operator<<(std::ostream& os, const ModP& r) { return os << r.v_; }

 private:
  void check(const ModP& o) const {
    if (p_ != o.p_) throw std::domain_error("mixed-modulus arithmetic");
  }
  std::uint64_t v_ = 0;
  std::uint64_t p_ = kDefaultPrime;
};

// Field descriptors give generic code a way to build constants of the
// right kind (the modulus of a prime field is runtime data).

struct RationalField {
  using value_type = Rational;
  [[nodiscard]] Rational zero() const { return Rational(0); }
  [[nodiscard]] Rational one() const { return Rational(1); }
  [[nodiscard]] Rational from_int(long long v) const { return Rational(v); }
  [[nodiscard]] Rational from_rational(const Rational& r) const { return r; }
  friend bool operator==(const RationalField&, const RationalField&) = default;
};

struct PrimeField {
  using value_type = ModP;
  std::uint64_t modulus = kDefaultPrime;
  [[nodiscard]] ModP zero() const { return ModP::from_raw(0, modulus); }
  [[nodiscard]] ModP one() const { return ModP::from_raw(1, modulus); }
  [[nodiscard]] ModP from_int(long long v) const { return ModP(v, modulus); }
  [[nodiscard]] ModP from_rational(const Rational& r) const { return ModP::from_rational(r, modulus); }
  friend bool operator==(const PrimeField&, const PrimeField&) = default;
};

template <class F>
struct field_for;
template <>
struct field_for<Rational> { using type = RationalField; };
template <>
struct field_for<ModP> { using type = PrimeField; };
template <class F>
using field_t = typename field_for<F>::type;

inline RationalField field_of(const Rational&) { return {}; }
inline PrimeField field_of(const ModP& x) { return PrimeField{x.modulus()}; }

template <class F>
concept ExactScalar = requires(const F& a, const F& b) {
  { a + b } -> std::same_as<F>;
  { a - b } -> std::same_as<F>;
  { a * b } -> std::same_as<F>;
  { a / b } -> std::same_as<F>;
  { -a } -> std::same_as<F>;
  { a == b } -> std::convertible_to<bool>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.inverse() } -> std::same_as<F>;
  { a.str() } -> std::convertible_to<std::string>;
  typename field_t<F>;
};

}  // namespace exteria

template <>
struct std::hash<exteria::Rational> {
  std::size_t operator()(const exteria::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.str());
  }
};
