// The sets Phi_0, Phi_1, Phi_2 of t-minors, the denominator
// F = delta_{t-1} delta_t delta_{t+1}, and the searches that certify
// K[Phi_0][1/F] = A_t[1/F] minor by minor.
#pragma once

#include "exteria/parallel.hpp"
#include "exteria/relations.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace exteria {

/// Membership of [a|b] in Phi_level (level 0, 1 or 2), with a_0 = b_0 = 0.
inline bool in_phi(int level, const std::vector<int>& a, const std::vector<int>& b, int t) {
  if (static_cast<int>(a.size()) != t || static_cast<int>(b.size()) != t)
    throw std::invalid_argument("in_phi: minor must have size t");
  const int at = a[t - 1], bt = b[t - 1];
  const int at1 = t >= 2 ? a[t - 2] : 0, bt1 = t >= 2 ? b[t - 2] : 0;
  switch (level) {
    case 0:
      return (at <= t + 1 && bt <= t + 1) || (at1 == t - 1 && bt1 == t - 1) || (at == t && bt1 <= t) ||
             (at1 <= t && bt == t);
    case 1:
      return (at <= t + 1 && bt <= t + 1) || (at1 == t - 1 && bt1 == t - 1) || at == t || bt == t;
    case 2:
      return (at1 <= t && bt1 <= t) || at == t || bt == t;
    default:
      throw std::out_of_range("in_phi: level must be 0, 1 or 2");
  }
}

/// All t-minors of the generic m x n matrix in lex order (rows, then columns).
inline std::vector<MinorSymbol> all_minors(int m, int n, int t) {
  std::vector<MinorSymbol> out;
  for (const auto& r : combinations(m, t))
    for (const auto& c : combinations(n, t)) out.emplace_back(r.indices(), c.indices());
  return out;
}

inline std::vector<MinorSymbol> phi_set(int level, int m, int n, int t) {
  if (t < 1 || t >= m || m > n) throw std::invalid_argument("phi_set: needs 1 <= t < m <= n");
  std::vector<MinorSymbol> out;
  for (auto& s : all_minors(m, n, t))
    if (in_phi(level, s.rows, s.cols, t)) out.push_back(std::move(s));
  return out;
}

/// delta_i = [1..i | 1..i] (delta_0 = 1).
inline MinorSymbol leading_minor(int i) { return MinorSymbol(detail::iota_vec(1, i), detail::iota_vec(1, i)); }

/// delta_{t-1} delta_{t+1} minus the 2 x 2 determinant of t-minors on
/// rows/columns {1..t} and {1..t-1, t+1}; expands to zero.
inline RelationExpr denominator_identity(int t) {
  std::vector<int> p = detail::iota_vec(1, t), q = detail::concat(detail::iota_vec(1, t - 1), {t + 1});
  RelationExpr lhs;
  lhs.add_term(Rational(1), {leading_minor(t - 1), leading_minor(t + 1)});
  return lhs - compound_minor({p, q}, {p, q});
}

/// F = delta_{t-1} delta_t delta_{t+1} as a relation expression.
inline RelationExpr denominator_F(int t) {
  RelationExpr f;
  f.add_term(Rational(1), {leading_minor(t - 1), leading_minor(t), leading_minor(t + 1)});
  return f;
}

/// Result of one step of the search: (cofactor)^k M written as a
/// polynomial in the generators.
struct ClaimCertificate {
  bool found = false;
  int k = 0;
  Membership membership;
  std::vector<MinorSymbol> generators;
};

/// Step 1: delta_t^k M in K[Phi_2]; step 2: (delta_{t-1} delta_{t+1})^k M in
/// K[Phi_1]; step 3: delta_t^k M in K[Phi_0]. `extra` minors join the
/// generator set. Returns the least k <= k_max that works.
inline ClaimCertificate critical_claim_search(const MinorSymbol& target_minor, int step, int m, int n, int t,
                                              int k_max = 3, int degree_bound = -1,
                                              const std::vector<MinorSymbol>& extra = {},
                                              SolveMethod method = SolveMethod::Modular, std::uint64_t seed = 1) {
  if (step < 1 || step > 3) throw std::out_of_range("critical_claim_search: step must be 1, 2 or 3");
  if (degree_bound < 0) degree_bound = t + 2;
  const int level = step == 1 ? 2 : (step == 2 ? 1 : 0);
  ClaimCertificate out;
  out.generators = phi_set(level, m, n, t);
  for (const auto& e : extra)
    if (std::find(out.generators.begin(), out.generators.end(), e) == out.generators.end()) out.generators.push_back(e);

  MinorExpander ex(m, n);
  std::vector<SparsePoly> gens;
  for (const auto& g : out.generators) gens.push_back(ex(g));
  RelationExpr cofactor;
  if (step == 2) cofactor.add_term(Rational(1), {leading_minor(t - 1), leading_minor(t + 1)});
  else cofactor.add_term(Rational(1), {leading_minor(t)});

  RelationExpr target;
  target.add_term(Rational(1), {target_minor});
  for (int k = 0; k <= k_max; ++k) {
    if (k > 0) target = target * cofactor;
    SparsePoly poly = expand(target, m, n);
    Membership mem = subalgebra_membership(poly, gens, m, n, degree_bound, method, seed + k);
    if (mem.found) {
      out.found = true;
      out.k = k;
      out.membership = std::move(mem);
      return out;
    }
  }
  return out;
}

/// The identity certified by a search result: (cofactor)^k M - sum c prod(generators).
inline RelationExpr certificate_identity(const ClaimCertificate& cert, const MinorSymbol& target_minor, int step, int t) {
  RelationExpr id;
  std::vector<MinorSymbol> lhs{target_minor};
  for (int i = 0; i < cert.k; ++i) {
    if (step == 2) {
      lhs.push_back(leading_minor(t - 1));
      lhs.push_back(leading_minor(t + 1));
    } else {
      lhs.push_back(leading_minor(t));
    }
  }
  id.add_term(Rational(1), lhs);
  for (const auto& term : cert.membership.terms) {
    std::vector<MinorSymbol> fs;
    for (auto g : term.generators) fs.push_back(cert.generators[g]);
    id.add_term(-term.coeff, fs);
  }
  return id;
}

struct LocalizeEntry {
  MinorSymbol minor;
  int level = 0;  // smallest i with the minor in Phi_i, 3 if outside Phi_2
  int step = 0;   // search step used (0 for minors of Phi_0)
  int k = 0;
  int exponent = 0;  // F^exponent * minor lies in K[Phi_0]
  std::size_t terms = 0;
  std::vector<MinorSymbol> borrowed;  // generators outside the step's Phi set
  bool certified = false;
  bool verified = false;  // certificate identity expanded to zero
  RelationExpr identity;  // cofactor^k * minor - representation
};

struct LocalizeReport {
  int m = 0, n = 0, t = 0;
  std::size_t phi_sizes[3] = {0, 0, 0};
  bool denominator_identity_holds = false;
  bool F_in_phi0 = false;
  std::vector<LocalizeEntry> entries;
  [[nodiscard]] bool all_certified() const {
    for (const auto& e : entries)
      if (!e.certified || !e.verified) return false;
    return true;
  }
};

struct LocalizeOptions {
  int k_max = 3;
  int degree_bound = -1;  // t + 2 when negative
  unsigned threads = 1;
  SolveMethod method = SolveMethod::Modular;
  std::uint64_t seed = 1;
};

/// Certifies every t-minor: minors of Phi_1 - Phi_0 via step 3, of
/// Phi_2 - Phi_1 via step 2, the rest via step 1. Within a stage, minors
/// already certified join the generators of later rounds, and the F-power
/// of a minor is k plus the largest total F-power of the generators in any
/// product of its representation.
inline LocalizeReport verify_localize(int m, int n, int t, const LocalizeOptions& opt = {}) {
  if (t < 1 || t >= m || m > n) throw std::invalid_argument("verify_localize: needs 1 <= t < m <= n");
  LocalizeReport rep;
  rep.m = m;
  rep.n = n;
  rep.t = t;
  std::vector<MinorSymbol> phi[3];
  for (int l = 0; l < 3; ++l) {
    phi[l] = phi_set(l, m, n, t);
    rep.phi_sizes[l] = phi[l].size();
  }
  rep.denominator_identity_holds = expand(denominator_identity(t), m, n).is_zero();
  {
    MinorExpander ex(m, n);
    std::vector<SparsePoly> gens;
    for (const auto& g : phi[0]) gens.push_back(ex(g));
    rep.F_in_phi0 = subalgebra_membership(expand(denominator_F(t), m, n), gens, m, n, 3, opt.method, opt.seed).found;
  }

  auto level_of = [&](const MinorSymbol& s) {
    for (int l = 0; l < 3; ++l)
      if (in_phi(l, s.rows, s.cols, t)) return l;
    return 3;
  };
  std::map<MinorSymbol, int> exponent;  // certified minors
  std::map<MinorSymbol, LocalizeEntry> entries;
  for (const auto& s : all_minors(m, n, t)) {
    LocalizeEntry e;
    e.minor = s;
    e.level = level_of(s);
    if (e.level == 0) {
      e.certified = e.verified = true;
      exponent[s] = 0;
    }
    entries[s] = e;
  }

  for (int level = 1; level <= 3; ++level) {
    const int step = 4 - level;
    const int base = level - 1;
    std::vector<MinorSymbol> pending;
    for (const auto& [s, e] : entries)
      if (e.level == level) pending.push_back(s);
    while (!pending.empty()) {
      std::vector<MinorSymbol> extra;
      for (const auto& [s, x] : exponent)
        if (entries[s].level <= level && !in_phi(base, s.rows, s.cols, t)) extra.push_back(s);
      std::vector<ClaimCertificate> results(pending.size());
      parallel_for(pending.size(), opt.threads, [&](std::size_t i) {
        results[i] = critical_claim_search(pending[i], step, m, n, t, opt.k_max, opt.degree_bound, extra, opt.method,
                                           opt.seed + i);
      });
      std::vector<MinorSymbol> still;
      bool progress = false;
      for (std::size_t i = 0; i < pending.size(); ++i) {
        const auto& cert = results[i];
        const auto& s = pending[i];
        // Generators not yet certified (possible only if an earlier stage failed) block the chain.
        bool usable = cert.found;
        int worst = 0;
        std::vector<MinorSymbol> borrowed;
        for (const auto& term : cert.membership.terms) {
          int sum = 0;
          for (auto g : term.generators) {
            const auto& sym = cert.generators[g];
            auto it = exponent.find(sym);
            if (it == exponent.end()) {
              usable = false;
              break;
            }
            sum += it->second;
            if (!in_phi(base, sym.rows, sym.cols, t) &&
                std::find(borrowed.begin(), borrowed.end(), sym) == borrowed.end())
              borrowed.push_back(sym);
          }
          worst = std::max(worst, sum);
        }
        if (!usable) {
          still.push_back(s);
          continue;
        }
        auto& e = entries[s];
        e.step = step;
        e.k = cert.k;
        e.terms = cert.membership.terms.size();
        e.borrowed = borrowed;
        e.exponent = cert.k + worst;
        e.certified = true;
        e.identity = certificate_identity(cert, s, step, t);
        e.verified = expand(e.identity, m, n).is_zero();
        exponent[s] = e.exponent;
        progress = true;
      }
      if (!progress) break;
      pending = std::move(still);
    }
  }
  for (auto& [s, e] : entries) rep.entries.push_back(e);
  return rep;
}

}  // namespace exteria
