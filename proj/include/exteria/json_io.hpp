// JSON forms of rationals, matrices, exterior points and relations.
// Rationals are always strings "p/q" (or "p").
#pragma once

#include "exteria/exterior.hpp"
#include "exteria/polynomial.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace exteria {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& r) { return r.str(); }

inline Rational rational_from_json(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw std::invalid_argument("expected a rational as a string or integer, got " + j.dump());
}

inline Json to_json(const QMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

/// {m, n, t, entries: [[I, J, "p/q"], ...]} with the nonzero coordinates.
inline Json to_json(const ExteriorPoint& x) {
  Json entries = Json::array();
  auto rows = combinations(x.m, x.t), cols = combinations(x.n, x.t);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (!x.coords(i, j).is_zero()) entries.push_back(Json::array({rows[i].indices(), cols[j].indices(), x.coords(i, j).str()}));
  Json out;
  out["m"] = x.m;
  out["n"] = x.n;
  out["t"] = x.t;
  out["entries"] = std::move(entries);
  return out;
}

inline ExteriorPoint point_from_json(const Json& j) {
  try {
    const int m = j.at("m").get<int>(), n = j.at("n").get<int>(), t = j.at("t").get<int>();
    ExteriorPoint x = ExteriorPoint::zero(m, n, t);
    for (const auto& e : j.at("entries")) {
      if (!e.is_array() || e.size() != 3) throw std::invalid_argument("entry must be [I, J, value]");
      Combination ci(e[0].get<std::vector<int>>(), m), cj(e[1].get<std::vector<int>>(), n);
      if (static_cast<int>(ci.size()) != t || static_cast<int>(cj.size()) != t)
        throw std::invalid_argument("entry index sets must have size t");
      x.at(ci, cj) = rational_from_json(e[2]);
    }
    return x;
  } catch (const Json::exception& ex) {
    throw std::invalid_argument(std::string("malformed exterior point JSON: ") + ex.what());
  }
}

inline Json to_json(const MinorSymbol& s) { return Json::array({s.rows, s.cols}); }

/// [{coeff, factors: [[rows, cols], ...]}, ...]
inline Json to_json(const RelationExpr& rel) {
  Json out = Json::array();
  for (const auto& t : rel.terms()) {
    Json fs = Json::array();
    for (const auto& f : t.factors) fs.push_back(to_json(f));
    Json term;
    term["coeff"] = t.coeff.str();
    term["factors"] = std::move(fs);
    out.push_back(std::move(term));
  }
  return out;
}

inline RelationExpr relation_from_json(const Json& j) {
  try {
    RelationExpr rel;
    for (const auto& term : j) {
      std::vector<std::pair<std::vector<int>, std::vector<int>>> fs;
      for (const auto& f : term.at("factors"))
        fs.emplace_back(f.at(0).get<std::vector<int>>(), f.at(1).get<std::vector<int>>());
      rel.add_product(rational_from_json(term.at("coeff")), fs);
    }
    return rel;
  } catch (const Json::exception& ex) {
    throw std::invalid_argument(std::string("malformed relation JSON: ") + ex.what());
  }
}

}  // namespace exteria
