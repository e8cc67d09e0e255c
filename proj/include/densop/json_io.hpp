/**
 * @file  json_io.hpp
 * @brief JSON forms of operators, tables, verdicts and assembled systems.
 *
 * Rationals are written as strings ("3/2", "-4"); polynomials as arrays of
 * such strings in ascending degree.
 */
#pragma once

#include "densop/classify.hpp"
#include "densop/equivariance.hpp"
#include "densop/symbol.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace densop {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& r) { return to_string(r); }

inline Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw Error("parse", "expected a rational as a string or integer, got " + j.dump());
}

inline Json to_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(to_json(r));
  return out;
}

inline std::vector<Rational> rationals_from_json(const Json& j) {
  if (!j.is_array()) throw Error("parse", "expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(rational_from_json(e));
  return out;
}

inline Json to_json(const Polynomial& p) { return to_json(p.coefficients()); }
inline Polynomial polynomial_from_json(const Json& j) { return Polynomial(rationals_from_json(j)); }

inline Json to_json(const RatMatrix& m) {
  Json out = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

inline RatMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw Error("parse", "expected a matrix as an array of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = rows ? static_cast<int>(j.front().size()) : 0;
  RatMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (!j[static_cast<std::size_t>(r)].is_array() || static_cast<int>(j[static_cast<std::size_t>(r)].size()) != cols)
      throw Error("parse", "matrix rows must have equal length");
    for (int c = 0; c < cols; ++c) m(r, c) = rational_from_json(j[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
  }
  return m;
}

/// Either an array of matrices or {"blocks": [...]}.
inline std::vector<RatMatrix> blocks_from_json(const Json& j) {
  const Json& arr = j.is_object() ? j.at("blocks") : j;
  std::vector<RatMatrix> out;
  for (const auto& b : arr) out.push_back(matrix_from_json(b));
  return out;
}

inline Json to_json(const MOperator& a) {
  Json coeffs = Json::object();
  for (const auto& [idx, c] : a.coeffs) coeffs[idx.to_string()] = to_json(c);
  return Json{{"m", a.m}, {"k", a.k}, {"lambda", to_json(a.lambda)}, {"mu", to_json(a.mu)}, {"coeffs", coeffs}};
}

inline MOperator moperator_from_json(const Json& j) {
  try {
    MOperator a(j.at("m").get<int>(), j.at("k").get<int>(), rationals_from_json(j.at("lambda")), rational_from_json(j.at("mu")));
    for (const auto& [key, val] : j.at("coeffs").items()) a.set(MultiIndex::parse(key), polynomial_from_json(val));
    return a;
  } catch (const nlohmann::json::exception& e) {
    throw Error("parse", std::string("malformed operator: ") + e.what());
  }
}

inline Json to_json(const CoeffTable& t) {
  Json entries = Json::object();
  for (int sp = 0; sp < t.space.size(); ++sp)
    for (int ip = 0; ip < t.space.size(); ++ip) {
      if (t.space.degree_of(sp) < t.space.degree_of(ip) || t.entries(ip, sp) == 0) continue;
      entries[t.space.at(sp).to_string() + "|" + t.space.at(ip).to_string()] = to_json(t.entries(ip, sp));
    }
  Json lambda = t.kind == TableKind::skew_symbol ? to_json(t.lambda.front()) : to_json(t.lambda);
  return Json{{"kind", to_string(t.kind)}, {"m", t.m},           {"k", t.k},
              {"lambda", lambda},          {"mu", to_json(t.mu)}, {"delta", to_json(t.delta())},
              {"entries", entries}};
}

inline CoeffTable coeff_table_from_json(const Json& j) {
  try {
    CoeffTable t;
    t.kind = parse_table_kind(j.at("kind").get<std::string>());
    t.m = j.at("m").get<int>();
    t.k = j.at("k").get<int>();
    t.mu = rational_from_json(j.at("mu"));
    if (t.kind == TableKind::skew_symbol) {
      t.lambda.assign(static_cast<std::size_t>(t.m), rational_from_json(j.at("lambda")));
      t.space = skew_index_space(t.m, t.k);
    } else {
      t.lambda = rationals_from_json(j.at("lambda"));
      t.space = IndexSpace(t.m, t.k);
    }
    t.entries = RatMatrix(t.space.size(), t.space.size());
    for (const auto& [key, val] : j.at("entries").items()) {
      const auto bar = key.find('|');
      if (bar == std::string::npos) throw Error("parse", "table keys must look like 's|i'");
      t.entries(t.space.position(MultiIndex::parse(key.substr(bar + 1))), t.space.position(MultiIndex::parse(key.substr(0, bar)))) =
          rational_from_json(val);
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error("parse", std::string("malformed table: ") + e.what());
  }
}

inline Json to_json(const SymbolVector& v) {
  Json comps = Json::object();
  for (const auto& [idx, c] : v.components) comps[idx.to_string()] = to_json(c);
  return Json{{"m", v.m}, {"k", v.k}, {"delta", to_json(v.delta)}, {"components", comps}};
}

inline SymbolVector symbol_vector_from_json(const Json& j) {
  try {
    SymbolVector v{j.at("m").get<int>(), j.at("k").get<int>(), rational_from_json(j.at("delta")), {}};
    for (const auto& [key, val] : j.at("components").items()) {
      auto p = polynomial_from_json(val);
      if (!p.is_zero()) v.components[MultiIndex::parse(key)] = p;
    }
    return v;
  } catch (const nlohmann::json::exception& e) {
    throw Error("parse", std::string("malformed symbol vector: ") + e.what());
  }
}

inline Json to_json(const ResonanceReport& r) {
  Json vals = Json::array();
  for (const auto& v : r.resonant_values) vals.push_back(to_json(v));
  return Json{{"k", r.k}, {"resonant_values", vals}, {"delta", to_json(r.delta)}, {"is_resonant", r.is_resonant}};
}

inline Json to_json(const ExistenceVerdict& v) {
  Json out{{"exists", to_string(v.exists)}, {"free_parameters", v.free_parameters}, {"verified", v.verified}};
  if (v.witness) {
    Json w = Json::object();
    for (std::size_t u = 0; u < v.unknowns.size(); ++u)
      if ((*v.witness)[u] != 0) w[v.unknowns[u]] = to_json((*v.witness)[u]);
    out["witness"] = w;
  }
  if (!v.certificate.empty()) out["certificate"] = v.certificate;
  if (!v.note.empty()) out["note"] = v.note;
  return out;
}

inline Json to_json(const IsoResult& r) {
  Json blocks = Json::array();
  for (const auto& b : r.tau_blocks) blocks.push_back(to_json(b));
  Json terms = Json::object();
  for (const auto& [k, v] : r.derivative_terms) terms[k] = to_json(v);
  Json out{{"exists", to_string(r.exists)},
           {"tau_blocks", blocks},
           {"derivative_terms", terms},
           {"free_parameters", Json{{"dimension", r.free_parameters}, {"description", r.free_parameter_note}}},
           {"verified", r.verified}};
  if (!r.reason.empty()) out["reason"] = r.reason;
  if (!r.certificate.empty()) out["certificate"] = r.certificate;
  if (r.obstruction_agrees) out["obstruction_cross_check"] = *r.obstruction_agrees;
  return out;
}

inline Json to_json(const ObstructionVector& v) {
  Json out = Json::object();
  for (std::size_t i = 0; i < v.index.size(); ++i) out[v.index[i].to_string()] = to_json(v.values[i]);
  return out;
}

/// One JSON object per row.
inline void write_system_jsonl(const EquivarianceSystem& s, std::ostream& os) {
  for (std::size_t r = 0; r < s.rows.size(); ++r) {
    const auto& p = s.provenance[r];
    Json row = Json::object();
    for (const auto& [u, v] : s.rows[r]) row[s.unknowns[static_cast<std::size_t>(u)]] = to_json(v);
    Json line{{"field", p.field},   {"target", p.target.to_string()}, {"source", p.source.to_string()},
              {"order", p.order},   {"power", p.power},               {"row", row},
              {"rhs", to_json(s.rhs[r])}};
    os << line.dump() << '\n';
  }
}

/// "path  value" lines for the table output format.
inline void write_table(const Json& j, std::ostream& os, const std::string& prefix = "") {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) write_table(v, os, prefix.empty() ? k : prefix + "." + k);
  } else if (j.is_array() && !j.empty() && (j.front().is_array() || j.front().is_object())) {
    for (std::size_t i = 0; i < j.size(); ++i) write_table(j[i], os, prefix + "[" + std::to_string(i) + "]");
  } else {
    std::string value;
    if (j.is_string()) {
      value = j.get<std::string>();
    } else if (j.is_array()) {
      for (std::size_t i = 0; i < j.size(); ++i) value += (i ? " " : "") + (j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
    } else {
      value = j.dump();
    }
    os << prefix << "  " << value << '\n';
  }
}

}  // namespace densop
