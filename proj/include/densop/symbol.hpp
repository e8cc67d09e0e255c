/**
 * @file  symbol.hpp
 * @brief sl(2)-equivariant symbol and quantization coefficient tables.
 *
 * A symbol table alpha maps an operator with coefficients a_s to the
 * symbol components
 *
 *     abar_i = sum_{|s| >= |i|} alpha^s_i * a_s^{(|s|-|i|)},
 *
 * a quantization table beta maps symbol components back:
 *
 *     atilde_i = sum_{|s| >= |i|} beta^s_i * a_s^{(|s|-|i|)}.
 *
 * Entries with |s| = |i| form the principal blocks [.]_p (rows indexed by
 * i, columns by s, canonical order). Everything below the blocks follows
 * from one scalar recursion per entry, with divisor
 * (|s|-|i|)(2 delta - |s| - |i| - 1); it vanishes exactly on the resonant
 * shifts 1, 3/2, ..., k.
 */
#pragma once

#include "densop/action.hpp"
#include "densop/linalg.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace densop {

enum class TableKind { symbol, quantization, skew_symbol };

inline std::string to_string(TableKind k) {
  switch (k) {
    case TableKind::symbol: return "symbol";
    case TableKind::quantization: return "quantization";
    case TableKind::skew_symbol: return "skew_symbol";
  }
  return "?";
}

inline TableKind parse_table_kind(const std::string& s) {
  if (s == "symbol") return TableKind::symbol;
  if (s == "quantization") return TableKind::quantization;
  if (s == "skew_symbol") return TableKind::skew_symbol;
  throw Error("parse", "unknown table kind '" + s + "'");
}

/// {1, 3/2, 2, ..., k}; empty for k = 0.
inline std::set<Rational> resonance_set(int k) {
  std::set<Rational> out;
  for (int p = 2; p <= 2 * k; ++p) out.insert(make_rational(p, 2));
  return out;
}

struct ResonanceReport {
  int k = 0;
  std::set<Rational> resonant_values;
  Rational delta;
  bool is_resonant = false;
};

inline ResonanceReport resonance_report(int k, const Rational& delta) {
  ResonanceReport r{k, resonance_set(k), delta, false};
  r.is_resonant = r.resonant_values.count(delta) > 0;
  return r;
}

inline Rational shift_of(const std::vector<Rational>& lambda, const Rational& mu) {
  Rational d = mu;
  for (const auto& l : lambda) d -= l;
  return d;
}

struct CoeffTable {
  TableKind kind = TableKind::symbol;
  int m = 1;
  int k = 0;
  std::vector<Rational> lambda;
  Rational mu;
  IndexSpace space;
  RatMatrix entries;  ///< entries(position of i, position of s)

  Rational delta() const { return shift_of(lambda, mu); }

  /// The (s, i) entry: superscript s, subscript i.
  Rational entry(const MultiIndex& s, const MultiIndex& i) const {
    return entries(space.position(i), space.position(s));
  }

  RatMatrix principal_block(int p) const {
    const int b = space.block_begin(p), n = space.block_size(p);
    RatMatrix out(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) out(r, c) = entries(b + r, b + c);
    return out;
  }
  std::vector<RatMatrix> principal_blocks() const {
    std::vector<RatMatrix> out;
    for (int p = space.min_degree(); p <= k; ++p) out.push_back(principal_block(p));
    return out;
  }

  friend bool operator==(const CoeffTable& a, const CoeffTable& b) {
    return a.kind == b.kind && a.m == b.m && a.k == b.k && a.lambda == b.lambda && a.mu == b.mu &&
           a.space == b.space && a.entries == b.entries;
  }
};

/// One identity block per degree of `space` (the default principal symbol).
inline std::vector<RatMatrix> identity_blocks(const IndexSpace& space) {
  std::vector<RatMatrix> out;
  for (int p = space.min_degree(); p <= space.max_degree(); ++p) out.push_back(RatMatrix::identity(space.block_size(p)));
  return out;
}

namespace detail {

inline void check_nonresonant(const Rational& delta, int k) {
  for (int p = 1; p <= k; ++p)
    for (int q = 0; q < p; ++q)
      if (2 * delta - p - q - 1 == 0)
        throw Error("resonant", "resonant shift delta=" + to_string(delta) + ": divisor (|s|-|i|)(2delta-|s|-|i|-1) vanishes at |s|=" +
                                    std::to_string(p) + ", |i|=" + std::to_string(q));
}

inline void check_blocks(const IndexSpace& space, const std::vector<RatMatrix>& blocks) {
  const int expected = space.max_degree() - space.min_degree() + 1;
  if (static_cast<int>(blocks.size()) != expected)
    throw Error("shape", "expected " + std::to_string(expected) + " principal blocks");
  for (int p = space.min_degree(); p <= space.max_degree(); ++p) {
    const auto& b = blocks[static_cast<std::size_t>(p - space.min_degree())];
    if (b.rows() != space.block_size(p) || b.cols() != space.block_size(p))
      throw Error("shape", "principal block " + std::to_string(p) + " must be " + std::to_string(space.block_size(p)) +
                               "x" + std::to_string(space.block_size(p)));
    if (determinant(b) == 0)
      throw Error("invalid-principal-symbol", "principal block " + std::to_string(p) + " is singular");
  }
}

inline void place_blocks(CoeffTable& t, const std::vector<RatMatrix>& blocks) {
  for (int p = t.space.min_degree(); p <= t.k; ++p) {
    const auto& b = blocks[static_cast<std::size_t>(p - t.space.min_degree())];
    const int off = t.space.block_begin(p);
    for (int r = 0; r < b.rows(); ++r)
      for (int c = 0; c < b.cols(); ++c) t.entries(off + r, off + c) = b(r, c);
  }
}

/// Upward recursion in s shared by the full and skew symbol tables.
inline void fill_symbol(CoeffTable& t, const std::vector<Rational>& lambda) {
  const Rational delta = t.delta();
  const int n = t.space.size();
  for (int sp = 0; sp < n; ++sp) {
    const auto& s = t.space.at(sp);
    for (int ip = 0; ip < n; ++ip) {
      const auto& i = t.space.at(ip);
      if (s.degree() <= i.degree()) continue;
      Rational rhs = 0;
      for (int j = 0; j < t.m; ++j) {
        if (s[j] == 0) continue;
        const int lower = t.space.find(s.raised(j, -1));
        if (lower < 0) continue;
        rhs += s[j] * (2 * lambda[static_cast<std::size_t>(j)] + s[j] - 1) * t.entries(ip, lower);
      }
      const Rational div = Rational(s.degree() - i.degree()) * (2 * delta - s.degree() - i.degree() - 1);
      t.entries(ip, sp) = rhs / div;
    }
  }
}

}  // namespace detail

/// Symbol table from the upward recursion
///   (|s|-|i|)(2delta-|s|-|i|-1) alpha^s_i = sum_j s_j(2lambda_j+s_j-1) alpha^{s-1_j}_i.
inline CoeffTable symbol_alpha(const std::vector<Rational>& lambda, const Rational& mu, int k,
                               const std::vector<RatMatrix>& blocks) {
  const int m = static_cast<int>(lambda.size());
  CoeffTable t{TableKind::symbol, m, k, lambda, mu, IndexSpace(m, k), {}};
  detail::check_nonresonant(t.delta(), k);
  detail::check_blocks(t.space, blocks);
  t.entries = RatMatrix(t.space.size(), t.space.size());
  detail::place_blocks(t, blocks);
  detail::fill_symbol(t, lambda);
  return t;
}

inline CoeffTable symbol_alpha(const std::vector<Rational>& lambda, const Rational& mu, int k) {
  return symbol_alpha(lambda, mu, k, identity_blocks(IndexSpace(static_cast<int>(lambda.size()), k)));
}

/// Quantization table from the downward recursion
///   (2delta-1-|s|-|i|)(|s|-|i|) beta^s_i + sum_j (i_j+1)(2lambda_j+i_j) beta^s_{i+1_j} = 0.
inline CoeffTable quantize_beta(const std::vector<Rational>& lambda, const Rational& mu, int k,
                                const std::vector<RatMatrix>& blocks) {
  const int m = static_cast<int>(lambda.size());
  CoeffTable t{TableKind::quantization, m, k, lambda, mu, IndexSpace(m, k), {}};
  const Rational delta = t.delta();
  detail::check_nonresonant(delta, k);
  detail::check_blocks(t.space, blocks);
  const int n = t.space.size();
  t.entries = RatMatrix(n, n);
  detail::place_blocks(t, blocks);
  for (int sp = 0; sp < n; ++sp) {
    const auto& s = t.space.at(sp);
    for (int ip = n - 1; ip >= 0; --ip) {
      const auto& i = t.space.at(ip);
      if (i.degree() >= s.degree()) continue;
      Rational acc = 0;
      for (int j = 0; j < m; ++j) {
        const int up = t.space.position(i.raised(j));
        acc += (i[j] + 1) * (2 * lambda[static_cast<std::size_t>(j)] + i[j]) * t.entries(up, sp);
      }
      const Rational div = (2 * delta - 1 - s.degree() - i.degree()) * Rational(s.degree() - i.degree());
      t.entries(ip, sp) = -acc / div;
    }
  }
  return t;
}

inline CoeffTable quantize_beta(const std::vector<Rational>& lambda, const Rational& mu, int k) {
  return quantize_beta(lambda, mu, k, identity_blocks(IndexSpace(static_cast<int>(lambda.size()), k)));
}

/// Element of the graded symbol space: component i is a density of weight delta-|i|.
struct SymbolVector {
  int m = 1;
  int k = 0;
  Rational delta;
  std::map<MultiIndex, Polynomial> components;

  Polynomial component(const MultiIndex& i) const {
    auto it = components.find(i);
    return it == components.end() ? Polynomial{} : it->second;
  }
  friend bool operator==(const SymbolVector&, const SymbolVector&) = default;
};

/// The table as a differential map (target i <- source s, order |s|-|i|).
inline DiffMatrix table_matrix(const CoeffTable& t) {
  DiffMatrix out;
  const int n = t.space.size();
  out.source_size = n;
  out.rows.resize(static_cast<std::size_t>(n));
  for (int ip = 0; ip < n; ++ip)
    for (int sp = 0; sp < n; ++sp) {
      const int order = t.space.degree_of(sp) - t.space.degree_of(ip);
      if (order < 0 || t.entries(ip, sp) == 0) continue;
      out.rows[static_cast<std::size_t>(ip)].add(sp, order, Polynomial(t.entries(ip, sp)));
    }
  return out;
}

inline SymbolVector apply_symbol(const CoeffTable& t, const MOperator& a) {
  if (t.kind == TableKind::quantization) throw Error("shape", "apply_symbol needs a symbol table");
  if (a.m != t.m || a.k != t.k || a.lambda != t.lambda || a.mu != t.mu)
    throw Error("shape", "operator does not belong to the module of the table");
  std::vector<Polynomial> coeffs(static_cast<std::size_t>(t.space.size()));
  for (const auto& [idx, c] : a.coeffs) {
    const int pos = t.space.find(idx);
    if (pos < 0) {
      if (t.kind == TableKind::skew_symbol) continue;  // non-decreasing slots are determined by skew symmetry
      throw Error("shape", "operator coefficient outside the table's index space");
    }
    coeffs[static_cast<std::size_t>(pos)] = c;
  }
  auto comps = table_matrix(t).apply(coeffs);
  SymbolVector v{t.m, t.k, t.delta(), {}};
  for (int c = 0; c < t.space.size(); ++c)
    if (!comps[static_cast<std::size_t>(c)].is_zero()) v.components.emplace(t.space.at(c), std::move(comps[static_cast<std::size_t>(c)]));
  return v;
}

inline MOperator apply_quantization(const CoeffTable& t, const SymbolVector& v) {
  if (t.kind != TableKind::quantization) throw Error("shape", "apply_quantization needs a quantization table");
  if (v.m != t.m || v.k != t.k || v.delta != t.delta())
    throw Error("shape", "symbol vector does not match the table");
  std::vector<Polynomial> comps(static_cast<std::size_t>(t.space.size()));
  for (const auto& [idx, c] : v.components) comps[static_cast<std::size_t>(t.space.position(idx))] = c;
  return operator_from_vector(t.space, table_matrix(t).apply(comps), t.lambda, t.mu);
}

// ---------------------------------------------------------------------------
// Skew-symmetric operators

/// Number of partitions of i into exactly m distinct positive parts, by
/// exhaustive enumeration of strictly decreasing part lists.
inline long partition_count_Q(int i, int m) {
  if (m < 0 || i < 0) return 0;
  long count = 0;
  std::vector<int> parts;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (static_cast<int>(parts.size()) == m) {
      if (remaining == 0) ++count;
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      parts.push_back(p);
      self(self, remaining - p, p - 1);
      parts.pop_back();
    }
  };
  rec(rec, i, i);
  return count;
}

/// Q(i,m) + Q(i,m-1): the number of strictly decreasing multi-indices of
/// arity m and degree i.
inline long partition_count_R(int i, int m) { return partition_count_Q(i, m) + partition_count_Q(i, m - 1); }

/// Strictly decreasing multi-indices of degree 1..k.
inline IndexSpace skew_index_space(int m, int k) { return IndexSpace(m, k, EnumMode::strictly_decreasing, 1); }

/// Symbol table for skew-symmetric operators with all input weights equal
/// to lambda; same recursion as symbol_alpha on strictly decreasing indices.
inline CoeffTable skew_symbol_alpha(const Rational& lambda, const Rational& mu, int k, int m,
                                    const std::vector<RatMatrix>& blocks) {
  std::vector<Rational> lambdas(static_cast<std::size_t>(m), lambda);
  CoeffTable t{TableKind::skew_symbol, m, k, lambdas, mu, skew_index_space(m, k), {}};
  detail::check_nonresonant(t.delta(), k);
  detail::check_blocks(t.space, blocks);
  t.entries = RatMatrix(t.space.size(), t.space.size());
  detail::place_blocks(t, blocks);
  detail::fill_symbol(t, lambdas);
  return t;
}

inline CoeffTable skew_symbol_alpha(const Rational& lambda, const Rational& mu, int k, int m) {
  return skew_symbol_alpha(lambda, mu, k, m, identity_blocks(skew_index_space(m, k)));
}

}  // namespace densop
