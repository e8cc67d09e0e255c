/**
 * @file  diff_map.hpp
 * @brief Linear differential maps between coefficient spaces.
 *
 * A DiffRow is a finite sum  sum_{c,n} p_{c,n}(x) * a_c^{(n)}  over the
 * components a_c of a source space. It is closed under d/dx and under
 * multiplication by polynomials, so it can stand in for a polynomial
 * coefficient in any formula that only differentiates, adds and multiplies
 * coefficients: running an operator formula on "generic" coefficients
 * a_c = DiffRow::jet(c) yields the matrix of that formula.
 *
 * A DiffMatrix is a list of rows (one per target component).
 */
#pragma once

#include "densop/polynomial.hpp"

#include <map>
#include <utility>
#include <vector>

namespace densop {

class DiffRow {
 public:
  using Key = std::pair<int, int>;  ///< (source component, derivative order)

  DiffRow() = default;
  static DiffRow jet(int component, int order = 0, Polynomial coeff = Rational(1)) {
    DiffRow r;
    if (!coeff.is_zero()) r.terms_.emplace(Key{component, order}, std::move(coeff));
    return r;
  }

  const std::map<Key, Polynomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Polynomial coefficient(int component, int order) const {
    auto it = terms_.find({component, order});
    return it == terms_.end() ? Polynomial{} : it->second;
  }

  void add(int component, int order, const Polynomial& p) {
    if (p.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(Key{component, order}, p);
    if (!inserted) {
      it->second += p;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  DiffRow derivative(int times = 1) const {
    DiffRow cur = *this;
    for (int t = 0; t < times; ++t) {
      DiffRow next;
      for (const auto& [key, p] : cur.terms_) {
        next.add(key.first, key.second, p.derivative());
        next.add(key.first, key.second + 1, p);
      }
      cur = std::move(next);
    }
    return cur;
  }

  DiffRow& operator+=(const DiffRow& o) {
    for (const auto& [key, p] : o.terms_) add(key.first, key.second, p);
    return *this;
  }
  DiffRow& operator-=(const DiffRow& o) {
    for (const auto& [key, p] : o.terms_) add(key.first, key.second, -p);
    return *this;
  }
  DiffRow& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [key, p] : terms_) p *= s;
    return *this;
  }

  friend DiffRow operator+(DiffRow a, const DiffRow& b) { return a += b; }
  friend DiffRow operator-(DiffRow a, const DiffRow& b) { return a -= b; }
  friend DiffRow operator*(DiffRow a, const Rational& s) { return a *= s; }
  friend DiffRow operator*(const Rational& s, DiffRow a) { return a *= s; }
  friend DiffRow operator*(const Polynomial& q, const DiffRow& a) {
    DiffRow out;
    if (q.is_zero()) return out;
    for (const auto& [key, p] : a.terms_) out.add(key.first, key.second, q * p);
    return out;
  }
  friend bool operator==(const DiffRow&, const DiffRow&) = default;

  /// Applies the row to concrete polynomial components.
  Polynomial evaluate(const std::vector<Polynomial>& components) const {
    Polynomial acc;
    for (const auto& [key, p] : terms_) acc += p * components[static_cast<std::size_t>(key.first)].derivative(key.second);
    return acc;
  }

 private:
  std::map<Key, Polynomial> terms_;
};

struct DiffMatrix {
  int source_size = 0;
  std::vector<DiffRow> rows;

  int target_size() const { return static_cast<int>(rows.size()); }

  std::vector<Polynomial> apply(const std::vector<Polynomial>& components) const {
    std::vector<Polynomial> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.evaluate(components));
    return out;
  }

  bool is_zero() const {
    for (const auto& r : rows)
      if (!r.is_zero()) return false;
    return true;
  }

  friend bool operator==(const DiffMatrix&, const DiffMatrix&) = default;
};

inline DiffMatrix operator-(const DiffMatrix& a, const DiffMatrix& b) {
  if (a.rows.size() != b.rows.size() || a.source_size != b.source_size)
    throw Error("shape", "differential map size mismatch");
  DiffMatrix out = a;
  for (std::size_t i = 0; i < a.rows.size(); ++i) out.rows[i] -= b.rows[i];
  return out;
}

/// (outer o inner): first apply `inner`, then `outer`.
inline DiffMatrix compose(const DiffMatrix& outer, const DiffMatrix& inner) {
  if (outer.source_size != inner.target_size())
    throw Error("shape", "cannot compose differential maps of mismatched size");
  std::vector<std::vector<DiffRow>> derived(inner.rows.size());  // derived[r][n] = D^n(inner row r)
  auto deriv = [&](int r, int n) -> const DiffRow& {
    auto& cache = derived[static_cast<std::size_t>(r)];
    while (static_cast<int>(cache.size()) <= n)
      cache.push_back(cache.empty() ? inner.rows[static_cast<std::size_t>(r)] : cache.back().derivative());
    return cache[static_cast<std::size_t>(n)];
  };
  DiffMatrix out;
  out.source_size = inner.source_size;
  out.rows.resize(outer.rows.size());
  for (std::size_t t = 0; t < outer.rows.size(); ++t)
    for (const auto& [key, p] : outer.rows[t].terms()) out.rows[t] += p * deriv(key.first, key.second);
  return out;
}

}  // namespace densop
