/**
 * @file  multi_index.hpp
 * @brief Multi-indices (i_1,...,i_m), their canonical enumeration, and
 *        index spaces that give every component of a graded coefficient
 *        space a stable position.
 *
 * Canonical order: graded by total degree |i| (ascending), then
 * lexicographically descending on (i_1,...,i_m). Matrix layouts of every
 * block map in the library follow this order.
 */
#pragma once

#include "densop/rational.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace densop {

struct MultiIndex {
  std::vector<int> parts;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> p) : parts(std::move(p)) {}
  MultiIndex(std::initializer_list<int> p) : parts(p) {}

  static MultiIndex zero(int m) { return MultiIndex(std::vector<int>(static_cast<std::size_t>(m), 0)); }
  /// 1_j, with j zero-based.
  static MultiIndex unit(int m, int j) {
    auto z = zero(m);
    z.parts[static_cast<std::size_t>(j)] = 1;
    return z;
  }

  int arity() const { return static_cast<int>(parts.size()); }
  int degree() const { return std::accumulate(parts.begin(), parts.end(), 0); }
  int operator[](int j) const { return parts[static_cast<std::size_t>(j)]; }
  int& operator[](int j) { return parts[static_cast<std::size_t>(j)]; }

  MultiIndex with(int j, int value) const {
    auto r = *this;
    r[j] = value;
    return r;
  }
  MultiIndex raised(int j, int by = 1) const { return with(j, (*this)[j] + by); }

  bool strictly_decreasing() const {
    for (std::size_t j = 1; j < parts.size(); ++j)
      if (parts[j - 1] <= parts[j]) return false;
    return parts.empty() || parts.back() >= 0;
  }
  bool valid() const {
    return std::all_of(parts.begin(), parts.end(), [](int v) { return v >= 0; });
  }

  /// "2,0,1"
  std::string to_string() const {
    std::string s;
    for (std::size_t j = 0; j < parts.size(); ++j) {
      if (j) s += ',';
      s += std::to_string(parts[j]);
    }
    return s;
  }
  static MultiIndex parse(const std::string& text) {
    MultiIndex out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
        throw Error("parse", "malformed multi-index '" + text + "'");
      out.parts.push_back(std::stoi(item));
    }
    if (out.parts.empty()) throw Error("parse", "empty multi-index");
    return out;
  }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  /// Canonical order (see file comment).
  friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
    const int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.parts > b.parts;
  }
};

enum class EnumMode { all, strictly_decreasing };

namespace detail {
inline void enumerate_rec(int m, int remaining, EnumMode mode, std::vector<int>& cur,
                          std::vector<MultiIndex>& out) {
  const int pos = static_cast<int>(cur.size());
  if (pos == m - 1) {
    if (mode == EnumMode::strictly_decreasing && pos > 0 && cur.back() <= remaining) return;
    cur.push_back(remaining);
    out.emplace_back(cur);
    cur.pop_back();
    return;
  }
  int hi = remaining;
  if (mode == EnumMode::strictly_decreasing && pos > 0) hi = std::min(hi, cur.back() - 1);
  for (int v = hi; v >= 0; --v) {
    cur.push_back(v);
    enumerate_rec(m, remaining - v, mode, cur, out);
    cur.pop_back();
  }
}
}  // namespace detail

/// Every multi-index of length m and total degree p, in canonical order.
inline std::vector<MultiIndex> enumerate_multi_indices(int m, int p, EnumMode mode = EnumMode::all) {
  if (m <= 0) throw Error("invalid-arity", "arity m must be at least 1");
  std::vector<MultiIndex> out;
  if (p < 0) return out;
  std::vector<int> cur;
  detail::enumerate_rec(m, p, mode, cur, out);
  return out;
}

/// All multi-indices of arity m with degree in [min_degree, max_degree],
/// laid out in canonical order. Position lookups are O(log n).
class IndexSpace {
 public:
  IndexSpace() = default;
  IndexSpace(int m, int max_degree, EnumMode mode = EnumMode::all, int min_degree = 0)
      : m_(m), min_degree_(min_degree), max_degree_(max_degree), mode_(mode) {
    if (m <= 0) throw Error("invalid-arity", "arity m must be at least 1");
    for (int p = 0; p <= max_degree; ++p) {
      offsets_.push_back(static_cast<int>(indices_.size()));
      if (p < min_degree) continue;
      for (auto& mi : enumerate_multi_indices(m, p, mode)) {
        position_.emplace(mi.parts, static_cast<int>(indices_.size()));
        indices_.push_back(std::move(mi));
      }
    }
    offsets_.push_back(static_cast<int>(indices_.size()));
  }

  int arity() const { return m_; }
  int min_degree() const { return min_degree_; }
  int max_degree() const { return max_degree_; }
  EnumMode mode() const { return mode_; }
  int size() const { return static_cast<int>(indices_.size()); }
  const MultiIndex& at(int pos) const { return indices_[static_cast<std::size_t>(pos)]; }
  const std::vector<MultiIndex>& indices() const { return indices_; }

  /// -1 when the index is not part of the space.
  int find(const MultiIndex& mi) const {
    auto it = position_.find(mi.parts);
    return it == position_.end() ? -1 : it->second;
  }
  int position(const MultiIndex& mi) const {
    int p = find(mi);
    if (p < 0) throw Error("shape", "multi-index " + mi.to_string() + " outside index space");
    return p;
  }

  /// Positions [begin, end) of the components of total degree p.
  int block_begin(int p) const { return offsets_[static_cast<std::size_t>(p)]; }
  int block_end(int p) const { return offsets_[static_cast<std::size_t>(p) + 1]; }
  int block_size(int p) const { return block_end(p) - block_begin(p); }
  int degree_of(int pos) const { return at(pos).degree(); }

  friend bool operator==(const IndexSpace& a, const IndexSpace& b) {
    return a.m_ == b.m_ && a.min_degree_ == b.min_degree_ && a.max_degree_ == b.max_degree_ &&
           a.mode_ == b.mode_;
  }

 private:
  int m_ = 1;
  int min_degree_ = 0;
  int max_degree_ = 0;
  EnumMode mode_ = EnumMode::all;
  std::vector<MultiIndex> indices_;
  std::vector<int> offsets_;
  std::map<std::vector<int>, int> position_;
};

}  // namespace densop
