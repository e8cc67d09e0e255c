/**
 * @file  linalg.hpp
 * @brief Exact linear algebra over Q.
 *
 * Dense routines (RatMatrix, solve_linear_system, det_and_rank) use
 * fraction-free Bareiss elimination on integer-scaled rows. Large sparse
 * systems produced by the equivariance engine go through SparseEliminator,
 * which keeps an incremental row echelon form and parametrizes the
 * solution set by its free columns.
 */
#pragma once

#include "densop/rational.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace densop {

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {}
  RatMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != cols_) throw Error("shape", "ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static RatMatrix identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rational& operator()(int r, int c) { return data_[static_cast<std::size_t>(r * cols_ + c)]; }
  const Rational& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r * cols_ + c)]; }

  RatMatrix transpose() const {
    RatMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  std::vector<Rational> apply(const std::vector<Rational>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw Error("shape", "matrix-vector size mismatch");
    std::vector<Rational> out(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c)
        if ((*this)(r, c) != 0) out[static_cast<std::size_t>(r)] += (*this)(r, c) * v[static_cast<std::size_t>(c)];
    return out;
  }

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_) throw Error("shape", "matrix product size mismatch");
    RatMatrix out(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (int j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
      }
    return out;
  }

  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

/// particular + span(nullspace_basis); `particular` is empty when the
/// system is inconsistent.
struct SolutionSet {
  std::optional<std::vector<Rational>> particular;
  std::vector<std::vector<Rational>> nullspace_basis;

  bool consistent() const { return particular.has_value(); }
};

namespace detail {

/// Fraction-free row echelon form of an integer matrix, in place.
/// Returns the pivot columns (considering only the first `pivot_cols`).
inline std::vector<int> bareiss_echelon(std::vector<std::vector<Integer>>& m, int pivot_cols,
                                        int* swaps = nullptr) {
  const int rows = static_cast<int>(m.size());
  const int width = rows ? static_cast<int>(m[0].size()) : 0;
  std::vector<int> pivots;
  Integer prev = 1;
  int r = 0;
  for (int c = 0; c < pivot_cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) {
      std::swap(m[static_cast<std::size_t>(piv)], m[static_cast<std::size_t>(r)]);
      if (swaps) ++*swaps;
    }
    const auto& prow = m[static_cast<std::size_t>(r)];
    for (int i = r + 1; i < rows; ++i) {
      auto& row = m[static_cast<std::size_t>(i)];
      for (int j = c + 1; j < width; ++j) {
        Integer v = prow[static_cast<std::size_t>(c)] * row[static_cast<std::size_t>(j)] -
                    row[static_cast<std::size_t>(c)] * prow[static_cast<std::size_t>(j)];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        row[static_cast<std::size_t>(j)] = std::move(v);
      }
      row[static_cast<std::size_t>(c)] = 0;
    }
    prev = prow[static_cast<std::size_t>(c)];
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::vector<Integer> scale_to_integers(const std::vector<Rational>& row) {
  Integer l = 1;
  for (const auto& v : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  std::vector<Integer> out;
  out.reserve(row.size());
  for (const auto& v : row) out.push_back(v.get_num() * (l / v.get_den()));
  return out;
}

}  // namespace detail

/// Exact determinant and rank; the determinant is only computed when the
/// matrix is square (otherwise `det` is empty).
struct DetRank {
  std::optional<Rational> det;
  int rank = 0;
};

inline DetRank det_and_rank(const RatMatrix& a, bool require_square = false) {
  if (require_square && !a.square()) throw Error("shape", "determinant of a non-square matrix");
  // Scale the whole matrix by one common denominator so det scales predictably.
  Integer l = 1;
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(r, c).get_den_mpz_t());
  std::vector<std::vector<Integer>> m(static_cast<std::size_t>(a.rows()),
                                      std::vector<Integer>(static_cast<std::size_t>(a.cols())));
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = a(r, c).get_num() * (l / a(r, c).get_den());
  int swaps = 0;
  auto piv = detail::bareiss_echelon(m, a.cols(), &swaps);
  DetRank out;
  out.rank = static_cast<int>(piv.size());
  if (a.square()) {
    const int n = a.rows();
    if (n == 0) {
      out.det = Rational(1);
    } else if (out.rank < n) {
      out.det = Rational(0);
    } else {
      Integer lp;
      mpz_pow_ui(lp.get_mpz_t(), l.get_mpz_t(), static_cast<unsigned long>(n));
      Rational d(m[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(n - 1)], lp);
      d.canonicalize();
      out.det = (swaps % 2) ? Rational(-d) : d;
    }
  }
  return out;
}

inline Rational determinant(const RatMatrix& a) { return *det_and_rank(a, true).det; }

/// Solves A x = b exactly: particular solution (free variables set to zero)
/// plus a nullspace basis with one vector per free column.
inline SolutionSet solve_linear_system(const RatMatrix& a, const std::vector<Rational>& b) {
  if (static_cast<int>(b.size()) != a.rows()) throw Error("shape", "right-hand side length does not match rows");
  const int n = a.cols();
  std::vector<std::vector<Integer>> m;
  m.reserve(static_cast<std::size_t>(a.rows()));
  for (int r = 0; r < a.rows(); ++r) {
    std::vector<Rational> row(static_cast<std::size_t>(n + 1));
    for (int c = 0; c < n; ++c) row[static_cast<std::size_t>(c)] = a(r, c);
    row[static_cast<std::size_t>(n)] = b[static_cast<std::size_t>(r)];
    m.push_back(detail::scale_to_integers(row));
  }
  auto piv = detail::bareiss_echelon(m, n);
  const int rank = static_cast<int>(piv.size());
  SolutionSet out;
  for (int r = rank; r < a.rows(); ++r)
    if (m[static_cast<std::size_t>(r)][static_cast<std::size_t>(n)] != 0) return out;

  // Back substitution to reduced echelon form over Q.
  std::vector<std::vector<Rational>> red(static_cast<std::size_t>(rank), std::vector<Rational>(static_cast<std::size_t>(n + 1)));
  for (int r = rank - 1; r >= 0; --r) {
    auto& row = red[static_cast<std::size_t>(r)];
    const Integer& lead = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(piv[static_cast<std::size_t>(r)])];
    for (int c = 0; c <= n; ++c) {
      row[static_cast<std::size_t>(c)] = Rational(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)], lead);
      row[static_cast<std::size_t>(c)].canonicalize();
    }
    for (int q = r + 1; q < rank; ++q) {
      const int pc = piv[static_cast<std::size_t>(q)];
      Rational f = row[static_cast<std::size_t>(pc)];
      if (f == 0) continue;
      const auto& lower = red[static_cast<std::size_t>(q)];
      for (int c = pc; c <= n; ++c) row[static_cast<std::size_t>(c)] -= f * lower[static_cast<std::size_t>(c)];
    }
  }
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (int c : piv) is_pivot[static_cast<std::size_t>(c)] = true;

  std::vector<Rational> x(static_cast<std::size_t>(n));
  for (int r = 0; r < rank; ++r) x[static_cast<std::size_t>(piv[static_cast<std::size_t>(r)])] = red[static_cast<std::size_t>(r)][static_cast<std::size_t>(n)];
  out.particular = std::move(x);
  for (int f = 0; f < n; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    std::vector<Rational> v(static_cast<std::size_t>(n));
    v[static_cast<std::size_t>(f)] = 1;
    for (int r = 0; r < rank; ++r) v[static_cast<std::size_t>(piv[static_cast<std::size_t>(r)])] = -red[static_cast<std::size_t>(r)][static_cast<std::size_t>(f)];
    out.nullspace_basis.push_back(std::move(v));
  }
  return out;
}

/// Basis of {x : A x = 0}.
inline std::vector<std::vector<Rational>> nullspace(const RatMatrix& a) {
  return solve_linear_system(a, std::vector<Rational>(static_cast<std::size_t>(a.rows()))).nullspace_basis;
}

// ---------------------------------------------------------------------------
// Sparse incremental elimination

/// Sorted (column, value) pairs with no explicit zeros.
using SparseRow = std::vector<std::pair<int, Rational>>;

namespace detail {
/// a - f * b, both sorted.
inline SparseRow axpy(const SparseRow& a, const Rational& f, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -f * b[j].second);
      ++j;
    } else {
      Rational v = a[i].second - f * b[j].second;
      if (v != 0) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}
}  // namespace detail

/// Affine description of every variable in terms of the free columns:
/// x_v = constant[v] + sum_f coeff[v][f] * x_f.
struct ParametrizedSolution {
  int num_vars = 0;
  std::vector<int> free_vars;              ///< sorted variable ids left free
  std::vector<Rational> constant;          ///< per variable
  std::vector<SparseRow> coeff;            ///< per variable, keyed by position in free_vars

  std::vector<Rational> evaluate(const std::vector<Rational>& params) const {
    std::vector<Rational> x(static_cast<std::size_t>(num_vars));
    for (int v = 0; v < num_vars; ++v) {
      Rational acc = constant[static_cast<std::size_t>(v)];
      for (const auto& [f, c] : coeff[static_cast<std::size_t>(v)]) acc += c * params[static_cast<std::size_t>(f)];
      x[static_cast<std::size_t>(v)] = std::move(acc);
    }
    return x;
  }

  SolutionSet to_solution_set() const {
    SolutionSet s;
    s.particular = constant;
    for (std::size_t f = 0; f < free_vars.size(); ++f) {
      std::vector<Rational> v(static_cast<std::size_t>(num_vars));
      for (int var = 0; var < num_vars; ++var)
        for (const auto& [ff, c] : coeff[static_cast<std::size_t>(var)])
          if (ff == static_cast<int>(f)) v[static_cast<std::size_t>(var)] = c;
      s.nullspace_basis.push_back(std::move(v));
    }
    return s;
  }
};

class SparseEliminator {
 public:
  explicit SparseEliminator(int num_vars) : num_vars_(num_vars) {}

  int num_vars() const { return num_vars_; }
  int rank() const { return static_cast<int>(pivots_.size()); }
  bool consistent() const { return consistent_; }

  /// Adds the equation row . x = rhs. Returns true when it raised the rank.
  bool add_row(SparseRow row, Rational rhs = 0) {
    while (!row.empty()) {
      const int c = row.front().first;
      auto it = pivots_.find(c);
      if (it == pivots_.end()) {
        Rational lead = row.front().second;
        for (auto& [col, v] : row) v /= lead;
        rhs /= lead;
        pivots_.emplace(c, Pivot{std::move(row), std::move(rhs)});
        return true;
      }
      Rational f = row.front().second;
      row = detail::axpy(row, f, it->second.row);
      rhs -= f * it->second.rhs;
    }
    if (rhs != 0) consistent_ = false;
    return false;
  }

  /// Reduced echelon form, parametrized by free columns. Empty when inconsistent.
  std::optional<ParametrizedSolution> solve() const {
    if (!consistent_) return std::nullopt;
    std::map<int, Pivot> red;
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      SparseRow row = it->second.row;
      Rational rhs = it->second.rhs;
      // Eliminate later pivot columns, always using fully reduced rows.
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t i = 1; i < row.size(); ++i) {
          auto rit = red.find(row[i].first);
          if (rit == red.end()) continue;
          Rational f = row[i].second;
          row = detail::axpy(row, f, rit->second.row);
          rhs -= f * rit->second.rhs;
          changed = true;
          break;
        }
      }
      red.emplace(it->first, Pivot{std::move(row), std::move(rhs)});
    }
    ParametrizedSolution sol;
    sol.num_vars = num_vars_;
    std::vector<int> free_pos(static_cast<std::size_t>(num_vars_), -1);
    for (int v = 0; v < num_vars_; ++v)
      if (!red.count(v)) {
        free_pos[static_cast<std::size_t>(v)] = static_cast<int>(sol.free_vars.size());
        sol.free_vars.push_back(v);
      }
    sol.constant.assign(static_cast<std::size_t>(num_vars_), Rational(0));
    sol.coeff.assign(static_cast<std::size_t>(num_vars_), SparseRow{});
    for (int v = 0; v < num_vars_; ++v) {
      if (free_pos[static_cast<std::size_t>(v)] >= 0) {
        sol.coeff[static_cast<std::size_t>(v)].emplace_back(free_pos[static_cast<std::size_t>(v)], Rational(1));
        continue;
      }
      const auto& p = red.at(v);
      sol.constant[static_cast<std::size_t>(v)] = p.rhs;
      for (std::size_t i = 1; i < p.row.size(); ++i)
        sol.coeff[static_cast<std::size_t>(v)].emplace_back(free_pos[static_cast<std::size_t>(p.row[i].first)], -p.row[i].second);
      std::sort(sol.coeff[static_cast<std::size_t>(v)].begin(), sol.coeff[static_cast<std::size_t>(v)].end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    return sol;
  }

 private:
  struct Pivot {
    SparseRow row;
    Rational rhs;
  };
  int num_vars_;
  bool consistent_ = true;
  std::map<int, Pivot> pivots_;
};

}  // namespace densop
