/**
 * @file  equivariance.hpp
 * @brief Equivariance defects of block-structured maps and the linear
 *        systems they generate.
 *
 * A map T between two coefficient spaces sends source component s to
 * target component t through c_{t,s} * d^{|s|-|t|}, with constant c_{t,s}.
 * Its defect against a vector field X is
 *
 *     R(X) = act_target(X) o T - T o act_source(X).
 *
 * R is affine in the coefficients, so requiring R(X) = 0 for a family of
 * fields is a linear system in the unknown c_{t,s}. Existence questions
 * then ask whether that solution set meets the locus where every diagonal
 * block [c]_p (|s| = |t| = p) is nonsingular.
 */
#pragma once

#include "densop/action.hpp"
#include "densop/linalg.hpp"
#include "densop/symbol.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

namespace densop {

// ---------------------------------------------------------------------------
// Coefficient spaces

enum class SpaceKind { operators, symbols, skew_operators };

namespace detail {
/// Sorts idx into strictly decreasing order; returns the permutation sign,
/// or 0 when two entries coincide.
inline int skew_sort(MultiIndex& idx) {
  int inversions = 0;
  for (int a = 0; a < idx.arity(); ++a)
    for (int b = a + 1; b < idx.arity(); ++b) {
      if (idx[a] == idx[b]) return 0;
      if (idx[a] < idx[b]) ++inversions;
    }
  std::sort(idx.parts.begin(), idx.parts.end(), std::greater<>());
  return inversions % 2 ? -1 : 1;
}
}  // namespace detail

/// Full operator whose coefficients are determined by the strictly
/// decreasing ones through skew symmetry: a_{sigma(i)} = sign(sigma) a_i.
inline GenericOperator skew_generic_operator(const IndexSpace& skew, const Rational& lambda, const Rational& mu) {
  const int m = skew.arity(), k = skew.max_degree();
  GenericOperator g(m, k, std::vector<Rational>(static_cast<std::size_t>(m), lambda), mu);
  const IndexSpace full(m, k);
  for (const auto& idx : full.indices()) {
    MultiIndex sorted = idx;
    const int sign = detail::skew_sort(sorted);
    if (sign == 0) continue;
    const int pos = skew.find(sorted);
    if (pos < 0) continue;
    g.coeffs.emplace(idx, DiffRow::jet(pos) * Rational(sign));
  }
  return g;
}

/// Skew-symmetrization sum_sigma sign(sigma) A(phi_sigma(1), ...) of a concrete operator.
inline MOperator skew_symmetrize(const MOperator& a) {
  MOperator out(a.m, a.k, a.lambda, a.mu);
  for (const auto& [idx, c] : a.coeffs) {
    std::vector<int> perm(static_cast<std::size_t>(a.m));
    for (int j = 0; j < a.m; ++j) perm[static_cast<std::size_t>(j)] = j;
    do {
      MultiIndex moved = MultiIndex::zero(a.m);
      int inversions = 0;
      for (int j = 0; j < a.m; ++j) {
        moved[perm[static_cast<std::size_t>(j)]] = idx[j];
        for (int l = j + 1; l < a.m; ++l)
          if (perm[static_cast<std::size_t>(j)] > perm[static_cast<std::size_t>(l)]) ++inversions;
      }
      out.add(moved, inversions % 2 ? Rational(-1) * c : c);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

struct CoefficientSpace {
  SpaceKind kind = SpaceKind::operators;
  IndexSpace index;
  std::vector<Rational> lambda;  ///< operator input weights (empty for symbols)
  Rational mu;                   ///< operator output weight
  Rational delta;                ///< shift; symbol component i has weight delta - |i|

  static CoefficientSpace operators(std::vector<Rational> lambda, Rational mu, int k) {
    const int m = static_cast<int>(lambda.size());
    const Rational d = shift_of(lambda, mu);
    return {SpaceKind::operators, IndexSpace(m, k), std::move(lambda), std::move(mu), d};
  }
  static CoefficientSpace symbols(IndexSpace index, Rational delta) {
    return {SpaceKind::symbols, std::move(index), {}, Rational(0), std::move(delta)};
  }
  static CoefficientSpace symbols(int m, int k, Rational delta) { return symbols(IndexSpace(m, k), std::move(delta)); }
  static CoefficientSpace skew_operators(const Rational& lambda, Rational mu, int k, int m) {
    std::vector<Rational> l(static_cast<std::size_t>(m), lambda);
    const Rational d = shift_of(l, mu);
    return {SpaceKind::skew_operators, skew_index_space(m, k), std::move(l), std::move(mu), d};
  }

  int size() const { return index.size(); }
  int grade(int pos) const { return index.degree_of(pos); }

  std::vector<Rational> weights() const {
    std::vector<Rational> w;
    for (int c = 0; c < size(); ++c) w.push_back(delta - grade(c));
    return w;
  }

  DiffMatrix action(const VectorField& x) const {
    switch (kind) {
      case SpaceKind::operators: return operator_action_matrix(x, index, lambda, mu, true);
      case SpaceKind::symbols: return density_action_matrix(x, weights());
      case SpaceKind::skew_operators: {
        auto ax = act_closed(x, skew_generic_operator(index, lambda.front(), mu));
        DiffMatrix out;
        out.source_size = size();
        out.rows.resize(static_cast<std::size_t>(size()));
        for (int c = 0; c < size(); ++c) out.rows[static_cast<std::size_t>(c)] = ax.coefficient(index.at(c));
        return out;
      }
    }
    throw Error("internal", "unknown space kind");
  }

  friend bool operator==(const CoefficientSpace&, const CoefficientSpace&) = default;
};

// ---------------------------------------------------------------------------
// Map ansatz

struct AnsatzEntry {
  int target = 0;
  int source = 0;
  int order = 0;                 ///< |source| - |target|
  std::optional<Rational> value;  ///< known coefficient
  int unknown = -1;              ///< id when not known
};

class MapAnsatz {
 public:
  CoefficientSpace source, target;
  std::vector<AnsatzEntry> entries;
  std::vector<std::string> unknown_labels;  ///< "s|t" with canonical multi-index strings

  MapAnsatz() = default;

  /// Every admissible coefficient unknown; `sources` restricts the columns.
  static MapAnsatz general(const CoefficientSpace& source, const CoefficientSpace& target,
                           std::optional<std::vector<int>> sources = std::nullopt) {
    MapAnsatz a;
    a.source = source;
    a.target = target;
    std::vector<int> cols;
    if (sources) {
      cols = *sources;
    } else {
      for (int s = 0; s < source.size(); ++s) cols.push_back(s);
    }
    for (int s : cols)
      for (int t = 0; t < target.size(); ++t) {
        const int order = source.grade(s) - target.grade(t);
        if (order < 0) continue;
        a.entries.push_back({t, s, order, std::nullopt, static_cast<int>(a.unknown_labels.size())});
        a.unknown_labels.push_back(source.index.at(s).to_string() + "|" + target.index.at(t).to_string());
      }
    return a;
  }

  /// Fully known map with coefficients values(target, source).
  static MapAnsatz known(const CoefficientSpace& source, const CoefficientSpace& target, const RatMatrix& values) {
    if (values.rows() != target.size() || values.cols() != source.size())
      throw Error("shape", "coefficient matrix does not match the spaces");
    MapAnsatz a;
    a.source = source;
    a.target = target;
    for (int s = 0; s < source.size(); ++s)
      for (int t = 0; t < target.size(); ++t) {
        const int order = source.grade(s) - target.grade(t);
        if (order < 0 || values(t, s) == 0) continue;
        a.entries.push_back({t, s, order, values(t, s), -1});
      }
    return a;
  }

  static MapAnsatz from_table(const CoeffTable& t, const CoefficientSpace& source, const CoefficientSpace& target) {
    return known(source, target, t.entries);
  }

  int num_unknowns() const { return static_cast<int>(unknown_labels.size()); }

  /// Turns the given unknowns into known values and renumbers the rest.
  MapAnsatz fixed(const std::map<int, Rational>& values) const {
    MapAnsatz a = *this;
    a.unknown_labels.clear();
    std::vector<int> renumber(static_cast<std::size_t>(num_unknowns()), -1);
    for (int u = 0; u < num_unknowns(); ++u)
      if (!values.count(u)) {
        renumber[static_cast<std::size_t>(u)] = static_cast<int>(a.unknown_labels.size());
        a.unknown_labels.push_back(unknown_labels[static_cast<std::size_t>(u)]);
      }
    for (auto& e : a.entries) {
      if (e.value) continue;
      if (auto it = values.find(e.unknown); it != values.end()) {
        e.value = it->second;
        e.unknown = -1;
      } else {
        e.unknown = renumber[static_cast<std::size_t>(e.unknown)];
      }
    }
    return a;
  }

  /// Unknown id of entry (target, source), or -1.
  int unknown_at(int target_pos, int source_pos) const {
    for (const auto& e : entries)
      if (e.target == target_pos && e.source == source_pos) return e.unknown;
    return -1;
  }

  /// Coefficient matrix (target x source) with unknowns set to `values`.
  RatMatrix coefficients(const std::vector<Rational>& values = {}) const {
    if (static_cast<int>(values.size()) < num_unknowns()) throw Error("shape", "missing values for ansatz unknowns");
    RatMatrix out(target.size(), source.size());
    for (const auto& e : entries) out(e.target, e.source) = e.value ? *e.value : values[static_cast<std::size_t>(e.unknown)];
    return out;
  }

  DiffMatrix matrix(const std::vector<Rational>& values = {}) const {
    const RatMatrix c = coefficients(values);
    DiffMatrix out;
    out.source_size = source.size();
    out.rows.resize(static_cast<std::size_t>(target.size()));
    for (const auto& e : entries)
      if (c(e.target, e.source) != 0) out.rows[static_cast<std::size_t>(e.target)].add(e.source, e.order, Polynomial(c(e.target, e.source)));
    return out;
  }

  /// Degrees p at which both spaces have a (square) diagonal block.
  std::vector<int> block_degrees() const {
    std::vector<int> out;
    const int lo = std::max(source.index.min_degree(), target.index.min_degree());
    const int hi = std::min(source.index.max_degree(), target.index.max_degree());
    for (int p = lo; p <= hi; ++p)
      if (source.index.block_size(p) == target.index.block_size(p) && source.index.block_size(p) > 0) out.push_back(p);
    return out;
  }

  /// Diagonal block [c]_p, rows target, columns source.
  RatMatrix block(const RatMatrix& coeffs, int p) const {
    const int tb = target.index.block_begin(p), sb = source.index.block_begin(p), n = target.index.block_size(p);
    RatMatrix out(n, source.index.block_size(p));
    for (int r = 0; r < out.rows(); ++r)
      for (int c = 0; c < out.cols(); ++c) out(r, c) = coeffs(tb + r, sb + c);
    return out;
  }
};

/// act_target(X) o T - T o act_source(X) for a map T given as a DiffMatrix.
inline DiffMatrix residual(const DiffMatrix& t, const CoefficientSpace& source, const CoefficientSpace& target,
                           const VectorField& x) {
  if (t.source_size != source.size() || t.target_size() != target.size())
    throw Error("shape", "map does not match its source and target spaces");
  return compose(target.action(x), t) - compose(t, source.action(x));
}

inline DiffMatrix residual(const MapAnsatz& a, const VectorField& x, const std::vector<Rational>& values = {}) {
  if (a.num_unknowns() > static_cast<int>(values.size()))
    throw Error("shape", "residual needs every ansatz coefficient to be known");
  return residual(a.matrix(values), a.source, a.target, x);
}

// ---------------------------------------------------------------------------
// Linear systems

struct RowProvenance {
  std::string field;  ///< label of the vector field
  int field_index = 0;
  MultiIndex target;  ///< residual row
  MultiIndex source;  ///< residual column
  int order = 0;      ///< derivative order on the source component
  int power = 0;      ///< power of x
};

struct EquivarianceSystem {
  std::vector<std::string> unknowns;
  std::vector<SparseRow> rows;
  std::vector<Rational> rhs;
  std::vector<RowProvenance> provenance;

  int num_unknowns() const { return static_cast<int>(unknowns.size()); }

  RatMatrix matrix() const {
    RatMatrix out(static_cast<int>(rows.size()), num_unknowns());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (const auto& [c, v] : rows[r]) out(static_cast<int>(r), c) = v;
    return out;
  }

  std::optional<ParametrizedSolution> solve() const {
    SparseEliminator elim(num_unknowns());
    for (std::size_t r = 0; r < rows.size(); ++r) elim.add_row(rows[r], rhs[r]);
    return elim.solve();
  }
};

/// Coefficient of every monomial x^e * a_c^{(o)} in row r of every residual,
/// as a linear equation in the ansatz unknowns. Rows are ordered by
/// (field, target, source, order, power).
inline EquivarianceSystem assemble_system(const MapAnsatz& a, const std::vector<VectorField>& fields) {
  using Key = std::tuple<int, int, int, int, int>;
  std::map<Key, std::pair<std::map<int, Rational>, Rational>> eqs;
  auto put = [&](const Key& key, const AnsatzEntry& e, const Rational& v) {
    auto& eq = eqs[key];
    if (e.value) {
      eq.second -= v * *e.value;
    } else {
      auto [it, inserted] = eq.first.try_emplace(e.unknown, v);
      if (!inserted) it->second += v;
    }
  };

  for (int f = 0; f < static_cast<int>(fields.size()); ++f) {
    const DiffMatrix at = a.target.action(fields[static_cast<std::size_t>(f)]);
    const DiffMatrix as = a.source.action(fields[static_cast<std::size_t>(f)]);
    struct ColTerm {
      int row, order;
      const Polynomial* p;
    };
    std::vector<std::vector<ColTerm>> column(static_cast<std::size_t>(a.target.size()));
    for (int r = 0; r < at.target_size(); ++r)
      for (const auto& [key, p] : at.rows[static_cast<std::size_t>(r)].terms())
        column[static_cast<std::size_t>(key.first)].push_back({r, key.second, &p});
    std::vector<std::vector<DiffRow>> derived(static_cast<std::size_t>(a.source.size()));
    auto deriv = [&](int s, int n) -> const DiffRow& {
      auto& cache = derived[static_cast<std::size_t>(s)];
      while (static_cast<int>(cache.size()) <= n)
        cache.push_back(cache.empty() ? as.rows[static_cast<std::size_t>(s)] : cache.back().derivative());
      return cache[static_cast<std::size_t>(n)];
    };

    for (const auto& e : a.entries) {
      if (e.value && *e.value == 0) continue;
      for (const auto& ct : column[static_cast<std::size_t>(e.target)])
        for (int pw = 0; pw <= ct.p->degree(); ++pw)
          if ((*ct.p)[pw] != 0) put(Key{f, ct.row, e.source, e.order + ct.order, pw}, e, (*ct.p)[pw]);
      for (const auto& [key, p] : deriv(e.source, e.order).terms())
        for (int pw = 0; pw <= p.degree(); ++pw)
          if (p[pw] != 0) put(Key{f, e.target, key.first, key.second, pw}, e, -p[pw]);
    }
  }

  EquivarianceSystem sys;
  sys.unknowns = a.unknown_labels;
  for (auto& [key, eq] : eqs) {
    SparseRow row;
    for (auto& [u, v] : eq.first)
      if (v != 0) row.emplace_back(u, std::move(v));
    if (row.empty() && eq.second == 0) continue;
    const auto& [f, t, s, o, pw] = key;
    sys.rows.push_back(std::move(row));
    sys.rhs.push_back(std::move(eq.second));
    sys.provenance.push_back({fields[static_cast<std::size_t>(f)].label(), f, a.target.index.at(t), a.source.index.at(s), o, pw});
  }
  return sys;
}

// ---------------------------------------------------------------------------
// Existence of solutions with nonsingular diagonal blocks

enum class Existence { yes, no, probable_no };

inline std::string to_string(Existence e) {
  switch (e) {
    case Existence::yes: return "yes";
    case Existence::no: return "no";
    case Existence::probable_no: return "probable_no";
  }
  return "?";
}

struct ExistenceVerdict {
  Existence exists = Existence::no;
  std::optional<std::vector<Rational>> witness;  ///< values of the ansatz unknowns
  std::vector<std::string> certificate;          ///< reasons a "no" is certain
  std::string note;
  int free_parameters = 0;  ///< dimension of the solution set
  bool verified = false;    ///< witness re-checked through the residual
  std::vector<std::string> unknowns;
  RatMatrix coefficients;   ///< witness map (target x source) when exists
};

/// One diagonal block as an affine matrix function of the free parameters:
/// B(theta) = base + sum_f theta_f * slopes[f].
struct BlockPencil {
  int degree = 0;
  RatMatrix base;
  std::map<int, RatMatrix> slopes;

  RatMatrix at(const std::vector<Rational>& theta) const {
    RatMatrix out = base;
    for (const auto& [f, s] : slopes)
      for (int r = 0; r < out.rows(); ++r)
        for (int c = 0; c < out.cols(); ++c) out(r, c) += theta[static_cast<std::size_t>(f)] * s(r, c);
    return out;
  }
};

inline std::vector<BlockPencil> block_pencils(const MapAnsatz& a, const ParametrizedSolution& sol) {
  std::vector<BlockPencil> out;
  for (int p : a.block_degrees()) {
    const int tb = a.target.index.block_begin(p), sb = a.source.index.block_begin(p);
    const int n = a.target.index.block_size(p);
    BlockPencil bp{p, RatMatrix(n, n), {}};
    for (const auto& e : a.entries) {
      const int r = e.target - tb, c = e.source - sb;
      if (r < 0 || r >= n || c < 0 || c >= n || a.target.grade(e.target) != p) continue;
      if (e.value) {
        bp.base(r, c) = *e.value;
        continue;
      }
      bp.base(r, c) = sol.constant[static_cast<std::size_t>(e.unknown)];
      for (const auto& [f, v] : sol.coeff[static_cast<std::size_t>(e.unknown)]) {
        auto it = bp.slopes.try_emplace(f, RatMatrix(n, n)).first;
        it->second(r, c) = v;
      }
    }
    out.push_back(std::move(bp));
  }
  return out;
}

namespace detail {

inline std::string vector_string(const std::vector<Rational>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

/// Vectors w with w^T B(theta) = 0 (left) or B(theta) w = 0 (right) for every theta.
inline std::vector<std::vector<Rational>> common_kernel(const BlockPencil& bp, bool left) {
  const int n = bp.base.rows();
  std::vector<const RatMatrix*> parts{&bp.base};
  for (const auto& [f, s] : bp.slopes) parts.push_back(&s);
  const int count = static_cast<int>(parts.size());
  RatMatrix stacked(n * count, n);
  for (int b = 0; b < count; ++b)
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) stacked(b * n + r, c) = left ? (*parts[static_cast<std::size_t>(b)])(c, r) : (*parts[static_cast<std::size_t>(b)])(r, c);
  return nullspace(stacked);
}

inline Rational random_rational(std::mt19937_64& rng) {
  constexpr std::uint64_t bound = 1000000;
  const long num = static_cast<long>(rng() % (2 * bound + 1)) - static_cast<long>(bound);
  const long den = static_cast<long>(rng() % bound) + 1;
  return make_rational(num, den);
}

inline bool all_nonsingular(const std::vector<BlockPencil>& pencils, const std::vector<Rational>& theta) {
  for (const auto& bp : pencils)
    if (determinant(bp.at(theta)) == 0) return false;
  return true;
}

/// Exact identity test for det B(theta) on the grid {0..n}^F over the
/// parameters the block depends on. Empty when the grid is too large.
inline std::optional<bool> determinant_vanishes_identically(const BlockPencil& bp, int num_params, long max_points) {
  const int n = bp.base.rows();
  std::vector<int> vars;
  for (const auto& [f, s] : bp.slopes) vars.push_back(f);
  long points = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    points *= n + 1;
    if (points > max_points) return std::nullopt;
  }
  std::vector<Rational> theta(static_cast<std::size_t>(num_params));
  std::vector<int> digit(vars.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < vars.size(); ++i) theta[static_cast<std::size_t>(vars[i])] = digit[i];
    if (determinant(bp.at(theta)) != 0) return false;
    std::size_t i = 0;
    while (i < digit.size() && ++digit[i] > n) digit[i++] = 0;
    if (i == digit.size()) break;
  }
  return true;
}

}  // namespace detail

struct DecisionOptions {
  std::uint64_t seed = 0x5eedULL;
  int samples = 64;
  long max_grid_points = 20000;
};

struct BlockDecision {
  Existence exists = Existence::no;
  std::vector<Rational> theta;
  std::vector<std::string> certificate;
  std::string note;
};

/// Does some parameter point make every block nonsingular?
inline BlockDecision decide_nonsingular(const std::vector<BlockPencil>& pencils, int num_params,
                                        const DecisionOptions& opt = {}) {
  BlockDecision d;
  for (const auto& bp : pencils)
    for (bool left : {true, false}) {
      auto ker = detail::common_kernel(bp, left);
      if (ker.empty()) continue;
      d.certificate.push_back("block " + std::to_string(bp.degree) + ": " + (left ? "left" : "right") +
                              " kernel vector " + detail::vector_string(ker.front()) + " is common to every solution");
    }
  if (!d.certificate.empty()) return d;

  std::vector<Rational> theta(static_cast<std::size_t>(num_params));
  for (int probe = 0; probe < 2; ++probe) {
    for (int f = 0; f < num_params; ++f) theta[static_cast<std::size_t>(f)] = probe == 0 ? Rational(1) : Rational(f + 1);
    if (detail::all_nonsingular(pencils, theta)) {
      d.exists = Existence::yes;
      d.theta = theta;
      return d;
    }
  }
  std::mt19937_64 rng(opt.seed);
  for (int i = 0; i < opt.samples; ++i) {
    for (auto& t : theta) t = detail::random_rational(rng);
    if (detail::all_nonsingular(pencils, theta)) {
      d.exists = Existence::yes;
      d.theta = theta;
      return d;
    }
  }
  bool undecided = false;
  for (const auto& bp : pencils) {
    auto zero = detail::determinant_vanishes_identically(bp, num_params, opt.max_grid_points);
    if (!zero) {
      undecided = true;
      continue;
    }
    if (*zero) {
      d.certificate.push_back("block " + std::to_string(bp.degree) + ": determinant vanishes identically (exact grid test)");
      return d;
    }
  }
  d.exists = Existence::probable_no;
  d.note = undecided ? "every sample had a singular block; grid identity test too large"
                     : "every sample had a singular block; no single determinant vanishes identically";
  return d;
}

inline bool witness_is_valid(const MapAnsatz& a, const std::vector<Rational>& values, const std::vector<VectorField>& fields) {
  for (const auto& x : fields)
    if (!residual(a, x, values).is_zero()) return false;
  const RatMatrix c = a.coefficients(values);
  for (int p : a.block_degrees())
    if (determinant(a.block(c, p)) == 0) return false;
  return true;
}

/// Full decision for an ansatz with a parametrized solution set.
inline ExistenceVerdict decide_from_solution(const MapAnsatz& a, const std::optional<ParametrizedSolution>& sol,
                                             const std::vector<VectorField>& fields, const DecisionOptions& opt = {}) {
  ExistenceVerdict v;
  v.unknowns = a.unknown_labels;
  if (!sol) {
    v.exists = Existence::no;
    v.certificate.push_back("the equivariance system is inconsistent");
    return v;
  }
  v.free_parameters = static_cast<int>(sol->free_vars.size());
  auto pencils = block_pencils(a, *sol);
  auto d = decide_nonsingular(pencils, v.free_parameters, opt);
  v.exists = d.exists;
  v.certificate = d.certificate;
  v.note = d.note;
  if (d.exists == Existence::yes) {
    v.witness = sol->evaluate(d.theta);
    v.verified = witness_is_valid(a, *v.witness, fields);
    v.coefficients = a.coefficients(*v.witness);
    if (!v.verified) throw Error("internal", "witness failed the residual re-check");
  }
  return v;
}

inline ExistenceVerdict decide_existence(const MapAnsatz& a, const std::vector<VectorField>& fields,
                                         const DecisionOptions& opt = {}) {
  return decide_from_solution(a, assemble_system(a, fields).solve(), fields, opt);
}

// ---------------------------------------------------------------------------
// Maps out of a symbol space

/// Symbol components transform independently and only through their grade,
/// so the equations for column s of a map S -> W depend on s only through
/// |s|. Solves one representative column per grade and replicates it with
/// independent parameters.
inline std::pair<MapAnsatz, std::optional<ParametrizedSolution>> solve_by_columns(const CoefficientSpace& source,
                                                                                  const CoefficientSpace& target,
                                                                                  const std::vector<VectorField>& fields) {
  if (source.kind != SpaceKind::symbols) throw Error("shape", "column reduction needs a symbol source space");
  MapAnsatz full = MapAnsatz::general(source, target);
  std::map<int, int> rep;  // grade -> representative column
  for (int s = 0; s < source.size(); ++s) rep.try_emplace(source.grade(s), s);
  std::vector<int> reps;
  for (const auto& [g, s] : rep) reps.push_back(s);
  MapAnsatz reduced = MapAnsatz::general(source, target, reps);
  auto rsol = assemble_system(reduced, fields).solve();
  if (!rsol) return {full, std::nullopt};

  std::map<std::pair<int, int>, int> reduced_id;  // (representative column, target) -> reduced unknown
  std::map<int, std::pair<int, int>> reduced_entry;  // reduced unknown -> (column, target)
  for (const auto& e : reduced.entries) {
    reduced_id[{e.source, e.target}] = e.unknown;
    reduced_entry[e.unknown] = {e.source, e.target};
  }

  ParametrizedSolution sol;
  sol.num_vars = full.num_unknowns();
  sol.constant.assign(static_cast<std::size_t>(sol.num_vars), Rational(0));
  sol.coeff.assign(static_cast<std::size_t>(sol.num_vars), SparseRow{});
  std::vector<std::map<int, int>> column_params(static_cast<std::size_t>(source.size()));  // reduced param -> full param
  for (int s = 0; s < source.size(); ++s)
    for (std::size_t f = 0; f < rsol->free_vars.size(); ++f) {
      const auto [col, t] = reduced_entry.at(rsol->free_vars[f]);
      if (col != rep.at(source.grade(s))) continue;
      column_params[static_cast<std::size_t>(s)][static_cast<int>(f)] = static_cast<int>(sol.free_vars.size());
      sol.free_vars.push_back(full.unknown_at(t, s));
    }
  for (const auto& e : full.entries) {
    const int ru = reduced_id.at({rep.at(source.grade(e.source)), e.target});
    sol.constant[static_cast<std::size_t>(e.unknown)] = rsol->constant[static_cast<std::size_t>(ru)];
    SparseRow row;
    for (const auto& [f, c] : rsol->coeff[static_cast<std::size_t>(ru)])
      row.emplace_back(column_params[static_cast<std::size_t>(e.source)].at(f), c);
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    sol.coeff[static_cast<std::size_t>(e.unknown)] = std::move(row);
  }
  return {full, sol};
}

/// sl(2)-equivariant maps S_delta -> D^k with nonsingular blocks at a resonant shift.
inline ExistenceVerdict resonant_quantization_exists(const std::vector<Rational>& lambda, const Rational& delta, int k,
                                                     int m, const DecisionOptions& opt = {}) {
  if (static_cast<int>(lambda.size()) != m) throw Error("shape", "need one weight per argument");
  if (!resonance_set(k).count(delta))
    throw Error("precondition", "delta=" + to_string(delta) + " is not resonant for k=" + std::to_string(k) + "; use quantize_beta");
  const Rational mu = delta - shift_of(lambda, Rational(0));
  auto src = CoefficientSpace::symbols(m, k, delta);
  auto tgt = CoefficientSpace::operators(lambda, mu, k);
  auto [ansatz, sol] = solve_by_columns(src, tgt, sl2_fields());
  return decide_from_solution(ansatz, sol, sl2_fields(), opt);
}

/// Principal blocks making the quantization map Vect-equivariant.
inline ExistenceVerdict vect_equivariant_principal_symbol(const std::vector<Rational>& lambda, const Rational& delta,
                                                          int k, int m, const DecisionOptions& opt = {}) {
  if (static_cast<int>(lambda.size()) != m) throw Error("shape", "need one weight per argument");
  if (resonance_set(k).count(delta))
    throw Error("precondition", "delta=" + to_string(delta) + " is resonant for k=" + std::to_string(k));
  const Rational mu = delta - shift_of(lambda, Rational(0));
  auto src = CoefficientSpace::symbols(m, k, delta);
  auto tgt = CoefficientSpace::operators(lambda, mu, k);
  const auto fields = monomial_fields(k + 3);
  auto [ansatz, sol] = solve_by_columns(src, tgt, fields);
  return decide_from_solution(ansatz, sol, fields, opt);
}

}  // namespace densop
