/**
 * @file  classify.hpp
 * @brief Module parameters, the shift invariant, permutation and
 *        conjugation, the second-order obstruction vector and the
 *        isomorphism search between modules of operators of order <= 2.
 */
#pragma once

#include "densop/equivariance.hpp"

#include <map>
#include <string>
#include <vector>

namespace densop {

struct ModuleParams {
  int m = 1;
  int k = 0;
  std::vector<Rational> lambda;
  Rational mu;

  Rational delta() const { return shift_of(lambda, mu); }
  CoefficientSpace space() const { return CoefficientSpace::operators(lambda, mu, k); }

  /// "l1,l2,...:mu"
  static ModuleParams parse(const std::string& text, int k) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw Error("parse", "module parameters must look like 'l1,l2:mu'");
    ModuleParams p;
    p.lambda = parse_rational_list(text.substr(0, colon));
    p.mu = parse_rational(text.substr(colon + 1));
    p.m = static_cast<int>(p.lambda.size());
    p.k = k;
    return p;
  }
  std::string to_string() const {
    std::string s;
    for (std::size_t j = 0; j < lambda.size(); ++j) s += (j ? "," : "") + densop::to_string(lambda[j]);
    return s + ":" + densop::to_string(mu);
  }

  friend bool operator==(const ModuleParams&, const ModuleParams&) = default;
};

inline Rational shift(const ModuleParams& p) { return p.delta(); }

/// Interchanges arguments i and j (1-based).
inline MOperator permute(const MOperator& a, int i, int j) {
  if (i < 1 || j < 1 || i > a.m || j > a.m || i == j) throw Error("index", "permute needs 1 <= i != j <= m");
  auto swap_slots = [&](auto v) {
    std::swap(v[static_cast<std::size_t>(i - 1)], v[static_cast<std::size_t>(j - 1)]);
    return v;
  };
  MOperator out(a.m, a.k, swap_slots(a.lambda), a.mu);
  for (const auto& [idx, c] : a.coeffs) out.coeffs.emplace(MultiIndex(swap_slots(idx.parts)), c);
  return out;
}

/// Adjoint under integration by parts in the first argument:
/// A*(phi_2,...,phi_m,phi) = sum_i (-1)^{i_1} d^{i_1}(a_i d^{i_2}phi_2 ... d^{i_m}phi_m phi).
inline MOperator conjugate(const MOperator& a) {
  const int m = a.m;
  std::vector<Rational> lambda(a.lambda.begin() + 1, a.lambda.end());
  lambda.push_back(1 - a.mu);
  MOperator out(m, a.k, std::move(lambda), 1 - a.lambda.front());
  // Distribute d^{n} over m+1 factors: a, phi_2..phi_m, phi.
  std::vector<int> split(static_cast<std::size_t>(m) + 1);
  for (const auto& [idx, c] : a.coeffs) {
    const int n = idx[0];
    const Rational sign = n % 2 ? Rational(-1) : Rational(1);
    auto rec = [&](auto&& self, int slot, int remaining, Integer multinomial) -> void {
      if (slot == m) {
        split[static_cast<std::size_t>(m)] = remaining;
        MultiIndex target = MultiIndex::zero(m);
        for (int l = 1; l < m; ++l) target[l - 1] = idx[l] + split[static_cast<std::size_t>(l)];
        target[m - 1] = remaining;
        out.add(target, (sign * Rational(multinomial)) * c.derivative(split[0]));
        return;
      }
      for (int r = 0; r <= remaining; ++r) {
        split[static_cast<std::size_t>(slot)] = r;
        Integer next = multinomial;
        mpz_class b;
        mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(remaining), static_cast<unsigned long>(r));
        next *= b;
        self(self, slot + 1, remaining - r, next);
      }
    };
    rec(rec, 0, n, Integer(1));
  }
  return out;
}

inline ModuleParams conjugate(const ModuleParams& p) {
  ModuleParams out = p;
  out.lambda.assign(p.lambda.begin() + 1, p.lambda.end());
  out.lambda.push_back(1 - p.mu);
  out.mu = 1 - p.lambda.front();
  return out;
}

struct ObstructionVector {
  std::vector<MultiIndex> index;  ///< degree-2 multi-indices, canonical order
  std::vector<Rational> values;

  bool is_zero() const {
    for (const auto& v : values)
      if (v != 0) return false;
    return true;
  }
};

/// X'''-defect of the degree-0 symbol component:
/// alpha_{2*1_s} = 2 l_s (1 - delta - l_s)/(2 delta - 3), alpha_{1_s+1_t} = -2 l_s l_t/(2 delta - 3).
inline ObstructionVector obstruction_vector(const ModuleParams& p) {
  const Rational d = p.delta();
  if (2 * d - 3 == 0) throw Error("resonant", "obstruction vector undefined at delta=3/2");
  ObstructionVector out;
  for (const auto& idx : enumerate_multi_indices(p.m, 2)) {
    std::vector<int> slots;
    for (int j = 0; j < p.m; ++j)
      for (int r = 0; r < idx[j]; ++r) slots.push_back(j);
    const Rational& ls = p.lambda[static_cast<std::size_t>(slots[0])];
    const Rational& lt = p.lambda[static_cast<std::size_t>(slots[1])];
    out.index.push_back(idx);
    out.values.push_back(slots[0] == slots[1] ? Rational(2 * ls * (1 - d - ls) / (2 * d - 3)) : Rational(-2 * ls * lt / (2 * d - 3)));
  }
  return out;
}

inline bool is_singular_second_order(const ModuleParams& p) {
  const Rational d = p.delta();
  if (d == 1 || 2 * d == 3 || d == 2)
    throw Error("precondition", "singularity test needs a non-resonant shift; delta=" + to_string(d));
  return obstruction_vector(p).is_zero();
}

// ---------------------------------------------------------------------------
// Isomorphism search

struct IsoResult {
  Existence exists = Existence::no;
  std::string reason;                              ///< "shift", "singular_pair", ...
  std::vector<RatMatrix> tau_blocks;               ///< [tau]_p, rows target, columns source
  std::map<std::string, Rational> derivative_terms;  ///< nonzero off-block entries, "s|i"
  int free_parameters = 0;
  std::string free_parameter_note;
  bool verified = false;
  std::vector<std::string> certificate;
  std::optional<bool> obstruction_agrees;  ///< generic second-order cross-check
  RatMatrix coefficients;                  ///< witness (target x source)
};

inline RatMatrix inverse(const RatMatrix& a) {
  const int n = a.rows();
  RatMatrix out(n, n);
  for (int c = 0; c < n; ++c) {
    std::vector<Rational> e(static_cast<std::size_t>(n));
    e[static_cast<std::size_t>(c)] = 1;
    auto s = solve_linear_system(a, e);
    if (!s.particular || !s.nullspace_basis.empty()) throw Error("shape", "matrix is singular");
    for (int r = 0; r < n; ++r) out(r, c) = (*s.particular)[static_cast<std::size_t>(r)];
  }
  return out;
}

/// Nonsingular M with M v = w: v and w completed to bases by the canonical
/// vectors other than their first nonzero position.
inline RatMatrix pivot_completion(const std::vector<Rational>& v, const std::vector<Rational>& w) {
  const int n = static_cast<int>(v.size());
  auto basis = [n](const std::vector<Rational>& u) {
    int p = 0;
    while (p < n && u[static_cast<std::size_t>(p)] == 0) ++p;
    if (p == n) throw Error("shape", "pivot completion of a zero vector");
    RatMatrix b(n, n);
    for (int r = 0; r < n; ++r) b(r, 0) = u[static_cast<std::size_t>(r)];
    int col = 1;
    for (int i = 0; i < n; ++i)
      if (i != p) b(i, col++) = 1;
    return b;
  };
  return basis(w) * inverse(basis(v));
}

namespace detail {

/// Checks a full coefficient matrix: residual zero on `fields`, blocks nonsingular.
inline bool iso_witness_valid(const ModuleParams& src, const ModuleParams& dst, const RatMatrix& c,
                              const std::vector<VectorField>& fields) {
  return witness_is_valid(MapAnsatz::known(src.space(), dst.space(), c), {}, fields);
}

inline void fill_iso_witness(IsoResult& r, const MapAnsatz& a, const RatMatrix& c) {
  r.coefficients = c;
  r.tau_blocks.clear();
  for (int p : a.block_degrees()) r.tau_blocks.push_back(a.block(c, p));
  r.derivative_terms.clear();
  for (const auto& e : a.entries)
    if (e.order > 0 && c(e.target, e.source) != 0)
      r.derivative_terms[a.source.index.at(e.source).to_string() + "|" + a.target.index.at(e.target).to_string()] =
          c(e.target, e.source);
}

}  // namespace detail

/// Isomorphism search without the order restriction (k > 2 is experimental).
inline IsoResult iso_search_unrestricted(const ModuleParams& src, const ModuleParams& dst, const DecisionOptions& opt = {}) {
  if (src.m != dst.m || src.k != dst.k) throw Error("shape", "modules must share arity and order");
  if (static_cast<int>(src.lambda.size()) != src.m || static_cast<int>(dst.lambda.size()) != dst.m)
    throw Error("shape", "need one weight per argument");
  IsoResult r;
  if (src.delta() != dst.delta()) {
    r.reason = "shift";
    r.certificate.push_back("shifts differ: " + to_string(src.delta()) + " vs " + to_string(dst.delta()));
    return r;
  }
  const int k = src.k;
  const Rational d = src.delta();
  const auto fields = monomial_fields(k + 3);
  const MapAnsatz ansatz = MapAnsatz::general(src.space(), dst.space());
  const auto sol = assemble_system(ansatz, fields).solve();
  if (!sol) {
    r.certificate.push_back("the equivariance system is inconsistent");
    return r;
  }
  r.free_parameters = static_cast<int>(sol->free_vars.size());
  r.free_parameter_note = std::to_string(r.free_parameters) + "-dimensional space of equivariant local maps";

  const bool generic2 = k == 2 && d != 1 && 2 * d != 3 && d != 2;
  std::optional<bool> singular_src, singular_dst;
  if (generic2) {
    singular_src = is_singular_second_order(src);
    singular_dst = is_singular_second_order(dst);
    if (*singular_src != *singular_dst) r.reason = "singular_pair";
  }

  // Deterministic representative: identity blocks, except that in the
  // generic second-order case [tau]_2 carries alpha(dst) to alpha(src).
  // Failing that, tau_0 = 1 and identity blocks below the top one, with
  // the top block decided on the remaining family.
  auto pins = [&](const std::optional<RatMatrix>& top) {
    std::map<int, Rational> fix;
    for (int p : ansatz.block_degrees()) {
      if (p == k && !top) continue;
      const RatMatrix b = p == k ? *top : RatMatrix::identity(src.space().index.block_size(p));
      const int tb = ansatz.target.index.block_begin(p), sb = ansatz.source.index.block_begin(p);
      for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) fix[ansatz.unknown_at(tb + i, sb + j)] = b(i, j);
    }
    return ansatz.fixed(fix);
  };
  std::vector<std::optional<RatMatrix>> candidates;
  if (generic2 && !*singular_src && !*singular_dst) {
    const auto as = obstruction_vector(src).values, ad = obstruction_vector(dst).values;
    candidates.emplace_back(pivot_completion(ad, as).transpose());
  } else {
    candidates.emplace_back(RatMatrix::identity(src.space().index.block_size(k)));
  }
  candidates.emplace_back(std::nullopt);
  for (const auto& top : candidates) {
    const MapAnsatz pinned = pins(top);
    const auto psol = assemble_system(pinned, fields).solve();
    if (!psol) continue;
    std::optional<RatMatrix> c;
    if (top) {
      c = pinned.coefficients(psol->evaluate(std::vector<Rational>(psol->free_vars.size())));
    } else {
      auto v = decide_from_solution(pinned, psol, fields, opt);
      if (v.exists == Existence::yes) c = v.coefficients;
    }
    if (!c) continue;
    if (!detail::iso_witness_valid(src, dst, *c, fields)) throw Error("internal", "isomorphism witness failed the re-check");
    r.exists = Existence::yes;
    r.verified = true;
    detail::fill_iso_witness(r, ansatz, *c);
    break;
  }
  if (r.exists != Existence::yes) {
    auto v = decide_from_solution(ansatz, sol, fields, opt);
    r.exists = v.exists;
    r.certificate = v.certificate;
    if (v.exists == Existence::yes) {
      r.verified = v.verified;
      detail::fill_iso_witness(r, ansatz, v.coefficients);
    } else if (!v.note.empty()) {
      r.free_parameter_note += "; " + v.note;
    }
  }
  if (generic2) r.obstruction_agrees = (r.exists == Existence::yes) == (*singular_src == *singular_dst);
  return r;
}

inline IsoResult iso_search(const ModuleParams& src, const ModuleParams& dst, const DecisionOptions& opt = {}) {
  if (src.k < 1 || src.k > 2) throw Error("not-implemented", "isomorphism classification covers orders 1 and 2 only");
  return iso_search_unrestricted(src, dst, opt);
}

}  // namespace densop
