/**
 * @file  action.hpp
 * @brief Action of vector fields on m-ary operators.
 *
 * act_direct computes  L_X^mu o A - sum_j A(..., L_X^{lambda_j}(-), ...)
 * by substituting the Lie derivative into every argument and expanding
 * with Leibniz; it is the reference. act_closed evaluates the closed-form
 * coefficient formula. Both work for any coefficient type (see
 * operator.hpp), so running them on a generic operator gives the action
 * as a DiffMatrix.
 */
#pragma once

#include "densop/operator.hpp"

#include <vector>

namespace densop {

namespace detail {
/// d^n (f phi' + w f' phi) as (derivative order of phi -> polynomial factor).
inline std::vector<std::map<int, Polynomial>> lie_derivative_jets(const VectorField& x, const Rational& w, int max_n) {
  std::vector<std::map<int, Polynomial>> out;
  std::map<int, Polynomial> cur;
  cur[1] = x.coefficient;
  if (auto p = w * x.derivative(); !p.is_zero()) cur[0] = p;
  for (int n = 0; n <= max_n; ++n) {
    out.push_back(cur);
    std::map<int, Polynomial> next;
    for (const auto& [r, g] : cur) {
      if (auto dg = g.derivative(); !dg.is_zero()) next[r] += dg;
      next[r + 1] += g;
    }
    cur = std::move(next);
  }
  return out;
}
}  // namespace detail

template <class Coeff>
BasicOperator<Coeff> act_direct(const VectorField& x, const BasicOperator<Coeff>& a) {
  const Polynomial& f = x.coefficient;
  const Polynomial df = f.derivative();
  BasicOperator<Coeff> out(a.m, a.k, a.lambda, a.mu);
  std::map<MultiIndex, Coeff> acc;
  auto add = [&](const MultiIndex& i, const Coeff& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = acc.try_emplace(i, c);
    if (!inserted) it->second += c;
  };

  // L_X^mu applied to the output: f * d/dx(A(phi)) + mu f' A(phi)
  for (const auto& [idx, c] : a.coeffs) {
    add(idx, f * c.derivative());
    add(idx, (a.mu * df) * c);
    for (int j = 0; j < a.m; ++j) add(idx.raised(j), f * c);
  }
  // A(..., L_X^{lambda_j} phi_j, ...)
  for (int j = 0; j < a.m; ++j) {
    const auto jets = detail::lie_derivative_jets(x, a.lambda[static_cast<std::size_t>(j)], a.k);
    for (const auto& [idx, c] : a.coeffs) {
      for (const auto& [r, g] : jets[static_cast<std::size_t>(idx[j])]) add(idx.with(j, r), Rational(-1) * (g * c));
    }
  }
  for (auto& [idx, c] : acc) {
    if (c.is_zero()) continue;
    if (idx.degree() > a.k) throw Error("internal", "top-order terms failed to cancel in the action");
    out.coeffs.emplace(idx, std::move(c));
  }
  return out;
}

template <class Coeff>
BasicOperator<Coeff> act_closed(const VectorField& x, const BasicOperator<Coeff>& a) {
  const Polynomial& f = x.coefficient;
  const Polynomial df = f.derivative();
  const Rational delta = a.shift();
  BasicOperator<Coeff> out(a.m, a.k, a.lambda, a.mu);
  const IndexSpace space(a.m, a.k);
  for (const auto& s : space.indices()) {
    const Coeff as = a.coefficient(s);
    Coeff res = f * as.derivative() + ((delta - s.degree()) * df) * as;  // L_X^{delta-|s|} a_s
    if (s.degree() == 0) {
      for (int j = 0; j < a.m; ++j)
        for (int i = 1; i <= a.k; ++i) {
          const Coeff ai = a.coefficient(MultiIndex::zero(a.m).with(j, i));
          if (ai.is_zero()) continue;
          res -= (a.lambda[static_cast<std::size_t>(j)] * x.derivative(i + 1)) * ai;
        }
    } else {
      for (int j = 0; j < a.m; ++j) {
        const int sj = s[j];
        for (int i = sj + 1; i <= a.k; ++i) {
          const Coeff ai = a.coefficient(s.with(j, i));
          if (ai.is_zero()) continue;
          const Rational w = binomial(i, i + 1 - sj) + a.lambda[static_cast<std::size_t>(j)] * binomial(i, i - sj);
          res -= (w * x.derivative(i + 1 - sj)) * ai;
        }
      }
    }
    if (!res.is_zero()) out.coeffs.emplace(s, std::move(res));
  }
  return out;
}

/// The action of X on the operator space (m, k, lambda, mu) as a DiffMatrix
/// over the canonical index space.
inline DiffMatrix operator_action_matrix(const VectorField& x, const IndexSpace& space,
                                         const std::vector<Rational>& lambda, const Rational& mu,
                                         bool closed_form = false) {
  auto g = generic_operator(space, lambda, mu);
  auto ax = closed_form ? act_closed(x, g) : act_direct(x, g);
  DiffMatrix out;
  out.source_size = space.size();
  out.rows.resize(static_cast<std::size_t>(space.size()));
  for (auto& [idx, row] : ax.coeffs) out.rows[static_cast<std::size_t>(space.position(idx))] = std::move(row);
  return out;
}

/// Component-wise density action: component c has weight weights[c].
inline DiffMatrix density_action_matrix(const VectorField& x, const std::vector<Rational>& weights) {
  DiffMatrix out;
  out.source_size = static_cast<int>(weights.size());
  const Polynomial df = x.derivative();
  for (int c = 0; c < out.source_size; ++c) {
    DiffRow r = DiffRow::jet(c, 1, x.coefficient);
    r += DiffRow::jet(c, 0, weights[static_cast<std::size_t>(c)] * df);
    out.rows.push_back(std::move(r));
  }
  return out;
}

}  // namespace densop
