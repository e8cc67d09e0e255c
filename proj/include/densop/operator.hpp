/**
 * @file  operator.hpp
 * @brief m-ary differential operators F_{l_1} x ... x F_{l_m} -> F_mu.
 *
 * A(phi_1,...,phi_m) = sum_i a_i(x) * d^{i_1}phi_1 * ... * d^{i_m}phi_m
 *
 * The coefficient type is a template parameter: Polynomial for concrete
 * operators, DiffRow for "generic" operators whose coefficients are the
 * jets of the components of some coefficient space.
 */
#pragma once

#include "densop/density.hpp"
#include "densop/diff_map.hpp"
#include "densop/multi_index.hpp"

#include <map>
#include <numeric>
#include <vector>

namespace densop {

template <class Coeff>
struct BasicOperator {
  int m = 1;
  int k = 0;
  std::vector<Rational> lambda;  ///< input weights, one per argument
  Rational mu;                   ///< output weight
  std::map<MultiIndex, Coeff> coeffs;

  BasicOperator() = default;
  BasicOperator(int arity, int order, std::vector<Rational> in_weights, Rational out_weight)
      : m(arity), k(order), lambda(std::move(in_weights)), mu(std::move(out_weight)) {
    if (m <= 0) throw Error("invalid-arity", "operator arity must be at least 1");
    if (static_cast<int>(lambda.size()) != m) throw Error("shape", "need one input weight per argument");
  }

  /// delta = mu - sum(lambda)
  Rational shift() const {
    Rational s = mu;
    for (const auto& l : lambda) s -= l;
    return s;
  }

  Coeff coefficient(const MultiIndex& i) const {
    auto it = coeffs.find(i);
    return it == coeffs.end() ? Coeff{} : it->second;
  }

  void set(const MultiIndex& i, Coeff c) {
    if (i.arity() != m || !i.valid() || i.degree() > k)
      throw Error("shape", "coefficient index " + i.to_string() + " outside order/arity");
    if (c.is_zero())
      coeffs.erase(i);
    else
      coeffs[i] = std::move(c);
  }

  void add(const MultiIndex& i, const Coeff& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = coeffs.try_emplace(i, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) coeffs.erase(it);
    }
  }

  bool same_module(const BasicOperator& o) const {
    return m == o.m && k == o.k && lambda == o.lambda && mu == o.mu;
  }

  friend bool operator==(const BasicOperator&, const BasicOperator&) = default;
};

using MOperator = BasicOperator<Polynomial>;
using GenericOperator = BasicOperator<DiffRow>;

/// The operator whose coefficient a_i is the jet of component i of `space`.
inline GenericOperator generic_operator(const IndexSpace& space, std::vector<Rational> lambda, Rational mu) {
  GenericOperator g(space.arity(), space.max_degree(), std::move(lambda), std::move(mu));
  for (int c = 0; c < space.size(); ++c) g.coeffs.emplace(space.at(c), DiffRow::jet(c));
  return g;
}

/// A(phi_1,...,phi_m) for concrete polynomial densities.
inline Polynomial apply_operator(const MOperator& a, const std::vector<Polynomial>& phis) {
  if (static_cast<int>(phis.size()) != a.m) throw Error("shape", "wrong number of arguments");
  Polynomial acc;
  for (const auto& [idx, c] : a.coeffs) {
    Polynomial term = c;
    for (int j = 0; j < a.m; ++j) term *= phis[static_cast<std::size_t>(j)].derivative(idx[j]);
    acc += term;
  }
  return acc;
}

/// Coefficients of a concrete operator as a vector over an index space.
inline std::vector<Polynomial> coefficient_vector(const MOperator& a, const IndexSpace& space) {
  std::vector<Polynomial> out(static_cast<std::size_t>(space.size()));
  for (const auto& [idx, c] : a.coeffs) out[static_cast<std::size_t>(space.position(idx))] = c;
  return out;
}

inline MOperator operator_from_vector(const IndexSpace& space, const std::vector<Polynomial>& v,
                                      std::vector<Rational> lambda, Rational mu) {
  MOperator a(space.arity(), space.max_degree(), std::move(lambda), std::move(mu));
  for (int c = 0; c < space.size(); ++c) a.set(space.at(c), v[static_cast<std::size_t>(c)]);
  return a;
}

}  // namespace densop
