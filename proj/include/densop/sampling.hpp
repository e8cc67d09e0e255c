/**
 * @file  sampling.hpp
 * @brief Seeded random test objects: small rationals, polynomials, vector
 *        fields, weights and operators.
 */
#pragma once

#include "densop/operator.hpp"
#include "densop/symbol.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace densop {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  /// Uniform in [lo, hi].
  long integer(long lo, long hi) {
    return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  Rational rational(long num_bound = 6, long den_bound = 5) {
    return make_rational(integer(-num_bound, num_bound), integer(1, den_bound));
  }

  Polynomial polynomial(int max_degree) {
    std::vector<Rational> c;
    for (int d = 0; d <= max_degree; ++d) c.push_back(rational());
    return Polynomial(std::move(c));
  }

  VectorField field(int max_degree) { return {polynomial(max_degree)}; }

  std::vector<Rational> weights(int m) {
    std::vector<Rational> w;
    for (int j = 0; j < m; ++j) w.push_back(rational());
    return w;
  }

  /// An output weight whose shift avoids the resonant values of order k.
  Rational nonresonant_mu(const std::vector<Rational>& lambda, int k) {
    const auto res = resonance_set(k);
    while (true) {
      Rational mu = rational(8, 6);
      if (!res.count(shift_of(lambda, mu))) return mu;
    }
  }

  MOperator op(int m, int k, const std::vector<Rational>& lambda, const Rational& mu, int coeff_degree) {
    MOperator a(m, k, lambda, mu);
    const IndexSpace space(m, k);
    for (const auto& idx : space.indices()) a.set(idx, polynomial(coeff_degree));
    return a;
  }

  SymbolVector symbol(int m, int k, const Rational& delta, int coeff_degree) {
    SymbolVector v{m, k, delta, {}};
    const IndexSpace space(m, k);
    for (const auto& idx : space.indices()) {
      auto p = polynomial(coeff_degree);
      if (!p.is_zero()) v.components[idx] = p;
    }
    return v;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace densop
