/**
 * @file  density.hpp
 * @brief Polynomial vector fields f(x)d/dx and weighted densities a(x)(dx)^w.
 */
#pragma once

#include "densop/polynomial.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace densop {

struct VectorField {
  Polynomial coefficient;  ///< f in X = f(x) d/dx

  static VectorField monomial(int n) { return {Polynomial::monomial(1, n)}; }
  /// X^{(n)}, the n-th derivative of the coefficient.
  Polynomial derivative(int n = 1) const { return coefficient.derivative(n); }
  /// "x^2d", "xd", "d"
  std::string label() const {
    const auto& f = coefficient;
    if (f.degree() >= 0 && f == Polynomial::monomial(1, f.degree())) {
      if (f.degree() == 0) return "d";
      if (f.degree() == 1) return "xd";
      return "x^" + std::to_string(f.degree()) + "d";
    }
    std::ostringstream os;
    os << "(" << f << ")d";
    return os.str();
  }

  friend bool operator==(const VectorField&, const VectorField&) = default;
};

/// Standard sl(2) inside vector fields on the line: d, x d, x^2 d.
inline std::vector<VectorField> sl2_fields() {
  return {VectorField::monomial(0), VectorField::monomial(1), VectorField::monomial(2)};
}

/// x^n d for 0 <= n <= max_degree.
inline std::vector<VectorField> monomial_fields(int max_degree) {
  std::vector<VectorField> out;
  for (int n = 0; n <= max_degree; ++n) out.push_back(VectorField::monomial(n));
  return out;
}

struct Density {
  Polynomial coefficient;
  Rational weight;

  friend bool operator==(const Density&, const Density&) = default;
};

/// Coefficient of L_X^w(a): X(a) + w a div X.
inline Polynomial lie_derivative(const VectorField& x, const Polynomial& a, const Rational& w) {
  return x.coefficient * a.derivative() + w * (x.coefficient.derivative() * a);
}

inline Density lie_derivative_density(const VectorField& x, const Density& d) {
  return {lie_derivative(x, d.coefficient, d.weight), d.weight};
}

/// [X, Y] = (f g' - g f') d/dx
inline VectorField commutator(const VectorField& x, const VectorField& y) {
  const auto& f = x.coefficient;
  const auto& g = y.coefficient;
  return {f * g.derivative() - g * f.derivative()};
}

}  // namespace densop
