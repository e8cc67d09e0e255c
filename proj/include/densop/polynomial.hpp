/**
 * @file  polynomial.hpp
 * @brief Univariate polynomials in x with rational coefficients.
 */
#pragma once

#include "densop/rational.hpp"

#include <initializer_list>
#include <ostream>
#include <vector>

namespace densop {

class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Rational& c) : coeffs_{c} { normalize(); }  // NOLINT(implicit)
  Polynomial(std::initializer_list<Rational> cs) : coeffs_(cs) { normalize(); }
  explicit Polynomial(std::vector<Rational> cs) : coeffs_(std::move(cs)) { normalize(); }

  static Polynomial monomial(const Rational& c, int degree) {
    std::vector<Rational> cs(static_cast<std::size_t>(degree) + 1);
    cs.back() = c;
    return Polynomial(std::move(cs));
  }
  static Polynomial x() { return monomial(1, 1); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  Rational operator[](int i) const {
    return (i >= 0 && i <= degree()) ? coeffs_[static_cast<std::size_t>(i)] : Rational(0);
  }

  Rational evaluate(const Rational& at) const {
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
    return acc;
  }

  Polynomial derivative(int times = 1) const {
    if (times <= 0) return *this;
    if (degree() < times) return {};
    std::vector<Rational> out(coeffs_.size() - static_cast<std::size_t>(times));
    for (std::size_t i = 0; i < out.size(); ++i) {
      Integer falling = 1;
      for (int t = 0; t < times; ++t) falling *= static_cast<unsigned long>(i + static_cast<std::size_t>(times) - static_cast<std::size_t>(t));
      out[i] = coeffs_[i + static_cast<std::size_t>(times)] * Rational(falling);
    }
    return Polynomial(std::move(out));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    normalize();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    normalize();
    return *this;
  }
  Polynomial& operator*=(const Rational& s) {
    if (s == 0) {
      coeffs_.clear();
      return *this;
    }
    for (auto& c : coeffs_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(out));
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
      const auto& c = p.coeffs_[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      if (!first) os << (c > 0 ? " + " : " - ");
      else if (c < 0) os << "-";
      Rational mag = abs(c);
      if (mag != 1 || i == 0) os << to_string(mag);
      if (i > 0) os << (mag != 1 ? "*x" : "x");
      if (i > 1) os << "^" << i;
      first = false;
    }
    return os;
  }

 private:
  void normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

}  // namespace densop
