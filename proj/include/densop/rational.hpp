/**
 * @file  rational.hpp
 * @brief Exact rational scalars (GMP-backed) and their text form.
 */
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace densop {

/// Arbitrary-precision fraction, always canonical (lowest terms, den > 0).
using Rational = mpq_class;
using Integer = mpz_class;

/// Error raised by every public operation of the library.
///
/// `kind()` is a short machine-readable tag ("shape", "resonant",
/// "invalid-arity", "parse", ...) used by the CLI to build reasons.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw Error("parse", "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// "p/q", or "n" when the denominator is 1.
inline std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Parses "n", "-n", "p/q"; whitespace is not accepted.
inline Rational parse_rational(std::string_view text) {
  auto valid_int = [](std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto strip_plus = [](std::string_view s) {
    return std::string(!s.empty() && s[0] == '+' ? s.substr(1) : s);
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!valid_int(text))
      throw Error("parse", "malformed rational '" + std::string(text) + "'");
    return Rational(Integer(strip_plus(text)));
  }
  auto num = text.substr(0, slash);
  auto den = text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-')
    throw Error("parse", "malformed rational '" + std::string(text) + "'");
  Integer d(strip_plus(den));
  if (d == 0) throw Error("parse", "zero denominator in '" + std::string(text) + "'");
  Rational r(Integer(strip_plus(num)), d);
  r.canonicalize();
  return r;
}

/// Comma-separated list of rationals, e.g. "1/2,3".
inline std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    out.push_back(parse_rational(text.substr(start, comma == std::string_view::npos
                                                        ? std::string_view::npos
                                                        : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

/// C(n, k) as a rational; zero outside 0 <= k <= n.
inline Rational binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return Rational(0);
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}

inline Integer factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

}  // namespace densop
