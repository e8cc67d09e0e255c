/**
 * @file  verify.hpp
 * @brief Seeded property suites behind `densop verify`.
 */
#pragma once

#include "densop/json_io.hpp"
#include "densop/sampling.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace densop {

struct VerifyOptions {
  int m = 2;
  int k = 2;
  int cases = 20;
  std::uint64_t seed = 1;
  std::optional<std::vector<Rational>> lambda;
  std::optional<Rational> mu;
};

struct VerifyReport {
  std::string suite;
  int cases = 0;
  int failures = 0;
  Json counterexample;  ///< first failing case

  bool passed() const { return failures == 0; }
  Json to_json() const {
    Json out{{"suite", suite}, {"cases", cases}, {"failures", failures}, {"passed", passed()}};
    if (!counterexample.is_null()) out["counterexample"] = counterexample;
    return out;
  }
};

namespace detail {

inline void record(VerifyReport& r, bool ok, const std::function<Json()>& dump) {
  ++r.cases;
  if (ok) return;
  if (r.failures++ == 0) r.counterexample = dump();
}

inline Json field_json(const VectorField& x) { return densop::to_json(x.coefficient); }

inline std::vector<Rational> weights_or_random(const VerifyOptions& o, Sampler& s) {
  if (o.lambda) {
    if (static_cast<int>(o.lambda->size()) != o.m) throw Error("shape", "need one weight per argument");
    return *o.lambda;
  }
  return s.weights(o.m);
}

}  // namespace detail

/// act_closed against act_direct on random operators and fields.
inline VerifyReport verify_action_oracle(const VerifyOptions& o) {
  VerifyReport r{"action-oracle", 0, 0, {}};
  Sampler s(o.seed);
  for (int c = 0; c < o.cases; ++c) {
    auto lambda = detail::weights_or_random(o, s);
    Rational mu = o.mu ? *o.mu : s.rational();
    auto a = s.op(o.m, o.k, lambda, mu, 3);
    auto x = s.field(5);
    const auto direct = act_direct(x, a);
    const auto closed = act_closed(x, a);
    detail::record(r, direct == closed, [&] {
      return Json{{"operator", to_json(a)}, {"field", detail::field_json(x)}, {"direct", to_json(direct)}, {"closed", to_json(closed)}};
    });
  }
  return r;
}

/// Both round trips through symbol and quantization tables.
inline VerifyReport verify_inverse(const VerifyOptions& o) {
  VerifyReport r{"inverse", 0, 0, {}};
  Sampler s(o.seed);
  for (int c = 0; c < o.cases; ++c) {
    auto lambda = detail::weights_or_random(o, s);
    Rational mu = o.mu ? *o.mu : s.nonresonant_mu(lambda, o.k);
    auto alpha = symbol_alpha(lambda, mu, o.k);
    auto beta = quantize_beta(lambda, mu, o.k);
    auto a = s.op(o.m, o.k, lambda, mu, 3);
    auto v = s.symbol(o.m, o.k, alpha.delta(), 3);
    const bool ok = apply_quantization(beta, apply_symbol(alpha, a)) == a && apply_symbol(alpha, apply_quantization(beta, v)) == v;
    detail::record(r, ok, [&] { return Json{{"operator", to_json(a)}, {"symbol", to_json(v)}}; });
  }
  return r;
}

/// sl(2)-equivariance of the symbol map, checked on operators.
inline VerifyReport verify_sl2(const VerifyOptions& o) {
  VerifyReport r{"sl2", 0, 0, {}};
  Sampler s(o.seed);
  for (int c = 0; c < o.cases; ++c) {
    auto lambda = detail::weights_or_random(o, s);
    Rational mu = o.mu ? *o.mu : s.nonresonant_mu(lambda, o.k);
    auto alpha = symbol_alpha(lambda, mu, o.k);
    auto a = s.op(o.m, o.k, lambda, mu, 3);
    const auto sym = apply_symbol(alpha, a);
    for (const auto& x : sl2_fields()) {
      const auto lhs = apply_symbol(alpha, act_direct(x, a));
      SymbolVector rhs{sym.m, sym.k, sym.delta, {}};
      for (const auto& [idx, comp] : sym.components) {
        auto p = lie_derivative(x, comp, sym.delta - idx.degree());
        if (!p.is_zero()) rhs.components[idx] = p;
      }
      detail::record(r, lhs == rhs, [&] {
        return Json{{"operator", to_json(a)}, {"field", x.label()}, {"symbol_of_action", to_json(lhs)}, {"action_on_symbol", to_json(rhs)}};
      });
    }
  }
  return r;
}

/// First and second order quantization tables against their closed forms.
inline VerifyReport verify_closed_forms(const VerifyOptions& o) {
  VerifyReport r{"closed-forms", 0, 0, {}};
  Sampler s(o.seed);
  for (int c = 0; c < o.cases; ++c) {
    auto lambda = detail::weights_or_random(o, s);
    Rational mu = o.mu ? *o.mu : s.nonresonant_mu(lambda, 2);
    const auto t = quantize_beta(lambda, mu, 2);
    const Rational d = t.delta();
    RatMatrix expected = RatMatrix::identity(t.space.size());
    auto unit = [&](int j) { return MultiIndex::unit(o.m, j); };
    auto set = [&](const MultiIndex& sup, const MultiIndex& sub, const Rational& v) {
      expected(t.space.position(sub), t.space.position(sup)) = v;
    };
    for (int j = 0; j < o.m; ++j) {
      const Rational& lj = lambda[static_cast<std::size_t>(j)];
      set(unit(j), MultiIndex::zero(o.m), lj / (1 - d));
      set(unit(j).raised(j), MultiIndex::zero(o.m), lj * (2 * lj + 1) / ((d - 2) * (2 * d - 3)));
      set(unit(j).raised(j), unit(j), (2 * lj + 1) / (2 - d));
      for (int i = 0; i < o.m; ++i) {
        if (i == j) continue;
        const Rational& li = lambda[static_cast<std::size_t>(i)];
        set(unit(i).raised(j), MultiIndex::zero(o.m), 2 * li * lj / ((d - 2) * (2 * d - 3)));
        set(unit(i).raised(j), unit(i), lj / (2 - d));
      }
    }
    detail::record(r, t.entries == expected, [&] { return Json{{"lambda", to_json(lambda)}, {"mu", to_json(mu)}, {"table", to_json(t)}}; });
  }
  return r;
}

/// c(X) = (phi -> X''' phi) satisfies c([X,Y]) = L_X c(Y) - L_Y c(X).
inline VerifyReport verify_cocycle(const VerifyOptions& o) {
  VerifyReport r{"cocycle", 0, 0, {}};
  Sampler s(o.seed);
  for (int c = 0; c < o.cases; ++c) {
    const Rational theta = s.rational();
    auto x = s.field(5), y = s.field(5);
    auto cmap = [&](const VectorField& f) {
      MOperator a(1, 0, {theta}, theta + 2);
      a.set(MultiIndex{0}, f.derivative(3));
      return a;
    };
    auto lhs = cmap(commutator(x, y));
    auto rhs = act_direct(x, cmap(y));
    for (const auto& [idx, co] : act_direct(y, cmap(x)).coeffs) rhs.add(idx, -co);
    detail::record(r, lhs == rhs, [&] {
      return Json{{"theta", to_json(theta)}, {"X", detail::field_json(x)}, {"Y", detail::field_json(y)}};
    });
  }
  return r;
}

inline const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names{"action-oracle", "inverse", "sl2", "closed-forms", "cocycle"};
  return names;
}

inline VerifyReport run_verify_suite(const std::string& name, const VerifyOptions& o) {
  if (name == "action-oracle") return verify_action_oracle(o);
  if (name == "inverse") return verify_inverse(o);
  if (name == "sl2") return verify_sl2(o);
  if (name == "closed-forms") return verify_closed_forms(o);
  if (name == "cocycle") return verify_cocycle(o);
  throw Error("parse", "unknown verification suite '" + name + "'");
}

}  // namespace densop
