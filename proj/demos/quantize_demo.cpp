// Second-order bilinear case: symbol map, quantization map, a round trip on
// a concrete operator, and a few classification queries.
#include "densop/densop.hpp"

#include <iostream>

using namespace densop;

int main() {
  const std::vector<Rational> lambda{Rational(1, 2), Rational(1, 3)};
  const Rational mu(5);
  const int k = 2;

  const auto alpha = symbol_alpha(lambda, mu, k);
  const auto beta = quantize_beta(lambda, mu, k);
  std::cout << "shift " << to_string(alpha.delta()) << "\n";
  std::cout << "symbol map\n" << to_json(alpha).dump(2) << "\n";

  Sampler s(1);
  const auto a = s.op(2, k, lambda, mu, 2);
  const auto sym = apply_symbol(alpha, a);
  std::cout << "round trip " << (apply_quantization(beta, sym) == a ? "ok" : "broken") << "\n";

  const auto r = resonant_quantization_exists({Rational(-1, 2), 0}, Rational(3, 2), 2, 2);
  std::cout << "resonant shift 3/2, weights (-1/2,0): " << to_string(r.exists) << "\n";

  const auto p = ModuleParams::parse("0,0:1/4", 2), q = ModuleParams::parse("1,1:9/4", 2);
  const auto iso = iso_search(p, q);
  std::cout << p.to_string() << " vs " << q.to_string() << ": " << to_string(iso.exists) << " (" << iso.reason << ")\n";
}
