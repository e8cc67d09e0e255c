// densop command-line front end.
#include "densop/densop.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

using namespace densop;

namespace {

enum Exit { ok = 0, verification_failed = 1, bad_input = 2 };

struct RunConfig {
  std::uint64_t seed = 0x5eed;
  int samples = 64;
  std::string format = "json";
  std::string dump_system;
};

void emit(const Json& j, const RunConfig& cfg) {
  if (cfg.format == "table")
    write_table(j, std::cout);
  else
    std::cout << j.dump(2) << '\n';
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("parse", "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error("parse", "'" + path + "' is not valid JSON: " + e.what());
  }
}

void dump_system(const MapAnsatz& a, const std::vector<VectorField>& fields, const RunConfig& cfg) {
  if (cfg.dump_system.empty()) return;
  std::ofstream out(cfg.dump_system);
  if (!out) throw Error("parse", "cannot write '" + cfg.dump_system + "'");
  write_system_jsonl(assemble_system(a, fields), out);
}

DecisionOptions decision_options(const RunConfig& cfg) {
  DecisionOptions o;
  o.seed = cfg.seed;
  o.samples = cfg.samples;
  return o;
}

struct TableArgs {
  std::optional<int> m, k;
  std::string lambda, mu, blocks, input;
  bool resonant_check = false;
};

struct TableParams {
  int m = 0, k = 0;
  std::vector<Rational> lambda;
  Rational mu;
  std::optional<std::vector<RatMatrix>> blocks;
};

TableParams table_params(const TableArgs& a, const std::optional<MOperator>& op) {
  TableParams p;
  if (op) {
    p.m = op->m;
    p.k = op->k;
    p.lambda = op->lambda;
    p.mu = op->mu;
  }
  if (a.m) p.m = *a.m;
  if (a.k) p.k = *a.k;
  if (!a.lambda.empty()) p.lambda = parse_rational_list(a.lambda);
  if (!a.mu.empty()) p.mu = parse_rational(a.mu);
  if (!op && (!a.m || !a.k || a.lambda.empty() || a.mu.empty()))
    throw Error("parse", "--m, --k, --lambda and --mu are required");
  if (p.m < 1 || p.k < 0) throw Error("shape", "need m >= 1 and k >= 0");
  if (static_cast<int>(p.lambda.size()) != p.m) throw Error("shape", "--lambda needs exactly m entries");
  if (op && (op->m != p.m || op->k != p.k || op->lambda != p.lambda || op->mu != p.mu))
    throw Error("shape", "operator file disagrees with the command-line parameters");
  if (!a.blocks.empty()) p.blocks = blocks_from_json(read_json_file(a.blocks));
  return p;
}

/// Resonance report plus the existence verdict at a resonant shift.
Json resonant_check(const TableParams& p, const RunConfig& cfg) {
  const Rational d = shift_of(p.lambda, p.mu);
  Json out{{"resonance", to_json(resonance_report(p.k, d))}};
  if (resonance_set(p.k).count(d))
    out["resonant_exists"] = to_json(resonant_quantization_exists(p.lambda, d, p.k, p.m, decision_options(cfg)));
  return out;
}

int cmd_symbol(const TableArgs& a, const RunConfig& cfg) {
  std::optional<MOperator> op;
  if (!a.input.empty()) op = moperator_from_json(read_json_file(a.input));
  const auto p = table_params(a, op);
  if (a.resonant_check && resonance_set(p.k).count(shift_of(p.lambda, p.mu))) {
    emit(resonant_check(p, cfg), cfg);
    return ok;
  }
  const auto t = p.blocks ? symbol_alpha(p.lambda, p.mu, p.k, *p.blocks) : symbol_alpha(p.lambda, p.mu, p.k);
  if (!op) {
    emit(to_json(t), cfg);
  } else {
    emit(Json{{"table", to_json(t)}, {"symbol", to_json(apply_symbol(t, *op))}}, cfg);
  }
  return ok;
}

int cmd_quantize(const TableArgs& a, const RunConfig& cfg) {
  std::optional<SymbolVector> sym;
  if (!a.input.empty()) sym = symbol_vector_from_json(read_json_file(a.input));
  const auto p = table_params(a, std::nullopt);
  if (a.resonant_check && resonance_set(p.k).count(shift_of(p.lambda, p.mu))) {
    emit(resonant_check(p, cfg), cfg);
    return ok;
  }
  const auto t = p.blocks ? quantize_beta(p.lambda, p.mu, p.k, *p.blocks) : quantize_beta(p.lambda, p.mu, p.k);
  if (!sym) {
    emit(to_json(t), cfg);
  } else {
    if (sym->m != p.m || sym->k != p.k || sym->delta != t.delta())
      throw Error("shape", "symbol file disagrees with the command-line parameters");
    emit(Json{{"table", to_json(t)}, {"operator", to_json(apply_quantization(t, *sym))}}, cfg);
  }
  return ok;
}

struct VerifyArgs {
  std::string suite;
  int m = 2, k = 2, cases = 20;
  std::string lambda, mu;
};

int cmd_verify(const VerifyArgs& a, const RunConfig& cfg) {
  VerifyOptions o;
  o.m = a.m;
  o.k = a.k;
  o.cases = a.cases;
  o.seed = cfg.seed;
  if (o.m < 1 || o.k < 0 || o.cases < 0) throw Error("shape", "need m >= 1, k >= 0, cases >= 0");
  if (!a.lambda.empty()) o.lambda = parse_rational_list(a.lambda);
  if (!a.mu.empty()) o.mu = parse_rational(a.mu);
  const auto report = run_verify_suite(a.suite, o);
  emit(report.to_json(), cfg);
  return report.passed() ? ok : verification_failed;
}

struct ClassifyArgs {
  std::string what;
  std::optional<int> m, k;
  std::string delta, lambda, mu, src, dst;
};

int require_k(const ClassifyArgs& a) {
  if (!a.k) throw Error("parse", "--k is required");
  if (*a.k < 0) throw Error("shape", "need k >= 0");
  return *a.k;
}

std::vector<Rational> require_lambda(const ClassifyArgs& a) {
  if (a.lambda.empty()) throw Error("parse", "--lambda is required");
  auto l = parse_rational_list(a.lambda);
  if (a.m && static_cast<int>(l.size()) != *a.m) throw Error("shape", "--lambda needs exactly m entries");
  return l;
}

/// --delta, or the shift of --lambda/--mu.
Rational require_delta(const ClassifyArgs& a, const std::vector<Rational>& lambda) {
  if (!a.delta.empty() && !a.mu.empty()) throw Error("parse", "give either --delta or --mu, not both");
  if (!a.delta.empty()) return parse_rational(a.delta);
  if (!a.mu.empty()) return shift_of(lambda, parse_rational(a.mu));
  throw Error("parse", "--delta or --mu is required");
}

int verdict_exit(bool verified_or_no) { return verified_or_no ? ok : verification_failed; }

int cmd_classify(const ClassifyArgs& a, const RunConfig& cfg) {
  const auto opt = decision_options(cfg);
  if (a.what == "resonance") {
    if (a.delta.empty()) throw Error("parse", "--delta is required");
    emit(to_json(resonance_report(require_k(a), parse_rational(a.delta))), cfg);
    return ok;
  }
  if (a.what == "singular") {
    ModuleParams p;
    if (!a.src.empty()) {
      p = ModuleParams::parse(a.src, 2);
    } else {
      p.lambda = require_lambda(a);
      if (a.mu.empty()) throw Error("parse", "--mu or --src is required");
      p.mu = parse_rational(a.mu);
      p.m = static_cast<int>(p.lambda.size());
      p.k = 2;
    }
    const bool singular = is_singular_second_order(p);
    emit(Json{{"module", p.to_string()},
              {"k", 2},
              {"delta", to_json(p.delta())},
              {"singular", singular},
              {"obstruction", to_json(obstruction_vector(p))}},
         cfg);
    return ok;
  }
  if (a.what == "iso") {
    const int k = require_k(a);
    if (a.src.empty() || a.dst.empty()) throw Error("parse", "--src and --dst are required");
    const auto src = ModuleParams::parse(a.src, k), dst = ModuleParams::parse(a.dst, k);
    if (!cfg.dump_system.empty() && src.m == dst.m) {
      auto ansatz = MapAnsatz::general(src.space(), dst.space());
      dump_system(ansatz, monomial_fields(k + 3), cfg);
    }
    IsoResult r = k <= 2 ? iso_search(src, dst, opt) : iso_search_unrestricted(src, dst, opt);
    Json out = to_json(r);
    if (k > 2) out["status"] = "unclassified research output";
    emit(out, cfg);
    return verdict_exit(r.exists != Existence::yes || r.verified);
  }
  if (a.what == "vect-principal" || a.what == "resonant-exists") {
    const int k = require_k(a);
    const auto lambda = require_lambda(a);
    const int m = a.m ? *a.m : static_cast<int>(lambda.size());
    const Rational delta = require_delta(a, lambda);
    const bool vect = a.what == "vect-principal";
    ExistenceVerdict v = vect ? vect_equivariant_principal_symbol(lambda, delta, k, m, opt)
                              : resonant_quantization_exists(lambda, delta, k, m, opt);
    if (!cfg.dump_system.empty()) {
      const Rational mu = delta - shift_of(lambda, Rational(0));
      auto ansatz = MapAnsatz::general(CoefficientSpace::symbols(m, k, delta), CoefficientSpace::operators(lambda, mu, k));
      dump_system(ansatz, vect ? monomial_fields(k + 3) : sl2_fields(), cfg);
    }
    emit(to_json(v), cfg);
    return verdict_exit(v.exists != Existence::yes || v.verified);
  }
  throw Error("parse", "unknown classify query '" + a.what + "'");
}

int fail(const Error& e) {
  Json out{{"error", e.what()}, {"reason", e.kind()}};
  std::cout << out.dump(2) << '\n';
  std::cerr << "densop: " << e.what() << '\n';
  return e.kind() == "internal" ? verification_failed : bad_input;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with multilinear differential operators on weighted densities"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "seed for sampling (DENSOP_SEED overrides)");
  app.add_option("--samples", cfg.samples, "random samples in existence decisions")->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "table"}));

  TableArgs sym_args, quant_args;
  auto add_table_opts = [](CLI::App* sub, TableArgs& t) {
    sub->add_option("--m", t.m, "number of arguments");
    sub->add_option("--k", t.k, "order");
    sub->add_option("--lambda", t.lambda, "input weights, comma separated");
    sub->add_option("--mu", t.mu, "output weight");
    sub->add_option("--blocks", t.blocks, "JSON file with principal blocks");
    sub->add_flag("--resonant-check", t.resonant_check, "report resonance and existence instead of failing");
  };
  auto* symbol = app.add_subcommand("symbol", "symbol coefficient table");
  add_table_opts(symbol, sym_args);
  symbol->add_option("--operator", sym_args.input, "JSON operator to map to its symbol");
  auto* quantize = app.add_subcommand("quantize", "quantization coefficient table");
  add_table_opts(quantize, quant_args);
  quantize->add_option("--symbol", quant_args.input, "JSON symbol vector to quantize");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "seeded property suite");
  verify->add_option("suite", ver.suite, "suite name")->required();
  verify->add_option("--m", ver.m);
  verify->add_option("--k", ver.k);
  verify->add_option("--cases", ver.cases);
  verify->add_option("--lambda", ver.lambda);
  verify->add_option("--mu", ver.mu);

  ClassifyArgs cls;
  auto* classify = app.add_subcommand("classify", "resonance, singularity, isomorphism and existence queries");
  classify->add_option("query", cls.what, "resonance | singular | iso | vect-principal | resonant-exists")->required();
  classify->add_option("--m", cls.m);
  classify->add_option("--k", cls.k);
  classify->add_option("--delta", cls.delta);
  classify->add_option("--lambda", cls.lambda);
  classify->add_option("--mu", cls.mu);
  classify->add_option("--src", cls.src, "source module 'l1,l2:mu'");
  classify->add_option("--dst", cls.dst, "target module 'l1,l2:mu'");
  classify->add_option("--dump-system", cfg.dump_system, "write the assembled linear system as JSON lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return bad_input;
  }

  if (const char* env = std::getenv("DENSOP_SEED")) {
    try {
      cfg.seed = std::stoull(env, nullptr, 0);
    } catch (const std::exception&) {
      std::cerr << "densop: DENSOP_SEED is not an integer\n";
      return bad_input;
    }
  }

  try {
    if (*symbol) return cmd_symbol(sym_args, cfg);
    if (*quantize) return cmd_quantize(quant_args, cfg);
    if (*verify) return cmd_verify(ver, cfg);
    return cmd_classify(cls, cfg);
  } catch (const Error& e) {
    return fail(e);
  }
}
