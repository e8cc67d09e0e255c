#include "densop/densop.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + DENSOP_CLI + std::string(" ") + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

densop::Json json_of(const Run& r) { return densop::Json::parse(r.out); }

}  // namespace

TEST(Cli, SymbolTable) {
  const auto r = run("symbol --m 1 --k 1 --lambda 1 --mu 4");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json_of(r)["entries"]["1|0"], "1/2");
}

TEST(Cli, ResonantShiftIsBadInput) {
  const auto r = run("symbol --m 2 --k 2 --lambda 0,0 --mu 1");
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(json_of(r)["reason"], "resonant");
}

TEST(Cli, ResonantCheckReportsInstead) {
  const auto r = run("symbol --m 2 --k 2 --lambda 0,0 --mu 1 --resonant-check");
  ASSERT_EQ(r.code, 0);
  const auto j = json_of(r);
  EXPECT_EQ(j["resonance"]["is_resonant"], true);
  EXPECT_EQ(j["resonant_exists"]["exists"], "yes");
}

TEST(Cli, QuantizeFirstOrder) {
  const auto r = run("quantize --m 2 --k 1 --lambda 1,2 --mu 7");
  ASSERT_EQ(r.code, 0);
  const auto j = json_of(r);
  EXPECT_EQ(j["entries"]["1,0|0,0"], "-1/3");
  EXPECT_EQ(j["entries"]["0,1|0,0"], "-2/3");
}

TEST(Cli, SymbolOfOperatorFileThenQuantizeBack) {
  const std::string op_path = testing::TempDir() + "densop_op.json";
  const std::string sym_path = testing::TempDir() + "densop_sym.json";
  densop::Sampler s(5);
  const auto a = s.op(2, 2, {densop::Rational(1, 2), densop::Rational(1, 3)}, densop::Rational(5), 2);
  std::ofstream(op_path) << densop::to_json(a).dump();
  const auto r = run("symbol --operator " + op_path);
  ASSERT_EQ(r.code, 0);
  std::ofstream(sym_path) << json_of(r)["symbol"].dump();
  const auto q = run("quantize --m 2 --k 2 --lambda 1/2,1/3 --mu 5 --symbol " + sym_path);
  ASSERT_EQ(q.code, 0);
  EXPECT_EQ(densop::moperator_from_json(json_of(q)["operator"]), a);
}

TEST(Cli, VerifySuites) {
  EXPECT_EQ(run("verify action-oracle --m 2 --k 3 --cases 100 --seed 7").code, 0);
  EXPECT_EQ(run("verify inverse --m 3 --k 2 --cases 50").code, 0);
  EXPECT_EQ(run("verify sl2 --m 2 --k 2 --lambda 1/2,1/3 --mu 5").code, 0);
  EXPECT_EQ(run("verify cocycle --cases 5").code, 0);
  EXPECT_EQ(run("verify closed-forms --m 3 --cases 5").code, 0);
  EXPECT_EQ(run("verify nope").code, 2);
}

TEST(Cli, ClassifyExamples) {
  auto r = run("classify resonant-exists --delta 3/2 --lambda -1/2,0 --k 2 --m 2");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json_of(r)["exists"], "yes");
  r = run("classify vect-principal --k 3 --m 2 --lambda 1/3,1/7 --mu 2");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json_of(r)["exists"], "no");
  r = run("classify iso --k 2 --src 0,0:1/4 --dst 1,1:9/4");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json_of(r)["exists"], "no");
  EXPECT_EQ(json_of(r)["reason"], "singular_pair");
}

TEST(Cli, ClassifyOtherQueries) {
  auto r = run("classify resonance --k 3 --delta 5/2");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json_of(r)["is_resonant"], true);
  r = run("classify singular --src 0,3/4:1");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json_of(r)["singular"], true);
  r = run("classify iso --k 3 --src 0,0:5 --dst 0,0:5");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json_of(r)["status"], "unclassified research output");
}

TEST(Cli, BadInputExitsTwo) {
  EXPECT_EQ(run("symbol --m 2 --k 2 --lambda 1/0,1 --mu 1").code, 2);
  EXPECT_EQ(run("symbol --m 2 --k 2 --lambda 1 --mu 7").code, 2);
  EXPECT_EQ(run("symbol --m x").code, 2);
  EXPECT_EQ(run("classify resonant-exists --delta 7/3 --lambda 0,0 --k 2").code, 2);
  EXPECT_EQ(run("classify wat --k 2").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, DeterministicOutputAndSeedOverride) {
  const std::string cmd = "classify resonant-exists --delta 2 --lambda 0,0 --k 3 --m 2";
  const auto a = run(cmd), b = run(cmd);
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(a.out.empty());
  const auto v1 = run("verify inverse --cases 3 --seed 5");
  const auto v2 = run("verify inverse --cases 3 --seed 6", "DENSOP_SEED=5");
  EXPECT_EQ(v1.out, v2.out);
}

TEST(Cli, DumpSystem) {
  const std::string path = testing::TempDir() + "densop_system.jsonl";
  std::remove(path.c_str());
  const auto r = run("classify resonant-exists --delta 1 --lambda 0,0 --k 2 --dump-system " + path);
  ASSERT_EQ(r.code, 0);
  std::ifstream in(path);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    EXPECT_TRUE(densop::Json::parse(line).contains("row"));
    ++rows;
  }
  EXPECT_GT(rows, 0);
}

TEST(Cli, TableFormat) {
  const auto r = run("--format table symbol --m 1 --k 1 --lambda 1 --mu 4");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("entries.1|0  1/2"), std::string::npos);
}
