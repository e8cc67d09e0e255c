#include "densop/densop.hpp"

#include <gtest/gtest.h>

using namespace densop;

TEST(Rational, ParsesAndPrintsCanonically) {
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-4"), Rational(-4));
  EXPECT_EQ(parse_rational("+2/6"), Rational(1, 3));
  EXPECT_EQ(to_string(parse_rational("-10/4")), "-5/2");
  EXPECT_EQ(to_string(Rational(7)), "7");
  const auto l = parse_rational_list("1/2,-3,0");
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[1], -3);
}

TEST(Rational, RejectsMalformedInput) {
  for (const char* bad : {"", "1/0", "a", "1/-2", "1.5", " 1", "1/", "/2", "--1"}) {
    try {
      parse_rational(bad);
      ADD_FAILURE() << "accepted '" << bad << "'";
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), "parse");
    }
  }
}

TEST(Rational, Binomial) {
  EXPECT_EQ(binomial(5, 2), 10);
  EXPECT_EQ(binomial(3, 5), 0);
  EXPECT_EQ(binomial(4, -1), 0);
}

TEST(Polynomial, ArithmeticAndDerivative) {
  Polynomial p{1, 2, 3};  // 1 + 2x + 3x^2
  Polynomial q{0, 1};
  EXPECT_EQ(p * q, (Polynomial{0, 1, 2, 3}));
  EXPECT_EQ(p.derivative(), (Polynomial{2, 6}));
  EXPECT_EQ(p.derivative(3), Polynomial{});
  EXPECT_EQ(p.evaluate(2), 17);
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ((p - p).degree(), -1);
}

TEST(MultiIndex, CanonicalOrderWithinDegree) {
  const auto idx = enumerate_multi_indices(2, 2);
  ASSERT_EQ(idx.size(), 3u);
  EXPECT_EQ(idx[0], (MultiIndex{2, 0}));
  EXPECT_EQ(idx[1], (MultiIndex{1, 1}));
  EXPECT_EQ(idx[2], (MultiIndex{0, 2}));
  EXPECT_TRUE((MultiIndex{0, 1}) < (MultiIndex{2, 0}));
}

TEST(MultiIndex, CountsMatchStarsAndBars) {
  for (int m = 1; m <= 4; ++m)
    for (int p = 0; p <= 5; ++p)
      EXPECT_EQ(static_cast<long>(enumerate_multi_indices(m, p).size()), binomial(p + m - 1, m - 1).get_num().get_si());
}

TEST(MultiIndex, ParseRoundTrip) {
  MultiIndex a{3, 0, 2};
  EXPECT_EQ(MultiIndex::parse(a.to_string()), a);
  EXPECT_THROW(MultiIndex::parse("1,,2"), Error);
  EXPECT_THROW(MultiIndex::parse("1,-2"), Error);
}

TEST(IndexSpace, BlocksAndPositions) {
  IndexSpace s(2, 2);
  EXPECT_EQ(s.size(), 6);
  EXPECT_EQ(s.block_size(0), 1);
  EXPECT_EQ(s.block_size(1), 2);
  EXPECT_EQ(s.block_size(2), 3);
  for (int p = 0; p < s.size(); ++p) EXPECT_EQ(s.position(s.at(p)), p);
  EXPECT_EQ(s.find(MultiIndex{3, 0}), -1);
  EXPECT_THROW(IndexSpace(0, 1), Error);
}

TEST(IndexSpace, StrictlyDecreasing) {
  IndexSpace s(3, 4, EnumMode::strictly_decreasing, 1);
  for (const auto& i : s.indices()) {
    EXPECT_TRUE(i.strictly_decreasing());
    EXPECT_GE(i.degree(), 1);
  }
  // degree 3: (3,0,...) is not strictly decreasing with two zeros; (2,1,0)
  EXPECT_EQ(s.block_size(3), 1);
}

TEST(Linalg, DeterminantByHand) {
  RatMatrix a{{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
  EXPECT_EQ(determinant(a), 2 * (12 - 1) - 1 * (4 - 0));
  RatMatrix b{{Rational(1, 2), Rational(1, 3)}, {Rational(1, 4), Rational(1, 5)}};
  EXPECT_EQ(determinant(b), Rational(1, 10) - Rational(1, 12));
  EXPECT_EQ(determinant(RatMatrix(0, 0)), 1);
  EXPECT_EQ(det_and_rank(RatMatrix{{1, 2}, {2, 4}}).rank, 1);
}

TEST(Linalg, SolveAndNullspace) {
  RatMatrix a{{1, 1, 1}, {1, -1, 2}};
  const auto sol = solve_linear_system(a, {3, 2});
  ASSERT_TRUE(sol.consistent());
  EXPECT_EQ(a.apply(*sol.particular), (std::vector<Rational>{3, 2}));
  ASSERT_EQ(sol.nullspace_basis.size(), 1u);
  for (const auto& v : nullspace(a)) EXPECT_EQ(a.apply(v), (std::vector<Rational>{0, 0}));
  EXPECT_FALSE(solve_linear_system(RatMatrix{{1, 1}, {2, 2}}, {1, 3}).consistent());
}

TEST(Linalg, SparseEliminatorAgreesWithDense) {
  Sampler s(3);
  for (int trial = 0; trial < 20; ++trial) {
    RatMatrix a(4, 6);
    std::vector<Rational> b(4);
    SparseEliminator e(6);
    for (int r = 0; r < 4; ++r) {
      SparseRow row;
      for (int c = 0; c < 6; ++c) {
        a(r, c) = s.integer(0, 2) ? Rational(0) : s.rational();
        if (a(r, c) != 0) row.emplace_back(c, a(r, c));
      }
      b[static_cast<std::size_t>(r)] = s.rational();
      e.add_row(row, b[static_cast<std::size_t>(r)]);
    }
    const auto dense = solve_linear_system(a, b);
    const auto sparse = e.solve();
    ASSERT_EQ(dense.consistent(), sparse.has_value());
    if (!sparse) continue;
    EXPECT_EQ(static_cast<int>(dense.nullspace_basis.size()), static_cast<int>(sparse->free_vars.size()));
    std::vector<Rational> params(sparse->free_vars.size());
    for (auto& p : params) p = s.rational();
    EXPECT_EQ(a.apply(sparse->evaluate(params)), b);
  }
}

TEST(Density, LieDerivativeByHand) {
  // X = x^2 d/dx on x dx^{1/2}: x^2 * 1 + 1/2 * 2x * x = 2x^2
  EXPECT_EQ(lie_derivative(VectorField::monomial(2), Polynomial{0, 1}, Rational(1, 2)), (Polynomial{0, 0, 2}));
  const auto c = commutator(VectorField::monomial(1), VectorField::monomial(2));
  EXPECT_EQ(c.coefficient, (Polynomial{0, 0, 1}));
}
