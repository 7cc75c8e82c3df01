#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "srk/rational.hpp"
#include "srk/tableau.hpp"

using namespace srk;

namespace {

SrkTableau two_stage() {
  return SrkTableau::make("two-stage", {0.5, 0.5}, {{0, 0}, {1, 0}}, {1, 0}, {0, 0});
}

SrkTableau rk4() {
  return SrkTableau::make("RK4", {1.0 / 6, 1.0 / 3, 1.0 / 3, 1.0 / 6},
                          {{0, 0, 0, 0}, {0.5, 0, 0, 0}, {0, 0.5, 0, 0}, {0, 0, 1, 0}},
                          {0, 0, 0, 0}, {0, 0, 0, 0});
}

}  // namespace

TEST(Tableau, An3d1Constants) {
  const SrkTableau t = an3d1();
  EXPECT_EQ(t.stages(), 4u);
  EXPECT_EQ(t.alpha()[0], 1.0 / 6.0);
  EXPECT_EQ(t.alpha()[1], -0.005430430675258792);
  EXPECT_EQ(t.a(3, 2), 1.9368910834740051);
  EXPECT_EQ(t.b2()[3], 0.3060354860326548);
  const std::vector<double> c(t.c().begin(), t.c().end());
  EXPECT_EQ(c, (std::vector<double>{0, 1, 0.5, 1}));
  for (std::size_t i = 0; i < 4; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < 4; ++j) row += t.a(i, j);
    EXPECT_NEAR(row, t.c()[i], 1e-12);
  }
  EXPECT_TRUE(t.is_explicit());
}

TEST(Tableau, An3d1IsWeakOrderThreeAndDeterministicOrderFour) {
  const OrderReport r = check_stochastic_order(an3d1(), 1e-9);
  EXPECT_EQ(r.stochastic_order, 3);
  EXPECT_EQ(r.deterministic_order, 4);
  EXPECT_EQ(check_deterministic_order(an3d1(), 1e-9), 4);
  ASSERT_EQ(r.residuals.size(), 23u);
  for (const auto& [id, res] : r.residuals) EXPECT_LE(std::abs(res), 1e-9) << id;
}

TEST(Tableau, An3d1RealizesNegativeRootOfCondition15) {
  const SrkTableau t = an3d1();
  double ab2 = 0.0;
  for (std::size_t i = 0; i < 4; ++i) ab2 += t.alpha()[i] * t.b2()[i];
  EXPECT_NEAR(ab2, -1.0 / (2.0 * std::sqrt(3.0)), 1e-12);
}

TEST(Tableau, EulerIsOrderOne) {
  const OrderReport r = check_stochastic_order(euler_tableau(), 1e-12);
  EXPECT_EQ(r.stochastic_order, 1);
  EXPECT_DOUBLE_EQ(r.residuals.at("2"), -0.5);
  EXPECT_EQ(check_deterministic_order(euler_tableau()), 1);
}

TEST(Tableau, TwoStageIsOrderTwo) {
  const OrderReport r = check_stochastic_order(two_stage(), 1e-12);
  EXPECT_EQ(r.stochastic_order, 2);
  EXPECT_DOUBLE_EQ(r.residuals.at("6"), 0.5 - 1.0 / 3.0);
}

TEST(Tableau, TwoStageResidualsAreExactRationals) {
  const std::vector<Rational> alpha{Rational(1, 2), Rational(1, 2)};
  const std::vector<Rational> a{0, 0, 1, 0};
  const std::vector<Rational> b1{1, 0}, b2{0, 0};
  const auto lhs = stochastic_condition_lhs<Rational>(alpha, a, b1, b2);
  // alpha^T v over v = 1, c, b^2, b1, A c, c^2, A b^2, b1 A b1, A b1, c b^2,
  // c b1, (b^2)^2, b1^3, b1^2 and (alpha^T b2)^2, all worked out by hand.
  const std::array<Rational, 15> expected{
      1, Rational(1, 2), Rational(1, 2), Rational(1, 2), 0, Rational(1, 2), Rational(1, 2), 0,
      Rational(1, 2), 0, 0, Rational(1, 2), Rational(1, 2), Rational(1, 2), 0};
  for (std::size_t i = 0; i < 15; ++i) {
    EXPECT_EQ(lhs[i], expected[i]) << "condition " << i + 1;
    const auto [num, den] = kStochasticConditionRhs[i];
    const Rational residual = lhs[i] - Rational(num, den);
    if (i < 4) EXPECT_EQ(residual, Rational(0));
  }
  EXPECT_EQ(lhs[5] - Rational(1, 3), Rational(1, 6));
}

TEST(Tableau, ClassicalRk4IsDeterministicOrderFour) {
  EXPECT_EQ(check_deterministic_order(rk4(), 1e-12), 4);
  // No stochastic coefficients: condition 4 fails, so weak order stays 1.
  EXPECT_EQ(check_stochastic_order(rk4()).stochastic_order, 1);
}

TEST(Tableau, ConditionOrdersAndBadTolerance) {
  EXPECT_EQ(stochastic_condition_order(1), 1);
  EXPECT_EQ(stochastic_condition_order(4), 2);
  EXPECT_EQ(stochastic_condition_order(15), 3);
  EXPECT_EQ(deterministic_condition_order(8), 4);
  EXPECT_THROW(stochastic_condition_order(16), std::out_of_range);
  EXPECT_THROW(check_stochastic_order(an3d1(), 0.0), std::invalid_argument);
  EXPECT_THROW(check_stochastic_order(an3d1(), -1.0), std::invalid_argument);
}

TEST(Tableau, ValidationRejectsInconsistentInput) {
  EXPECT_THROW(SrkTableau::make("x", {1, 0}, {{0, 0}, {1, 0}}, {0}, {0, 0}), std::invalid_argument);
  EXPECT_THROW(SrkTableau::make("x", {1}, {{0, 0}}, {0}, {0}), std::invalid_argument);
  EXPECT_THROW(SrkTableau::make("x", {0.5, 0.5}, {{0, 0}, {1, 0}}, {0, 0}, {0, 0}, {0, 0.9}),
               std::invalid_argument);
  EXPECT_THROW(SrkTableau::make("x", {}, {}, {}, {}), std::invalid_argument);
}

TEST(Tableau, ImplicitTableauIsCheckedButFlagged) {
  const SrkTableau t = SrkTableau::make("midpoint", {1.0}, {{0.5}}, {0.5}, {0.0});
  EXPECT_FALSE(t.is_explicit());
  EXPECT_NO_THROW(check_stochastic_order(t));
}

// Simultaneous stage permutation leaves every condition unchanged.
TEST(TableauProperty, StagePermutationInvariance) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t s = 2 + static_cast<std::size_t>(trial % 4);
    std::vector<double> alpha(s), b1(s), b2(s);
    std::vector<std::vector<double>> a(s, std::vector<double>(s));
    for (std::size_t i = 0; i < s; ++i) {
      alpha[i] = u(rng);
      b1[i] = u(rng);
      b2[i] = u(rng);
      for (std::size_t j = 0; j < s; ++j) a[i][j] = u(rng);
    }
    std::vector<std::size_t> perm(s);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> pa(s), pb1(s), pb2(s);
    std::vector<std::vector<double>> pA(s, std::vector<double>(s));
    for (std::size_t i = 0; i < s; ++i) {
      pa[i] = alpha[perm[i]];
      pb1[i] = b1[perm[i]];
      pb2[i] = b2[perm[i]];
      for (std::size_t j = 0; j < s; ++j) pA[i][j] = a[perm[i]][perm[j]];
    }
    const auto r1 = check_stochastic_order(SrkTableau::make("t", alpha, a, b1, b2));
    const auto r2 = check_stochastic_order(SrkTableau::make("p", pa, pA, pb1, pb2));
    for (const auto& [id, res] : r1.residuals) EXPECT_NEAR(res, r2.residuals.at(id), 1e-12) << id;
  }
}

// Orders are consistent with the residuals: p is the largest order whose
// conditions all hold.
TEST(TableauProperty, OrderMatchesResiduals) {
  for (const auto& t : {an3d1(), euler_tableau(), two_stage(), rk4()}) {
    const auto r = check_stochastic_order(t, 1e-10);
    int expected = 3;
    for (int id = 1; id <= 15; ++id)
      if (std::abs(r.residuals.at(std::to_string(id))) > 1e-10)
        expected = std::min(expected, stochastic_condition_order(id) - 1);
    EXPECT_EQ(r.stochastic_order, expected) << t.name();
  }
}
