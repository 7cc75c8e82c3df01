#include <gtest/gtest.h>

#include <random>
#include <set>

#include "srk/relevant_trees.hpp"

using namespace srk;

namespace {

IncrementPair pair_of(IncrementKind a, IncrementKind b) {
  return {IncrementDistribution(a), IncrementDistribution(b)};
}

}  // namespace

TEST(RelevantRows, CoverEveryShapeFamily) {
  const auto& rows = relevant_tree_rows();
  EXPECT_EQ(rows.size(), 22u);
  for (int p = 1; p <= 3; ++p) {
    std::set<ColoredTree> shapes;
    for (const auto& r : rows) {
      if (r.order != p) continue;
      EXPECT_EQ(rho(r.tree), Rational(p)) << r.shape;
      const auto rel = relevant_f_trees(p, 2);
      EXPECT_TRUE(std::find(rel.begin(), rel.end(), r.tree) != rel.end()) << r.tree.to_string();
      shapes.insert(erase_colors(r.tree));
    }
    const auto families = shape_families(relevant_f_trees(p, 2));
    EXPECT_EQ(shapes, std::set<ColoredTree>(families.begin(), families.end())) << "p=" << p;
  }
}

TEST(RelevantRows, An3d1MatchesExactExpectationsWithGaussianAndDiscreteLaws) {
  const auto t = an3d1();
  const auto [d7, d5] = required_distributions(3);
  for (const IncrementPair& inc : {IncrementPair{}, IncrementPair{d7, d5}})
    for (const auto& r : relevant_tree_rows())
      EXPECT_NEAR(r.numeric(t, inc), to_double(r.exact), 1e-9)
          << r.shape << (r.distinct_colors ? " (j!=k) " : " ") << inc.first.name();
}

// The order-two pair matches N(0,1) only far enough for order 2.
TEST(RelevantRows, OrderTwoLawsBreakOrderThreeRows) {
  const auto t = an3d1();
  const auto [d5, d3] = required_distributions(2);
  const IncrementPair inc{d5, d3};
  int broken = 0;
  for (const auto& r : relevant_tree_rows()) {
    const bool ok = std::abs(r.numeric(t, inc) - to_double(r.exact)) < 1e-9;
    if (r.order <= 2) EXPECT_TRUE(ok) << r.shape;
    broken += !ok;
  }
  EXPECT_GE(broken, 2);
}

TEST(RelevantRows, EulerFailsOrderTwo) {
  int failing = 0;
  for (const auto& r : relevant_tree_rows())
    if (r.order == 2 && std::abs(r.numeric(euler_tableau(), {}) - to_double(r.exact)) > 1e-9) ++failing;
  EXPECT_EQ(failing, 3);  // all but the pure moment row [j,j,j,j]_f
}

// With Gaussian increments each row's defect is a fixed combination of the
// residuals of the 15 conditions, checked on random tableaus.
TEST(RelevantRows, DefectsAgreeWithConditionResiduals) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t s = 3;
    std::vector<double> alpha(s), b1(s), b2(s);
    std::vector<std::vector<double>> a(s, std::vector<double>(s, 0.0));
    for (std::size_t i = 0; i < s; ++i) {
      alpha[i] = u(rng);
      b1[i] = u(rng);
      b2[i] = u(rng);
      for (std::size_t j = 0; j < i; ++j) a[i][j] = u(rng);
    }
    const auto t = SrkTableau::make("rand", alpha, a, b1, b2);
    const auto rep = check_stochastic_order(t);
    auto res = [&](int id) { return rep.residuals.at(std::to_string(id)); };
    for (const auto& r : relevant_tree_rows()) {
      const double defect = r.numeric(t, {}) - to_double(r.exact);
      double expected = 0.0;
      if (!r.condition) {
        expected = 0.0;
      } else if (r.shape == "[•_j,•_j,•_j,[•_j]_0]_f") {
        expected = 3.0 * res(4);
      } else if (r.shape == "[•_j,•_k,[•_j,•_k]_0]_f") {
        expected = r.distinct_colors ? res(14) : 2.0 * res(14) + res(3);
      } else if ((*r.condition == 12 || *r.condition == 13) && !r.distinct_colors) {
        expected = 3.0 * res(*r.condition);
      } else if (*r.condition == 15) {
        expected = (res(4) + 0.5) * (res(4) + 0.5) - 0.25 + res(15);
      } else {
        expected = res(*r.condition);
      }
      EXPECT_NEAR(defect, expected, 1e-12) << r.shape;
    }
  }
}
