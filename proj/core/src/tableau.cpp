#include "srk/tableau.hpp"

#include <cmath>
#include <string>

namespace srk {

namespace {

constexpr double kRowSumTolerance = 1e-12;

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

SrkTableau SrkTableau::make(std::string name, std::vector<double> alpha,
                            std::vector<std::vector<double>> a_rows,
                            std::vector<double> b1, std::vector<double> b2,
                            std::vector<double> c) {
  const std::size_t s = alpha.size();
  require(s > 0, "tableau needs at least one stage");
  require(a_rows.size() == s, "A has " + std::to_string(a_rows.size()) +
                                  " rows, expected " + std::to_string(s));
  require(b1.size() == s, "b1 has length " + std::to_string(b1.size()) +
                              ", expected " + std::to_string(s));
  require(b2.size() == s, "b2 has length " + std::to_string(b2.size()) +
                              ", expected " + std::to_string(s));
  require(c.empty() || c.size() == s,
          "c has length " + std::to_string(c.size()) + ", expected " + std::to_string(s));

  SrkTableau t;
  t.name_ = std::move(name);
  t.a_.reserve(s * s);
  t.explicit_ = true;
  std::vector<double> row_sums(s, 0.0);
  for (std::size_t i = 0; i < s; ++i) {
    require(a_rows[i].size() == s, "A row " + std::to_string(i + 1) + " has " +
                                       std::to_string(a_rows[i].size()) +
                                       " entries, expected " + std::to_string(s));
    for (std::size_t j = 0; j < s; ++j) {
      const double v = a_rows[i][j];
      require(std::isfinite(v), "A contains a non-finite entry");
      t.a_.push_back(v);
      row_sums[i] += v;
      if (j >= i && v != 0.0) t.explicit_ = false;
    }
  }
  for (const auto* vec : {&alpha, &b1, &b2, &c})
    for (double v : *vec) require(std::isfinite(v), "tableau contains a non-finite entry");

  if (c.empty()) {
    c = row_sums;
  } else {
    for (std::size_t i = 0; i < s; ++i)
      require(std::abs(c[i] - row_sums[i]) <= kRowSumTolerance,
              "c[" + std::to_string(i + 1) + "] is inconsistent with the row sum of A");
  }
  t.alpha_ = std::move(alpha);
  t.b1_ = std::move(b1);
  t.b2_ = std::move(b2);
  t.c_ = std::move(c);
  return t;
}

SrkTableau an3d1() {
  return SrkTableau::make(
      "AN3D1", {1.0 / 6.0, -0.005430430675258792, 2.0 / 3.0, 0.1720970973419255},
      {{0.0, 0.0, 0.0, 0.0},
       {1.0, 0.0, 0.0, 0.0},
       {3.0 / 8.0, 1.0 / 8.0, 0.0, 0.0},
       {-0.4526683126055039, -0.4842227708685013, 1.9368910834740051, 0.0}},
      {-0.01844540496323970, 0.8017012756521233, 0.5092227024816198,
       0.9758794209767762},
      {-0.1866426386543421, -0.8575745885712401, -0.4723392695015512,
       0.3060354860326548},
      {0.0, 1.0, 0.5, 1.0});
}

SrkTableau euler_tableau() {
  return SrkTableau::make("Euler", {1.0}, {{0.0}}, {0.0}, {0.0});
}

int stochastic_condition_order(int id) {
  if (id == 1) return 1;
  if (id >= 2 && id <= 4) return 2;
  if (id >= 5 && id <= 15) return 3;
  throw std::out_of_range("stochastic condition id out of range: " + std::to_string(id));
}

int deterministic_condition_order(int id) {
  switch (id) {
    case 1: return 1;
    case 2: return 2;
    case 3:
    case 4: return 3;
    case 5:
    case 6:
    case 7:
    case 8: return 4;
    default:
      throw std::out_of_range("deterministic condition id out of range: " +
                              std::to_string(id));
  }
}

namespace {

// Highest order p such that every condition of order <= p is satisfied.
template <class Residuals, class OrderOf>
int classify(const Residuals& residuals, double tol, int max_order, OrderOf order_of) {
  int order = max_order;
  for (std::size_t k = 0; k < residuals.size(); ++k) {
    if (std::abs(residuals[k]) > tol) {
      const int failing = order_of(static_cast<int>(k + 1));
      if (failing - 1 < order) order = failing - 1;
    }
  }
  return order;
}

std::array<double, kDeterministicConditionCount> deterministic_residuals(
    const SrkTableau& t) {
  auto lhs = deterministic_condition_lhs<double>(t.alpha(), t.a_matrix());
  for (std::size_t k = 0; k < lhs.size(); ++k)
    lhs[k] -= static_cast<double>(kDeterministicConditionRhs[k].first) /
              kDeterministicConditionRhs[k].second;
  return lhs;
}

}  // namespace

OrderReport check_stochastic_order(const SrkTableau& t, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  OrderReport report;
  report.tolerance = tol;

  auto stochastic = stochastic_condition_lhs<double>(t.alpha(), t.a_matrix(), t.b1(), t.b2());
  for (std::size_t k = 0; k < stochastic.size(); ++k) {
    stochastic[k] -= static_cast<double>(kStochasticConditionRhs[k].first) /
                     kStochasticConditionRhs[k].second;
    report.residuals[std::to_string(k + 1)] = stochastic[k];
  }
  report.stochastic_order = classify(stochastic, tol, 3, stochastic_condition_order);

  const auto deterministic = deterministic_residuals(t);
  for (std::size_t k = 0; k < deterministic.size(); ++k)
    report.residuals["D" + std::to_string(k + 1)] = deterministic[k];
  report.deterministic_order = classify(deterministic, tol, 4, deterministic_condition_order);
  return report;
}

int check_deterministic_order(const SrkTableau& t, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  return classify(deterministic_residuals(t), tol, 4, deterministic_condition_order);
}

}  // namespace srk
