#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "srk/increments.hpp"
#include "srk/rational.hpp"
#include "srk/tableau.hpp"
#include "srk/trees.hpp"

namespace srk {

/// One relevant f-tree u with the expectations that generate its weak order
/// condition, both divided by h^rho(u):
///   numeric(t, xi) = E psi_Phi(u) / h^rho   for the method's B-series,
///   exact          = E psi_phi(u) / h^rho   for the exact solution.
/// Rows whose shape involves two colors j, k appear twice, once with j = k
/// (colors 1, 1) and once with j != k (colors 1, 2).
struct RelevantTreeRow {
  std::string shape;        // notation with j, k placeholders
  ColoredTree tree;         // concrete instance
  int order = 0;
  bool distinct_colors = false;
  /// Weak order condition this row reduces to; empty when it holds by the
  /// moment assumptions on the increments alone.
  std::optional<int> condition;
  std::function<double(const SrkTableau&, const IncrementPair&)> numeric;
  Rational exact;
};

/// Rows for orders 1 to 3.
const std::vector<RelevantTreeRow>& relevant_tree_rows();

}  // namespace srk
