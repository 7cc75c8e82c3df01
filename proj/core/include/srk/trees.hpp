#pragma once

#include <compare>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "srk/rational.hpp"

namespace srk {

/// Colored rooted tree of the additive-noise B-series.
///
/// Nodes are the empty tree, deterministic nodes (color 0), stochastic leaves
/// (color l >= 1, never carrying subtrees) and the f-root of trees that expand
/// f(Y). Children are kept sorted, so equality is isomorphism with colors.
class ColoredTree {
 public:
  enum class Kind { Empty, Stochastic, Deterministic, FRoot };

  static ColoredTree empty();
  /// Stochastic leaf of color l >= 1.
  static ColoredTree stochastic(int color);
  /// [children]_0; an empty list gives the deterministic leaf. Empty-tree
  /// children are dropped since [emptyset]_0 is the deterministic leaf.
  static ColoredTree deterministic(std::vector<ColoredTree> children = {});
  /// [children]_f.
  static ColoredTree f_rooted(std::vector<ColoredTree> children);

  Kind kind() const { return kind_; }
  /// 0 for deterministic, l for stochastic, -1 otherwise.
  int color() const { return color_; }
  const std::vector<ColoredTree>& children() const { return children_; }

  /// Number of stochastic leaves per color in the whole tree.
  std::map<int, int> stochastic_counts() const;
  std::size_t node_count() const;

  /// Bracket notation: "∅", "•_0", "•_2", "[•_1,•_1]_0", "[•_0]_f".
  std::string to_string() const;

  friend std::strong_ordering operator<=>(const ColoredTree& a, const ColoredTree& b);
  friend bool operator==(const ColoredTree& a, const ColoredTree& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }

 private:
  ColoredTree(Kind kind, int color, std::vector<ColoredTree> children);

  Kind kind_;
  int color_;
  std::vector<ColoredTree> children_;
};

/// Parses the notation produced by ColoredTree::to_string. Also accepts 'o'
/// in place of '•'. Throws std::invalid_argument on malformed input.
ColoredTree parse_tree(std::string_view text);

/// Rebuilds the tree bottom-up through the canonicalizing constructors.
ColoredTree canonical(const ColoredTree& t);

/// Tree order: stochastic leaf 1/2, deterministic node 1 plus its children,
/// f-root 0 plus its children, empty tree 0.
Rational rho(const ColoredTree& t);

/// B-series weight: 1 for leaves and the empty tree, otherwise the product
/// of the children's densities divided by r_1! ... r_q! over groups of equal
/// children.
Rational density(const ColoredTree& t);

/// All trees of T_add (empty tree, stochastic leaves of colors 1..m, and
/// every tree with a deterministic root) with rho <= max_order, sorted and
/// free of duplicates.
std::vector<ColoredTree> enumerate_tadd(Rational max_order, int m);

/// True when the children of an f-rooted tree split into two nonempty groups
/// whose stochastic color sets are disjoint.
bool is_decomposable(const ColoredTree& f_tree);

/// f-rooted trees of order p with an even number of stochastic leaves of
/// each color that are not decomposable. These are the trees that generate
/// the weak order conditions of order p.
std::vector<ColoredTree> relevant_f_trees(int p, int m);

/// Maps every stochastic color to 1, so instances of one shape with equal
/// or distinct colors (j = k and j != k) coincide.
ColoredTree erase_colors(const ColoredTree& t);

/// Distinct color-erased shapes among `trees`, sorted.
std::vector<ColoredTree> shape_families(std::span<const ColoredTree> trees);

/// Color-permutation classes: trees identified when a bijection of colors
/// maps one onto the other. Returns one canonical representative per class.
std::vector<ColoredTree> color_classes(std::span<const ColoredTree> trees, int m);

}  // namespace srk
