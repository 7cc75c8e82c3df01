#include "srk/trees.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace srk {

ColoredTree::ColoredTree(Kind kind, int color, std::vector<ColoredTree> children)
    : kind_(kind), color_(color), children_(std::move(children)) {
  std::sort(children_.begin(), children_.end());
}

ColoredTree ColoredTree::empty() { return ColoredTree(Kind::Empty, -1, {}); }

ColoredTree ColoredTree::stochastic(int color) {
  if (color < 1) throw std::invalid_argument("stochastic colors start at 1");
  return ColoredTree(Kind::Stochastic, color, {});
}

ColoredTree ColoredTree::deterministic(std::vector<ColoredTree> children) {
  std::erase_if(children, [](const ColoredTree& c) { return c.kind() == Kind::Empty; });
  for (const auto& c : children)
    if (c.kind() == Kind::FRoot) throw std::invalid_argument("f-rooted trees cannot be subtrees");
  return ColoredTree(Kind::Deterministic, 0, std::move(children));
}

ColoredTree ColoredTree::f_rooted(std::vector<ColoredTree> children) {
  std::erase_if(children, [](const ColoredTree& c) { return c.kind() == Kind::Empty; });
  for (const auto& c : children)
    if (c.kind() == Kind::FRoot) throw std::invalid_argument("f-rooted trees cannot be subtrees");
  return ColoredTree(Kind::FRoot, -1, std::move(children));
}

std::strong_ordering operator<=>(const ColoredTree& a, const ColoredTree& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (auto c = a.color_ <=> b.color_; c != 0) return c;
  return std::lexicographical_compare_three_way(a.children_.begin(), a.children_.end(),
                                                b.children_.begin(), b.children_.end());
}

std::map<int, int> ColoredTree::stochastic_counts() const {
  std::map<int, int> counts;
  std::function<void(const ColoredTree&)> walk = [&](const ColoredTree& t) {
    if (t.kind_ == Kind::Stochastic) ++counts[t.color_];
    for (const auto& c : t.children_) walk(c);
  };
  walk(*this);
  return counts;
}

std::size_t ColoredTree::node_count() const {
  std::size_t n = kind_ == Kind::Empty ? 0 : 1;
  for (const auto& c : children_) n += c.node_count();
  return n;
}

std::string ColoredTree::to_string() const {
  switch (kind_) {
    case Kind::Empty:
      return "∅";
    case Kind::Stochastic:
      return "•_" + std::to_string(color_);
    case Kind::Deterministic:
    case Kind::FRoot: {
      if (kind_ == Kind::Deterministic && children_.empty()) return "•_0";
      std::string out = "[";
      for (std::size_t i = 0; i < children_.size(); ++i) {
        if (i) out += ",";
        out += children_[i].to_string();
      }
      return out + (kind_ == Kind::FRoot ? "]_f" : "]_0");
    }
  }
  return {};
}

namespace {

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : text_(text) {}

  ColoredTree parse() {
    ColoredTree t = node();
    skip_spaces();
    if (pos_ != text_.size()) fail("trailing characters");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("bad tree '" + std::string(text_) + "' at offset " +
                                std::to_string(pos_) + ": " + what);
  }

  void skip_spaces() {
    while (pos_ < text_.size() && text_[pos_] == ' ') ++pos_;
  }

  bool consume(std::string_view token) {
    skip_spaces();
    if (text_.substr(pos_).starts_with(token)) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  int color() {
    if (!consume("_")) fail("expected '_'");
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
    if (start == pos_) fail("expected color digits");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

  ColoredTree node() {
    if (consume("∅")) return ColoredTree::empty();
    if (consume("•") || consume("o")) {
      const int c = color();
      return c == 0 ? ColoredTree::deterministic() : ColoredTree::stochastic(c);
    }
    if (!consume("[")) fail("expected a tree");
    std::vector<ColoredTree> children;
    if (!consume("]")) {
      do {
        children.push_back(node());
      } while (consume(","));
      if (!consume("]")) fail("expected ']'");
    }
    if (consume("_f")) return ColoredTree::f_rooted(std::move(children));
    if (color() != 0) fail("only color 0 and f carry subtrees");
    return ColoredTree::deterministic(std::move(children));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

// Weights are twice the order, so stochastic leaves weigh 1.
int half_units(Rational order) {
  if (order < 0) throw std::invalid_argument("order must be nonnegative");
  const Rational w = order * 2;
  return static_cast<int>(w.numerator() / w.denominator());  // floor for nonnegative
}

// Every multiset drawn from `pool` (sorted by weight) with total weight `target`.
void multisets(const std::vector<ColoredTree>& pool, const std::vector<int>& weights,
               int target, std::size_t first, std::vector<ColoredTree>& current,
               const std::function<void(const std::vector<ColoredTree>&)>& emit) {
  if (target == 0) {
    emit(current);
    return;
  }
  for (std::size_t i = first; i < pool.size() && weights[i] <= target; ++i) {
    current.push_back(pool[i]);
    multisets(pool, weights, target - weights[i], i, current, emit);
    current.pop_back();
  }
}

// Nonempty trees of T_add with weight <= max_weight, ordered by weight.
std::vector<ColoredTree> nonempty_tadd(int max_weight, int m, std::vector<int>& weights) {
  std::vector<ColoredTree> pool;
  weights.clear();
  if (max_weight >= 1)
    for (int l = 1; l <= m; ++l) {
      pool.push_back(ColoredTree::stochastic(l));
      weights.push_back(1);
    }
  for (int w = 2; w <= max_weight; ++w) {
    std::vector<ColoredTree> fresh;
    std::vector<ColoredTree> current;
    multisets(pool, weights, w - 2, 0, current, [&](const std::vector<ColoredTree>& children) {
      fresh.push_back(ColoredTree::deterministic(children));
    });
    std::sort(fresh.begin(), fresh.end());
    for (auto& t : fresh) {
      pool.push_back(std::move(t));
      weights.push_back(w);
    }
  }
  return pool;
}

}  // namespace

ColoredTree parse_tree(std::string_view text) { return TreeParser(text).parse(); }

ColoredTree canonical(const ColoredTree& t) {
  std::vector<ColoredTree> children;
  for (const auto& c : t.children()) children.push_back(canonical(c));
  switch (t.kind()) {
    case ColoredTree::Kind::Empty: return ColoredTree::empty();
    case ColoredTree::Kind::Stochastic: return ColoredTree::stochastic(t.color());
    case ColoredTree::Kind::Deterministic: return ColoredTree::deterministic(std::move(children));
    case ColoredTree::Kind::FRoot: return ColoredTree::f_rooted(std::move(children));
  }
  return t;
}

Rational rho(const ColoredTree& t) {
  Rational r(0);
  switch (t.kind()) {
    case ColoredTree::Kind::Empty: return r;
    case ColoredTree::Kind::Stochastic: return Rational(1, 2);
    case ColoredTree::Kind::Deterministic: r = 1; break;
    case ColoredTree::Kind::FRoot: break;
  }
  for (const auto& c : t.children()) r += rho(c);
  return r;
}

Rational density(const ColoredTree& t) {
  Rational d(1);
  const auto& ch = t.children();
  for (std::size_t i = 0; i < ch.size();) {
    std::size_t j = i;
    while (j < ch.size() && ch[j] == ch[i]) ++j;
    const Rational child = density(ch[i]);
    for (std::size_t r = 1; r <= j - i; ++r) d *= child / static_cast<std::int64_t>(r);
    i = j;
  }
  return d;
}

std::vector<ColoredTree> enumerate_tadd(Rational max_order, int m) {
  if (m < 0) throw std::invalid_argument("noise dimension must be nonnegative");
  std::vector<int> weights;
  std::vector<ColoredTree> out = nonempty_tadd(half_units(max_order), m, weights);
  out.push_back(ColoredTree::empty());
  std::sort(out.begin(), out.end());
  return out;
}

bool is_decomposable(const ColoredTree& f_tree) {
  const auto& ch = f_tree.children();
  const std::size_t k = ch.size();
  if (k < 2) return false;
  std::vector<std::set<int>> colors(k);
  for (std::size_t i = 0; i < k; ++i)
    for (const auto& [color, count] : ch[i].stochastic_counts()) colors[i].insert(color);

  // Children sharing a color must end up in the same group; the tree splits
  // iff this relation has more than one connected component.
  std::vector<std::size_t> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      const bool share = std::any_of(colors[i].begin(), colors[i].end(),
                                     [&](int c) { return colors[j].contains(c); });
      if (share) parent[find(i)] = find(j);
    }
  for (std::size_t i = 1; i < k; ++i)
    if (find(i) != find(0)) return true;
  return false;
}

std::vector<ColoredTree> relevant_f_trees(int p, int m) {
  if (p < 1 || p > 3) throw std::invalid_argument("p must be 1, 2 or 3");
  if (m < 1) throw std::invalid_argument("noise dimension must be positive");
  const int target = 2 * p;
  std::vector<int> weights;
  const std::vector<ColoredTree> pool = nonempty_tadd(target, m, weights);
  std::vector<ColoredTree> out;
  std::vector<ColoredTree> current;
  multisets(pool, weights, target, 0, current, [&](const std::vector<ColoredTree>& children) {
    ColoredTree u = ColoredTree::f_rooted(children);
    for (const auto& [color, count] : u.stochastic_counts())
      if (count % 2 != 0) return;
    if (is_decomposable(u)) return;
    out.push_back(std::move(u));
  });
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

ColoredTree recolor(const ColoredTree& t, const std::function<int(int)>& map) {
  std::vector<ColoredTree> children;
  for (const auto& c : t.children()) children.push_back(recolor(c, map));
  switch (t.kind()) {
    case ColoredTree::Kind::Empty: return ColoredTree::empty();
    case ColoredTree::Kind::Stochastic: return ColoredTree::stochastic(map(t.color()));
    case ColoredTree::Kind::Deterministic: return ColoredTree::deterministic(std::move(children));
    case ColoredTree::Kind::FRoot: return ColoredTree::f_rooted(std::move(children));
  }
  return t;
}

}  // namespace

ColoredTree erase_colors(const ColoredTree& t) {
  return recolor(t, [](int) { return 1; });
}

std::vector<ColoredTree> shape_families(std::span<const ColoredTree> trees) {
  std::set<ColoredTree> shapes;
  for (const auto& t : trees) shapes.insert(erase_colors(t));
  return {shapes.begin(), shapes.end()};
}

std::vector<ColoredTree> color_classes(std::span<const ColoredTree> trees, int m) {
  std::set<ColoredTree> reps;
  std::vector<int> perm(static_cast<std::size_t>(m));
  for (const auto& t : trees) {
    std::iota(perm.begin(), perm.end(), 1);
    ColoredTree best = t;
    do {
      ColoredTree candidate = recolor(t, [&](int c) { return perm[static_cast<std::size_t>(c - 1)]; });
      if (candidate < best) best = std::move(candidate);
    } while (std::next_permutation(perm.begin(), perm.end()));
    reps.insert(std::move(best));
  }
  return {reps.begin(), reps.end()};
}

}  // namespace srk
