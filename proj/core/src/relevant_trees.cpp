#include "srk/relevant_trees.hpp"

#include <cstddef>
#include <span>

namespace srk {

namespace {

using Vec = std::vector<double>;

// Componentwise algebra on stage vectors.
struct Ops {
  const SrkTableau& t;
  std::size_t s;

  explicit Ops(const SrkTableau& tab) : t(tab), s(tab.stages()) {}

  Vec v(std::span<const double> x) const { return {x.begin(), x.end()}; }
  Vec ones() const { return Vec(s, 1.0); }
  Vec a(const Vec& x) const {
    Vec out(s, 0.0);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) out[i] += t.a(i, j) * x[j];
    return out;
  }
  double alpha_dot(const Vec& x) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < s; ++i) acc += t.alpha()[i] * x[i];
    return acc;
  }
  static Vec mul(const Vec& x, const Vec& y) {
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * y[i];
    return out;
  }
  static Vec lin(double p, const Vec& x, double q, const Vec& y) {
    Vec out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = p * x[i] + q * y[i];
    return out;
  }
  Vec b1() const { return v(t.b1()); }
  Vec b2() const { return v(t.b2()); }
  Vec c() const { return v(t.c()); }
};

struct Moments {
  const IncrementPair& xi;
  double first(int k) const { return to_double(moment(xi.first, k)); }
  double second(int k) const { return to_double(moment(xi.second, k)); }
};

// E (b1 xi + b2 xi')^2 stagewise.
Vec stage_square(const Ops& o, const Moments& mo) {
  return Ops::lin(mo.first(2), Ops::mul(o.b1(), o.b1()), mo.second(2), Ops::mul(o.b2(), o.b2()));
}

std::vector<RelevantTreeRow> build_rows() {
  using R = Rational;
  std::vector<RelevantTreeRow> rows;
  auto add = [&](std::string shape, const std::string& concrete, bool distinct,
                 std::optional<int> condition, R exact,
                 std::function<double(const Ops&, const Moments&)> expr) {
    ColoredTree tree = parse_tree(concrete);
    const int order = static_cast<int>(boost::rational_cast<double>(rho(tree)));
    rows.push_back({std::move(shape), std::move(tree), order, distinct, condition,
                    [expr](const SrkTableau& t, const IncrementPair& xi) {
                      return expr(Ops(t), Moments{xi});
                    },
                    exact});
  };

  // order 1
  add("[•_j,•_j]_f", "[•_1,•_1]_f", false, std::nullopt, R(1),
      [](const Ops&, const Moments& mo) { return mo.first(2); });
  add("[•_0]_f", "[•_0]_f", false, 1, R(1),
      [](const Ops& o, const Moments&) { return o.alpha_dot(o.ones()); });

  // order 2
  add("[•_j,•_j,•_j,•_j]_f", "[•_1,•_1,•_1,•_1]_f", false, std::nullopt, R(3),
      [](const Ops&, const Moments& mo) { return mo.first(4); });
  add("[[•_0]_0]_f", "[[•_0]_0]_f", false, 2, R(1, 2),
      [](const Ops& o, const Moments&) { return o.alpha_dot(o.a(o.ones())); });
  add("[[•_j,•_j]_0]_f", "[[•_1,•_1]_0]_f", false, 3, R(1, 2),
      [](const Ops& o, const Moments& mo) { return o.alpha_dot(stage_square(o, mo)); });
  add("[•_j,[•_j]_0]_f", "[•_1,[•_1]_0]_f", false, 4, R(1, 2),
      [](const Ops& o, const Moments& mo) { return o.alpha_dot(o.b1()) * mo.first(2); });

  // order 3
  add("[•_j,•_j,•_j,•_j,•_j,•_j]_f", "[•_1,•_1,•_1,•_1,•_1,•_1]_f", false, std::nullopt, R(15),
      [](const Ops&, const Moments& mo) { return mo.first(6); });
  add("[[[•_0]_0]_0]_f", "[[[•_0]_0]_0]_f", false, 5, R(1, 6),
      [](const Ops& o, const Moments&) { return o.alpha_dot(o.a(o.a(o.ones()))); });
  add("[[•_0,•_0]_0]_f", "[[•_0,•_0]_0]_f", false, 6, R(1, 3),
      [](const Ops& o, const Moments&) { return o.alpha_dot(Ops::mul(o.c(), o.c())); });
  add("[[[•_j,•_j]_0]_0]_f", "[[[•_1,•_1]_0]_0]_f", false, 7, R(1, 6),
      [](const Ops& o, const Moments& mo) { return o.alpha_dot(o.a(stage_square(o, mo))); });
  add("[[•_j,[•_j]_0]_0]_f", "[[•_1,[•_1]_0]_0]_f", false, 8, R(1, 6),
      [](const Ops& o, const Moments& mo) {
        return o.alpha_dot(Ops::lin(mo.first(2), Ops::mul(o.b1(), o.a(o.b1())), mo.second(2),
                                    Ops::mul(o.b2(), o.a(o.b2()))));
      });
  add("[•_j,[[•_j]_0]_0]_f", "[•_1,[[•_1]_0]_0]_f", false, 9, R(1, 6),
      [](const Ops& o, const Moments& mo) { return o.alpha_dot(o.a(o.b1())) * mo.first(2); });
  add("[[•_0,•_j,•_j]_0]_f", "[[•_0,•_1,•_1]_0]_f", false, 10, R(1, 3),
      [](const Ops& o, const Moments& mo) {
        return o.alpha_dot(Ops::mul(o.c(), stage_square(o, mo)));
      });
  add("[•_j,[•_0,•_j]_0]_f", "[•_1,[•_0,•_1]_0]_f", false, 11, R(1, 3),
      [](const Ops& o, const Moments& mo) {
        return o.alpha_dot(Ops::mul(o.c(), o.b1())) * mo.first(2);
      });

  add("[[•_j,•_j,•_k,•_k]_0]_f", "[[•_1,•_1,•_1,•_1]_0]_f", false, 12, R(1),
      [](const Ops& o, const Moments& mo) {
        const Vec b1 = o.b1(), b2 = o.b2();
        Vec e(o.s);
        for (std::size_t i = 0; i < o.s; ++i)
          e[i] = b1[i] * b1[i] * b1[i] * b1[i] * mo.first(4) +
                 6.0 * b1[i] * b1[i] * b2[i] * b2[i] * mo.first(2) * mo.second(2) +
                 b2[i] * b2[i] * b2[i] * b2[i] * mo.second(4);
        return o.alpha_dot(e);
      });
  add("[[•_j,•_j,•_k,•_k]_0]_f", "[[•_1,•_1,•_2,•_2]_0]_f", true, 12, R(1, 3),
      [](const Ops& o, const Moments& mo) {
        const Vec sq = stage_square(o, mo);
        return o.alpha_dot(Ops::mul(sq, sq));
      });
  add("[•_k,[•_j,•_j,•_k]_0]_f", "[•_1,[•_1,•_1,•_1]_0]_f", false, 13, R(1),
      [](const Ops& o, const Moments& mo) {
        const Vec b1 = o.b1(), b2 = o.b2();
        Vec e(o.s);
        for (std::size_t i = 0; i < o.s; ++i)
          e[i] = b1[i] * b1[i] * b1[i] * mo.first(4) +
                 3.0 * b1[i] * b2[i] * b2[i] * mo.first(2) * mo.second(2);
        return o.alpha_dot(e);
      });
  add("[•_k,[•_j,•_j,•_k]_0]_f", "[•_2,[•_1,•_1,•_2]_0]_f", true, 13, R(1, 3),
      [](const Ops& o, const Moments& mo) {
        return o.alpha_dot(Ops::mul(stage_square(o, mo), o.b1())) * mo.first(2);
      });
  add("[•_j,•_k,[•_j,•_k]_0]_f", "[•_1,•_1,[•_1,•_1]_0]_f", false, 14, R(7, 6),
      [](const Ops& o, const Moments& mo) {
        return o.alpha_dot(Ops::lin(mo.first(4), Ops::mul(o.b1(), o.b1()),
                                    mo.first(2) * mo.second(2), Ops::mul(o.b2(), o.b2())));
      });
  add("[•_j,•_k,[•_j,•_k]_0]_f", "[•_1,•_2,[•_1,•_2]_0]_f", true, 14, R(1, 3),
      [](const Ops& o, const Moments& mo) {
        return o.alpha_dot(Ops::mul(o.b1(), o.b1())) * mo.first(2) * mo.first(2);
      });
  add("[•_j,•_j,•_j,[•_j]_0]_f", "[•_1,•_1,•_1,[•_1]_0]_f", false, 4, R(3, 2),
      [](const Ops& o, const Moments& mo) { return o.alpha_dot(o.b1()) * mo.first(4); });
  add("[[•_j]_0,[•_j]_0]_f", "[[•_1]_0,[•_1]_0]_f", false, 15, R(1, 3),
      [](const Ops& o, const Moments& mo) {
        const double p = o.alpha_dot(o.b1());
        const double q = o.alpha_dot(o.b2());
        return p * p * mo.first(2) + q * q * mo.second(2);
      });
  return rows;
}

}  // namespace

const std::vector<RelevantTreeRow>& relevant_tree_rows() {
  static const std::vector<RelevantTreeRow> rows = build_rows();
  return rows;
}

}  // namespace srk
