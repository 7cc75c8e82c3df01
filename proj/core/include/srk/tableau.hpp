#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace srk {

/// Coefficient set (alpha, A, c, b1, b2) of an s-stage stochastic Runge-Kutta
/// method for additive noise.
///
///   H_i     = Y_n + h sum_j a_ij g0(t_n + c_j h, H_j)
///                 + sqrt(h) sum_l g_l (b1_i xi_l + b2_i xi_{m+l})
///   Y_{n+1} = Y_n + h sum_i alpha_i g0(t_n + c_i h, H_i) + sqrt(h) sum_l g_l xi_l
///
/// Instances are validated on construction: all vectors have length s, A is
/// s x s and c equals the row sums of A to within 1e-12.
class SrkTableau {
 public:
  /// Builds and validates a tableau. `a_rows` holds s rows of s entries.
  /// When `c` is empty it is filled with the row sums of A.
  /// Throws std::invalid_argument on any inconsistency.
  static SrkTableau make(std::string name, std::vector<double> alpha,
                         std::vector<std::vector<double>> a_rows,
                         std::vector<double> b1, std::vector<double> b2,
                         std::vector<double> c = {});

  const std::string& name() const { return name_; }
  std::size_t stages() const { return alpha_.size(); }
  std::span<const double> alpha() const { return alpha_; }
  std::span<const double> c() const { return c_; }
  std::span<const double> b1() const { return b1_; }
  std::span<const double> b2() const { return b2_; }
  /// Row-major s x s coefficient matrix.
  std::span<const double> a_matrix() const { return a_; }
  double a(std::size_t i, std::size_t j) const { return a_[i * stages() + j]; }
  /// True when A is strictly lower triangular.
  bool is_explicit() const { return explicit_; }

  friend bool operator==(const SrkTableau&, const SrkTableau&) = default;

 private:
  SrkTableau() = default;

  std::string name_;
  std::vector<double> alpha_;
  std::vector<double> a_;
  std::vector<double> c_;
  std::vector<double> b1_;
  std::vector<double> b2_;
  bool explicit_ = false;
};

/// Four-stage explicit method of weak order 3 and deterministic order 4.
SrkTableau an3d1();

/// One-stage tableau that reduces the scheme to Euler-Maruyama.
SrkTableau euler_tableau();

inline constexpr double kDefaultOrderTolerance = 1e-9;
inline constexpr std::size_t kStochasticConditionCount = 15;
inline constexpr std::size_t kDeterministicConditionCount = 8;

/// Weak order at which stochastic condition `id` (1-based) first appears.
int stochastic_condition_order(int id);
/// Classical order at which deterministic condition `id` (1-based) first appears.
int deterministic_condition_order(int id);

struct OrderReport {
  int stochastic_order = 0;
  int deterministic_order = 0;
  /// Keys "1".."15" hold stochastic residuals (LHS - RHS), "D1".."D8" the
  /// deterministic ones.
  std::map<std::string, double> residuals;
  double tolerance = kDefaultOrderTolerance;
};

/// Left-hand sides of the 15 weak order conditions, products of vectors taken
/// componentwise. Templated on the scalar so tests can run it in exact
/// rational arithmetic. Condition 15 is returned as (alpha^T b2)^2.
template <class T>
std::array<T, kStochasticConditionCount> stochastic_condition_lhs(
    std::span<const T> alpha, std::span<const T> a_row_major,
    std::span<const T> b1, std::span<const T> b2) {
  const std::size_t s = alpha.size();
  auto mat_vec = [&](const std::vector<T>& v) {
    std::vector<T> out(s, T(0));
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) out[i] += a_row_major[i * s + j] * v[j];
    return out;
  };
  auto dot = [&](const std::vector<T>& v) {
    T acc(0);
    for (std::size_t i = 0; i < s; ++i) acc += alpha[i] * v[i];
    return acc;
  };
  auto mul = [&](const std::vector<T>& u, const std::vector<T>& v) {
    std::vector<T> out(s);
    for (std::size_t i = 0; i < s; ++i) out[i] = u[i] * v[i];
    return out;
  };
  auto add = [&](const std::vector<T>& u, const std::vector<T>& v) {
    std::vector<T> out(s);
    for (std::size_t i = 0; i < s; ++i) out[i] = u[i] + v[i];
    return out;
  };

  const std::vector<T> ones(s, T(1));
  const std::vector<T> vb1(b1.begin(), b1.end());
  const std::vector<T> vb2(b2.begin(), b2.end());
  const std::vector<T> c = mat_vec(ones);
  const std::vector<T> bsq = add(mul(vb1, vb1), mul(vb2, vb2));
  const std::vector<T> ab1 = mat_vec(vb1);
  const std::vector<T> ab2 = mat_vec(vb2);
  const T alpha_b2 = dot(vb2);

  return {
      dot(ones),
      dot(c),
      dot(bsq),
      dot(vb1),
      dot(mat_vec(c)),
      dot(mul(c, c)),
      dot(mat_vec(bsq)),
      dot(add(mul(vb1, ab1), mul(vb2, ab2))),
      dot(ab1),
      dot(mul(c, bsq)),
      dot(mul(c, vb1)),
      dot(mul(bsq, bsq)),
      dot(add(mul(mul(vb1, vb1), vb1), mul(vb1, mul(vb2, vb2)))),
      dot(mul(vb1, vb1)),
      alpha_b2 * alpha_b2,
  };
}

/// Right-hand sides matching stochastic_condition_lhs, as (numerator, denominator).
inline constexpr std::array<std::pair<int, int>, kStochasticConditionCount>
    kStochasticConditionRhs{{{1, 1},
                             {1, 2},
                             {1, 2},
                             {1, 2},
                             {1, 6},
                             {1, 3},
                             {1, 6},
                             {1, 6},
                             {1, 6},
                             {1, 3},
                             {1, 3},
                             {1, 3},
                             {1, 3},
                             {1, 3},
                             {1, 12}}};

/// Classical conditions up to order 4 for the deterministic part (alpha, A).
template <class T>
std::array<T, kDeterministicConditionCount> deterministic_condition_lhs(
    std::span<const T> alpha, std::span<const T> a_row_major) {
  const std::size_t s = alpha.size();
  std::vector<T> c(s, T(0));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) c[i] += a_row_major[i * s + j];
  auto mat_vec = [&](const std::vector<T>& v) {
    std::vector<T> out(s, T(0));
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) out[i] += a_row_major[i * s + j] * v[j];
    return out;
  };
  auto dot = [&](const std::vector<T>& v) {
    T acc(0);
    for (std::size_t i = 0; i < s; ++i) acc += alpha[i] * v[i];
    return acc;
  };
  std::vector<T> ones(s, T(1)), c2(s), c3(s), c_ac(s);
  const std::vector<T> ac = mat_vec(c);
  for (std::size_t i = 0; i < s; ++i) {
    c2[i] = c[i] * c[i];
    c3[i] = c2[i] * c[i];
    c_ac[i] = c[i] * ac[i];
  }
  return {dot(ones), dot(c), dot(c2), dot(ac), dot(c3), dot(c_ac), dot(mat_vec(c2)),
          dot(mat_vec(ac))};
}

inline constexpr std::array<std::pair<int, int>, kDeterministicConditionCount>
    kDeterministicConditionRhs{
        {{1, 1}, {1, 2}, {1, 3}, {1, 6}, {1, 4}, {1, 8}, {1, 12}, {1, 24}}};

/// Evaluates the 15 weak order conditions and classifies the weak order
/// (0..3). The deterministic part of the report is filled as well.
/// Throws std::invalid_argument if tol <= 0.
OrderReport check_stochastic_order(const SrkTableau& t,
                                   double tol = kDefaultOrderTolerance);

/// Highest classical order (0..4) whose condition set holds within tol.
int check_deterministic_order(const SrkTableau& t, double tol = kDefaultOrderTolerance);

/// Parse failure in a tableau document. `line()` is 1-based, 0 when the
/// problem is not tied to a single line.
class TableauParseError : public std::runtime_error {
 public:
  TableauParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Reads the plain-text tableau format:
///
///   name=AN3D1
///   s=4
///   alpha=1/6, -0.0054, 2/3, 0.172
///   A=
///   0, 0, 0, 0
///   ...            (s rows)
///   b1=...
///   b2=...
///   c=...          (optional, defaults to A 1)
///
/// Entries are decimal literals or p/q fractions; '#' starts a comment.
SrkTableau load_tableau(std::string_view text);
SrkTableau load_tableau_file(const std::filesystem::path& path);

/// Writes a tableau in the format accepted by load_tableau, with 17
/// significant digits so the round trip is exact.
std::string format_tableau(const SrkTableau& t);

}  // namespace srk
