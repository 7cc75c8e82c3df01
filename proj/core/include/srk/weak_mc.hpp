#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "srk/increments.hpp"
#include "srk/integrate.hpp"
#include "srk/sde.hpp"
#include "srk/tableau.hpp"

namespace srk {

/// Two-sided 90% normal quantile used for the confidence intervals.
inline constexpr double kZ95 = 1.6448536269514722;

/// Paths per accumulation block. Block boundaries depend only on the path
/// index, which keeps sums independent of the worker count.
inline constexpr std::uint64_t kPathBlock = std::uint64_t{1} << 16;

/// Weak estimator: a one-step method, or the extrapolated Euler-Maruyama
/// combination 2 E f(Z^{h/2}) - E f(Z^h).
class McMethod {
 public:
  enum class Kind { Step, Exem };

  static McMethod step(StepMethod m) { return McMethod(Kind::Step, std::move(m)); }
  static McMethod exem() { return McMethod(Kind::Exem, StepMethod::euler_maruyama()); }

  Kind kind() const { return kind_; }
  const StepMethod& step_method() const { return step_; }
  /// Lower-case identifier used in CSV output (an3d1, euler, exem, or the tableau name).
  std::string id() const;

 private:
  McMethod(Kind kind, StepMethod step) : kind_(kind), step_(std::move(step)) {}
  Kind kind_;
  StepMethod step_;
};

/// Resolves "an3d1", "euler", "exem" or "tableau:<file>".
McMethod parse_method(std::string_view selector);

struct McOptions {
  std::uint64_t paths = 1'000'000;
  std::uint64_t seed = 42;
  IncrementPair increments;
  /// Worker threads; 0 selects std::thread::hardware_concurrency().
  unsigned threads = 1;
};

struct Estimate {
  double mean = 0.0;
  /// Unbiased sample variance of the f-values divided by M.
  double var_of_mean = 0.0;
  double effort_per_path = 0.0;
  std::uint64_t paths = 0;
  std::uint64_t diverged_paths = 0;

  bool diverged() const { return diverged_paths > 0; }
};

/// Number of uniform steps of size h covering [t0, T]. Throws
/// std::invalid_argument when (T - t0) / h is not an integer.
std::uint64_t step_count(const ReferenceProblem& problem, double h);

/// Sample mean of f(Y^h(T)) over M independent paths. Path k draws from the
/// substream (seed, k, lane). Any non-finite path makes the estimate
/// divergent: mean and variance become NaN and diverged_paths counts them.
Estimate estimate_functional(const StepMethod& method, const ReferenceProblem& problem,
                             double h, const McOptions& options, std::uint32_t lane = 0);

struct WeakErrorRecord {
  std::string method;
  std::string problem;
  double h = 0.0;
  std::uint64_t paths = 0;
  std::uint64_t seed = 0;
  double mu_hat = 0.0;
  double sigma2_mu = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  double effort_per_path = 0.0;
  std::uint64_t diverged_paths = 0;

  bool diverged() const { return diverged_paths > 0; }
  double ci_half_width() const { return kZ95 * std::sqrt(sigma2_mu); }
};

/// mu_hat = u_{M,h}(T) - u(T) with a 90% interval mu_hat -+ z sqrt(sigma2_mu).
WeakErrorRecord weak_error(const McMethod& method, const ReferenceProblem& problem, double h,
                           const McOptions& options);

/// 2 E f(Z^{h/2}) - E f(Z^h) from two independent Euler-Maruyama estimates on
/// disjoint substreams; variance 4 var_1 + var_2.
WeakErrorRecord exem_weak_error(const ReferenceProblem& problem, double h,
                                const McOptions& options);

struct ConvergenceStudy {
  std::vector<WeakErrorRecord> records;
  /// Empty when fewer than two points are statistically resolved.
  std::optional<double> fitted_order;
};

/// True when |mu_hat| exceeds three 90% half-widths.
bool is_resolved(const WeakErrorRecord& r);

/// Least-squares slope of log2|mu_hat| against log2 h over resolved records.
std::optional<double> fit_order(std::span<const WeakErrorRecord> records);

/// Records for every h in `h_list` (descending, at least two entries) and the
/// fitted weak order.
ConvergenceStudy convergence_study(const McMethod& method, const ReferenceProblem& problem,
                                   std::span<const double> h_list, const McOptions& options);

/// Drift evaluations plus random variates per path.
double effort(const McMethod& method, const ReferenceProblem& problem, double h);

}  // namespace srk
