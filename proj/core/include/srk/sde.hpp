#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace srk {

/// Drift g0(t, x), written into `out` (same length as x). Must be pure and
/// safe to call concurrently.
using DriftFunction =
    std::function<void(double t, std::span<const double> x, std::span<double> out)>;

/// dX = g0(t, X) dt + sum_l g_l dW_l with constant noise columns g_l.
class AdditiveNoiseSde {
 public:
  /// `noise` is row-major d x m: noise[i * m + l] is component i of g_l.
  /// Throws std::invalid_argument on shape mismatch.
  AdditiveNoiseSde(std::size_t dim, std::size_t noise_dim, DriftFunction drift,
                   std::vector<double> noise, double t0, std::vector<double> x0);

  std::size_t dim() const { return dim_; }
  std::size_t noise_dim() const { return noise_dim_; }
  double t0() const { return t0_; }
  std::span<const double> x0() const { return x0_; }
  std::span<const double> noise() const { return noise_; }
  double noise_entry(std::size_t component, std::size_t column) const {
    return noise_[component * noise_dim_ + column];
  }

  void drift(double t, std::span<const double> x, std::span<double> out) const {
    drift_(t, x, out);
  }

 private:
  std::size_t dim_;
  std::size_t noise_dim_;
  DriftFunction drift_;
  std::vector<double> noise_;
  double t0_;
  std::vector<double> x0_;
};

/// Constructs a model, validating that noise has shape d x m and x0 length d.
AdditiveNoiseSde custom_sde(std::size_t dim, std::size_t noise_dim, DriftFunction drift,
                            std::vector<double> noise, double t0, std::vector<double> x0);

/// An SDE with a test functional f and the exact t -> E f(X(t)).
struct ReferenceProblem {
  AdditiveNoiseSde sde;
  std::function<double(std::span<const double>)> functional;
  std::function<double(double)> exact;
  std::string label;
  double terminal_time;
};

/// Scalar linear problem with E X(t)^2 known in closed form:
/// dX = (3/2 X + 1) dt + 1/10 dW, X(0) = 1/10, T = 2, f(x) = x^2.
ReferenceProblem ex1();

/// Scalar nonlinear problem: dX = (3/2 e^{-2X} + 1) dt + 1/10 dW, X(0) = 1/10,
/// T = 2, f(x) = e^{2x}.
ReferenceProblem ex2();

/// Two-dimensional linear system with two-dimensional noise, X(0) = (1, 1),
/// T = 2, f(x) = x1 x2.
ReferenceProblem ex3();

/// Selector used by the CLI: "ex1", "ex2" or "ex3".
ReferenceProblem reference_problem(std::string_view label);

}  // namespace srk
