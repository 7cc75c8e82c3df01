#include "srk/sde.hpp"

#include <cmath>
#include <stdexcept>

namespace srk {

AdditiveNoiseSde::AdditiveNoiseSde(std::size_t dim, std::size_t noise_dim, DriftFunction drift,
                                   std::vector<double> noise, double t0,
                                   std::vector<double> x0)
    : dim_(dim),
      noise_dim_(noise_dim),
      drift_(std::move(drift)),
      noise_(std::move(noise)),
      t0_(t0),
      x0_(std::move(x0)) {
  if (dim_ == 0) throw std::invalid_argument("state dimension must be positive");
  if (noise_dim_ == 0) throw std::invalid_argument("noise dimension must be positive");
  if (noise_.size() != dim_ * noise_dim_)
    throw std::invalid_argument("noise matrix has " + std::to_string(noise_.size()) +
                                " entries, expected " + std::to_string(dim_) + "x" +
                                std::to_string(noise_dim_));
  if (x0_.size() != dim_)
    throw std::invalid_argument("initial state has length " + std::to_string(x0_.size()) +
                                ", expected " + std::to_string(dim_));
  if (!drift_) throw std::invalid_argument("drift function is empty");
}

AdditiveNoiseSde custom_sde(std::size_t dim, std::size_t noise_dim, DriftFunction drift,
                            std::vector<double> noise, double t0, std::vector<double> x0) {
  return AdditiveNoiseSde(dim, noise_dim, std::move(drift), std::move(noise), t0,
                          std::move(x0));
}

ReferenceProblem ex1() {
  AdditiveNoiseSde sde(
      1, 1, [](double, std::span<const double> x, std::span<double> out) { out[0] = 1.5 * x[0] + 1.0; },
      {0.1}, 0.0, {0.1});
  return {std::move(sde), [](std::span<const double> x) { return x[0] * x[0]; },
          [](double t) {
            return 2.0 / 9.0 *
                   (397.0 / 200.0 - 23.0 / 5.0 * std::exp(1.5 * t) +
                    133.0 / 50.0 * std::exp(3.0 * t));
          },
          "ex1", 2.0};
}

ReferenceProblem ex2() {
  AdditiveNoiseSde sde(
      1, 1,
      [](double, std::span<const double> x, std::span<double> out) {
        out[0] = 1.5 * std::exp(-2.0 * x[0]) + 1.0;
      },
      {0.1}, 0.0, {0.1});
  return {std::move(sde), [](std::span<const double> x) { return std::exp(2.0 * x[0]); },
          [](double t) {
            return (std::exp(0.2) + 150.0 / 101.0) * std::exp(101.0 / 50.0 * t) - 150.0 / 101.0;
          },
          "ex2", 2.0};
}

ReferenceProblem ex3() {
  AdditiveNoiseSde sde(
      2, 2,
      [](double, std::span<const double> x, std::span<double> out) {
        out[0] = -0.5 * x[0];
        out[1] = -0.01 * x[0] - 0.75 * x[1];
      },
      {-0.1, 0.05, 0.0, 1.0 / 30.0}, 0.0, {1.0, 1.0});
  return {std::move(sde), [](std::span<const double> x) { return x[0] * x[1]; },
          [](double t) {
            return (37.0 + 31148.0 * std::exp(-1.25 * t) - 1185.0 * std::exp(-t)) / 30000.0;
          },
          "ex3", 2.0};
}

ReferenceProblem reference_problem(std::string_view label) {
  if (label == "ex1") return ex1();
  if (label == "ex2") return ex2();
  if (label == "ex3") return ex3();
  throw std::invalid_argument("unknown problem '" + std::string(label) + "'");
}

}  // namespace srk
