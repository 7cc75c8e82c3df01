#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "srk/increments.hpp"
#include "srk/random.hpp"
#include "srk/sde.hpp"
#include "srk/tableau.hpp"

namespace srk {

struct PathState {
  double t = 0.0;
  std::vector<double> y;
};

struct StepCounters {
  std::uint64_t drift_evals = 0;
  std::uint64_t rv_draws = 0;

  StepCounters& operator+=(const StepCounters& o) {
    drift_evals += o.drift_evals;
    rv_draws += o.rv_draws;
    return *this;
  }
  friend bool operator==(const StepCounters&, const StepCounters&) = default;
};

/// A stage value or step result became non-finite.
class DivergenceError : public std::runtime_error {
 public:
  explicit DivergenceError(std::uint64_t step_index);
  std::uint64_t step_index() const { return step_index_; }

 private:
  std::uint64_t step_index_;
};

/// One-step map used along a path: an explicit SRK tableau or Euler-Maruyama.
class StepMethod {
 public:
  enum class Kind { Srk, EulerMaruyama };

  static StepMethod srk(SrkTableau tableau);
  static StepMethod euler_maruyama();

  Kind kind() const { return kind_; }
  /// Present only for Kind::Srk.
  const SrkTableau& tableau() const { return *tableau_; }
  std::string name() const;

  /// Drift evaluations and random variates per step for noise dimension m.
  std::uint64_t drift_evals_per_step() const;
  std::uint64_t draws_per_step(std::size_t noise_dim) const;

 private:
  StepMethod(Kind kind, std::optional<SrkTableau> tableau)
      : kind_(kind), tableau_(std::move(tableau)) {}

  Kind kind_;
  std::optional<SrkTableau> tableau_;
};

/// One SRK step from `state` with increments xi (2m entries: xi_1..xi_m, then
/// xi_{m+1}..xi_{2m}). Throws std::invalid_argument for an implicit tableau and
/// DivergenceError (step index 0) on a non-finite stage or result.
PathState srk_step(const SrkTableau& t, const AdditiveNoiseSde& sde, const PathState& state,
                   double h, std::span<const double> xi);

/// y + h g0(t, y) + sqrt(h) sum_l g_l xi_l, with xi of length m.
PathState euler_maruyama_step(const AdditiveNoiseSde& sde, const PathState& state, double h,
                              std::span<const double> xi);

struct PathResult {
  PathState state;
  StepCounters counters;
};

/// Reusable per-worker simulator for uniform-step paths from (t0, x0). Holds
/// stage and increment buffers so repeated paths do not allocate.
class PathSimulator {
 public:
  PathSimulator(StepMethod method, const AdditiveNoiseSde& sde, double h,
                std::uint64_t n_steps, IncrementPair increments);

  /// Simulates one path; the final state is available through final_state().
  /// Throws DivergenceError carrying the failing step index.
  void run(PathStream& stream);

  std::span<const double> final_state() const { return y_; }
  double final_time() const { return t_; }
  /// Counter totals for one path.
  StepCounters counters_per_path() const;

  const StepMethod& method() const { return method_; }

 private:
  StepMethod method_;
  const AdditiveNoiseSde& sde_;
  double h_;
  double sqrt_h_;
  std::uint64_t n_steps_;
  IncrementPair increments_;

  std::vector<double> y_;
  std::vector<double> xi_;
  std::vector<double> stages_;  // s x d stage values H_i
  std::vector<double> slopes_;  // s x d drift values g0(H_i)
  double t_ = 0.0;
};

/// Iterates the step map n_steps times from (t0, x0) with fresh increments
/// each step: the first m drawn from increments.first, the next m from
/// increments.second (Euler-Maruyama draws only the first block).
PathResult simulate_path(const StepMethod& method, const AdditiveNoiseSde& sde, double h,
                         std::uint64_t n_steps, const IncrementPair& increments,
                         PathStream& stream);

}  // namespace srk
