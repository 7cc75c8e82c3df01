#include "srk/integrate.hpp"

#include <cmath>

namespace srk {

DivergenceError::DivergenceError(std::uint64_t step_index)
    : std::runtime_error("non-finite value at step " + std::to_string(step_index)),
      step_index_(step_index) {}

StepMethod StepMethod::srk(SrkTableau tableau) {
  if (!tableau.is_explicit())
    throw std::invalid_argument("tableau " + tableau.name() +
                                " is not explicit (A must be strictly lower triangular)");
  return StepMethod(Kind::Srk, std::move(tableau));
}

StepMethod StepMethod::euler_maruyama() { return StepMethod(Kind::EulerMaruyama, std::nullopt); }

std::string StepMethod::name() const {
  return kind_ == Kind::Srk ? tableau_->name() : std::string("Euler-Maruyama");
}

std::uint64_t StepMethod::drift_evals_per_step() const {
  return kind_ == Kind::Srk ? tableau_->stages() : 1;
}

std::uint64_t StepMethod::draws_per_step(std::size_t noise_dim) const {
  return kind_ == Kind::Srk ? 2 * noise_dim : noise_dim;
}

namespace {

bool all_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

// sum_l g_l (w1 xi_l + w2 xi_{m+l}) for one state component.
inline double stage_noise(const AdditiveNoiseSde& sde, std::size_t comp,
                          std::span<const double> xi, double w1, double w2) {
  const std::size_t m = sde.noise_dim();
  double acc = 0.0;
  for (std::size_t l = 0; l < m; ++l) acc += sde.noise_entry(comp, l) * (w1 * xi[l] + w2 * xi[m + l]);
  return acc;
}

inline double update_noise(const AdditiveNoiseSde& sde, std::size_t comp,
                           std::span<const double> xi) {
  double acc = 0.0;
  for (std::size_t l = 0; l < sde.noise_dim(); ++l) acc += sde.noise_entry(comp, l) * xi[l];
  return acc;
}

// Advances y by one explicit SRK step. `stages` and `slopes` hold s x d values.
// Returns false when a stage or the result is non-finite.
bool srk_kernel(const SrkTableau& tab, const AdditiveNoiseSde& sde, double t, double h,
                double sqrt_h, std::span<double> y, std::span<const double> xi,
                std::span<double> stages, std::span<double> slopes) {
  const std::size_t s = tab.stages();
  const std::size_t d = sde.dim();
  const auto alpha = tab.alpha();
  const auto b1 = tab.b1();
  const auto b2 = tab.b2();
  const auto c = tab.c();
  for (std::size_t i = 0; i < s; ++i) {
    auto stage = stages.subspan(i * d, d);
    for (std::size_t comp = 0; comp < d; ++comp) {
      double acc = 0.0;
      for (std::size_t j = 0; j < i; ++j) acc += tab.a(i, j) * slopes[j * d + comp];
      stage[comp] = y[comp] + h * acc + sqrt_h * stage_noise(sde, comp, xi, b1[i], b2[i]);
    }
    if (!all_finite(stage)) return false;
    sde.drift(t + c[i] * h, stage, slopes.subspan(i * d, d));
  }
  for (std::size_t comp = 0; comp < d; ++comp) {
    double acc = 0.0;
    for (std::size_t i = 0; i < s; ++i) acc += alpha[i] * slopes[i * d + comp];
    y[comp] = y[comp] + h * acc + sqrt_h * update_noise(sde, comp, xi);
  }
  return all_finite(y);
}

bool euler_kernel(const AdditiveNoiseSde& sde, double t, double h, double sqrt_h,
                  std::span<double> y, std::span<const double> xi, std::span<double> slope) {
  sde.drift(t, y, slope);
  for (std::size_t comp = 0; comp < sde.dim(); ++comp)
    y[comp] = y[comp] + h * slope[comp] + sqrt_h * update_noise(sde, comp, xi);
  return all_finite(y);
}

void require_positive_step(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("step size must be positive");
}

void require_state(const AdditiveNoiseSde& sde, const PathState& state) {
  if (state.y.size() != sde.dim()) throw std::invalid_argument("state dimension mismatch");
}

}  // namespace

PathState srk_step(const SrkTableau& t, const AdditiveNoiseSde& sde, const PathState& state,
                   double h, std::span<const double> xi) {
  if (!t.is_explicit())
    throw std::invalid_argument("tableau " + t.name() + " is not explicit");
  require_positive_step(h);
  require_state(sde, state);
  if (xi.size() != 2 * sde.noise_dim())
    throw std::invalid_argument("SRK step needs 2m increments");
  PathState next = state;
  std::vector<double> stages(t.stages() * sde.dim());
  std::vector<double> slopes(t.stages() * sde.dim());
  if (!srk_kernel(t, sde, state.t, h, std::sqrt(h), next.y, xi, stages, slopes))
    throw DivergenceError(0);
  next.t = state.t + h;
  return next;
}

PathState euler_maruyama_step(const AdditiveNoiseSde& sde, const PathState& state, double h,
                              std::span<const double> xi) {
  require_positive_step(h);
  require_state(sde, state);
  if (xi.size() != sde.noise_dim())
    throw std::invalid_argument("Euler-Maruyama step needs m increments");
  PathState next = state;
  std::vector<double> slope(sde.dim());
  if (!euler_kernel(sde, state.t, h, std::sqrt(h), next.y, xi, slope)) throw DivergenceError(0);
  next.t = state.t + h;
  return next;
}

PathSimulator::PathSimulator(StepMethod method, const AdditiveNoiseSde& sde, double h,
                             std::uint64_t n_steps, IncrementPair increments)
    : method_(std::move(method)),
      sde_(sde),
      h_(h),
      sqrt_h_(std::sqrt(h)),
      n_steps_(n_steps),
      increments_(std::move(increments)),
      y_(sde.dim()),
      xi_(method_.draws_per_step(sde.noise_dim())) {
  require_positive_step(h);
  if (n_steps == 0) throw std::invalid_argument("n_steps must be at least 1");
  const std::size_t s = method_.kind() == StepMethod::Kind::Srk ? method_.tableau().stages() : 1;
  stages_.resize(s * sde.dim());
  slopes_.resize(s * sde.dim());
}

StepCounters PathSimulator::counters_per_path() const {
  return {n_steps_ * method_.drift_evals_per_step(),
          n_steps_ * method_.draws_per_step(sde_.noise_dim())};
}

void PathSimulator::run(PathStream& stream) {
  const auto x0 = sde_.x0();
  std::copy(x0.begin(), x0.end(), y_.begin());
  const std::size_t m = sde_.noise_dim();
  const bool srk = method_.kind() == StepMethod::Kind::Srk;
  for (std::uint64_t n = 0; n < n_steps_; ++n) {
    const double t = sde_.t0() + static_cast<double>(n) * h_;
    for (std::size_t l = 0; l < m; ++l) xi_[l] = increments_.first.sample(stream);
    bool ok;
    if (srk) {
      for (std::size_t l = 0; l < m; ++l) xi_[m + l] = increments_.second.sample(stream);
      ok = srk_kernel(method_.tableau(), sde_, t, h_, sqrt_h_, y_, xi_, stages_, slopes_);
    } else {
      ok = euler_kernel(sde_, t, h_, sqrt_h_, y_, xi_, slopes_);
    }
    if (!ok) throw DivergenceError(n);
  }
  t_ = sde_.t0() + static_cast<double>(n_steps_) * h_;
}

PathResult simulate_path(const StepMethod& method, const AdditiveNoiseSde& sde, double h,
                         std::uint64_t n_steps, const IncrementPair& increments,
                         PathStream& stream) {
  PathSimulator sim(method, sde, h, n_steps, increments);
  sim.run(stream);
  const auto y = sim.final_state();
  return {PathState{sim.final_time(), std::vector<double>(y.begin(), y.end())},
          sim.counters_per_path()};
}

}  // namespace srk
