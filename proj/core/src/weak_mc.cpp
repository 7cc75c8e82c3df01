#include "srk/weak_mc.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <limits>
#include <thread>

namespace srk {

namespace {

constexpr std::uint32_t kLaneDefault = 0;
constexpr std::uint32_t kLaneExemFine = 1;
constexpr std::uint32_t kLaneExemCoarse = 2;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return s;
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

// Count, mean and sum of squared deviations of one block.
struct BlockStats {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;
  std::uint64_t diverged = 0;
};

BlockStats block_stats(std::span<double> values) {
  BlockStats b;
  b.n = values.size();
  b.mean = pairwise_sum(values) / static_cast<double>(b.n);
  for (double& v : values) v = (v - b.mean) * (v - b.mean);
  b.m2 = pairwise_sum(values);
  return b;
}

void merge(BlockStats& into, const BlockStats& b) {
  into.diverged += b.diverged;
  if (b.n == 0) return;
  if (into.n == 0) {
    const auto diverged = into.diverged;
    into = b;
    into.diverged = diverged;
    return;
  }
  const double n = static_cast<double>(into.n + b.n);
  const double delta = b.mean - into.mean;
  into.mean += delta * static_cast<double>(b.n) / n;
  into.m2 += b.m2 + delta * delta * static_cast<double>(into.n) * static_cast<double>(b.n) / n;
  into.n += b.n;
}

unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

WeakErrorRecord make_record(std::string method, const ReferenceProblem& problem, double h,
                            const McOptions& options, double mean, double var_of_mean,
                            double effort_per_path, std::uint64_t diverged) {
  WeakErrorRecord r;
  r.method = std::move(method);
  r.problem = problem.label;
  r.h = h;
  r.paths = options.paths;
  r.seed = options.seed;
  r.effort_per_path = effort_per_path;
  r.diverged_paths = diverged;
  r.mu_hat = mean - problem.exact(problem.terminal_time);
  r.sigma2_mu = var_of_mean;
  const double half = kZ95 * std::sqrt(var_of_mean);
  r.ci_lo = r.mu_hat - half;
  r.ci_hi = r.mu_hat + half;
  return r;
}

}  // namespace

std::string McMethod::id() const {
  if (kind_ == Kind::Exem) return "exem";
  if (step_.kind() == StepMethod::Kind::EulerMaruyama) return "euler";
  return lower(step_.tableau().name());
}

McMethod parse_method(std::string_view selector) {
  if (selector == "an3d1") return McMethod::step(StepMethod::srk(an3d1()));
  if (selector == "euler") return McMethod::step(StepMethod::euler_maruyama());
  if (selector == "exem") return McMethod::exem();
  constexpr std::string_view prefix = "tableau:";
  if (selector.starts_with(prefix))
    return McMethod::step(StepMethod::srk(load_tableau_file(std::string(selector.substr(prefix.size())))));
  throw std::invalid_argument("unknown method '" + std::string(selector) + "'");
}

std::uint64_t step_count(const ReferenceProblem& problem, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("step size must be positive");
  const double ratio = (problem.terminal_time - problem.sde.t0()) / h;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio))
    throw std::invalid_argument("(T - t0) / h = " + std::to_string(ratio) +
                                " is not a positive integer");
  return static_cast<std::uint64_t>(rounded);
}

Estimate estimate_functional(const StepMethod& method, const ReferenceProblem& problem,
                             double h, const McOptions& options, std::uint32_t lane) {
  if (options.paths < 2) throw std::invalid_argument("need at least two paths");
  const std::uint64_t n_steps = step_count(problem, h);
  const std::uint64_t n_blocks = (options.paths + kPathBlock - 1) / kPathBlock;
  std::vector<BlockStats> blocks(n_blocks);
  std::atomic<std::uint64_t> next_block{0};

  auto worker = [&] {
    PathSimulator sim(method, problem.sde, h, n_steps, options.increments);
    std::vector<double> values;
    values.reserve(kPathBlock);
    for (std::uint64_t b = next_block++; b < n_blocks; b = next_block++) {
      const std::uint64_t begin = b * kPathBlock;
      const std::uint64_t end = std::min(options.paths, begin + kPathBlock);
      values.clear();
      std::uint64_t diverged = 0;
      for (std::uint64_t k = begin; k < end; ++k) {
        PathStream stream(options.seed, k, lane);
        double f = std::numeric_limits<double>::quiet_NaN();
        try {
          sim.run(stream);
          f = problem.functional(sim.final_state());
        } catch (const DivergenceError&) {
        }
        if (std::isfinite(f))
          values.push_back(f);
        else
          ++diverged;
      }
      BlockStats stats = values.empty() ? BlockStats{} : block_stats(values);
      stats.diverged = diverged;
      blocks[b] = stats;
    }
  };

  const unsigned n_threads =
      static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(options.threads), n_blocks));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  }

  BlockStats total;
  for (const auto& b : blocks) merge(total, b);

  Estimate e;
  e.paths = options.paths;
  e.diverged_paths = total.diverged;
  const StepCounters c{n_steps * method.drift_evals_per_step(),
                       n_steps * method.draws_per_step(problem.sde.noise_dim())};
  e.effort_per_path = static_cast<double>(c.drift_evals + c.rv_draws);
  if (total.diverged > 0 || total.n < 2) {
    e.mean = std::numeric_limits<double>::quiet_NaN();
    e.var_of_mean = std::numeric_limits<double>::quiet_NaN();
  } else {
    const double n = static_cast<double>(total.n);
    e.mean = total.mean;
    e.var_of_mean = total.m2 / (n - 1.0) / n;
  }
  return e;
}

WeakErrorRecord weak_error(const McMethod& method, const ReferenceProblem& problem, double h,
                           const McOptions& options) {
  if (method.kind() == McMethod::Kind::Exem) return exem_weak_error(problem, h, options);
  const Estimate e = estimate_functional(method.step_method(), problem, h, options, kLaneDefault);
  return make_record(method.id(), problem, h, options, e.mean, e.var_of_mean, e.effort_per_path,
                     e.diverged_paths);
}

WeakErrorRecord exem_weak_error(const ReferenceProblem& problem, double h,
                                const McOptions& options) {
  step_count(problem, h);
  const StepMethod euler = StepMethod::euler_maruyama();
  const Estimate fine = estimate_functional(euler, problem, h / 2.0, options, kLaneExemFine);
  const Estimate coarse = estimate_functional(euler, problem, h, options, kLaneExemCoarse);
  return make_record("exem", problem, h, options, 2.0 * fine.mean - coarse.mean,
                     4.0 * fine.var_of_mean + coarse.var_of_mean,
                     fine.effort_per_path + coarse.effort_per_path,
                     fine.diverged_paths + coarse.diverged_paths);
}

bool is_resolved(const WeakErrorRecord& r) {
  return !r.diverged() && std::isfinite(r.mu_hat) && std::abs(r.mu_hat) > 3.0 * r.ci_half_width();
}

std::optional<double> fit_order(std::span<const WeakErrorRecord> records) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& r : records)
    if (is_resolved(r)) pts.emplace_back(std::log2(r.h), std::log2(std::abs(r.mu_hat)));
  if (pts.size() < 2) return std::nullopt;
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

ConvergenceStudy convergence_study(const McMethod& method, const ReferenceProblem& problem,
                                   std::span<const double> h_list, const McOptions& options) {
  if (h_list.size() < 2) throw std::invalid_argument("convergence study needs at least two step sizes");
  for (std::size_t i = 1; i < h_list.size(); ++i)
    if (!(h_list[i] < h_list[i - 1]))
      throw std::invalid_argument("step sizes must be strictly descending");
  ConvergenceStudy study;
  for (double h : h_list) study.records.push_back(weak_error(method, problem, h, options));
  study.fitted_order = fit_order(study.records);
  return study;
}

double effort(const McMethod& method, const ReferenceProblem& problem, double h) {
  const std::uint64_t n = step_count(problem, h);
  const std::uint64_t m = problem.sde.noise_dim();
  if (method.kind() == McMethod::Kind::Exem) return static_cast<double>(3 * n * (1 + m));
  const StepMethod& s = method.step_method();
  return static_cast<double>(n * (s.drift_evals_per_step() + s.draws_per_step(m)));
}

}  // namespace srk
