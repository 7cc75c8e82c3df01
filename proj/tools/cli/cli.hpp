#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace srk::cli {

enum class Command { CheckTableau, Moments, Converge, Trees, Effort };

struct RunConfig {
  Command command = Command::Converge;
  std::vector<std::string> methods{"an3d1"};
  std::string problem = "ex1";
  int h_exp_hi = 1;   // largest step 2^h_exp_hi
  int h_exp_lo = -4;  // smallest step 2^h_exp_lo
  std::uint64_t paths = 1'000'000;
  std::uint64_t seed = 42;
  std::string dist = "gaussian";  // one name, or "first,second"
  unsigned threads = 0;           // 0: hardware concurrency
  std::optional<std::string> out;
  std::optional<std::string> tableau;
  int max_k = 8;
  // trees
  std::string max_order = "3";
  int noise_dim = 1;
  std::optional<int> relevant;
};

/// Thrown for invalid flag values and inconsistent configurations.
struct UsageError {
  std::string message;
};

/// Parses argv (argv[0] is the program name). Returns nullopt after printing
/// help. `env_threads` is the value of SRKBENCH_THREADS, if set.
/// Throws UsageError.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out,
                                    const char* env_threads);

/// Descending step sizes 2^hi, ..., 2^lo.
std::vector<double> step_sizes(const RunConfig& config);

/// Runs one command. Exit status: 0 success, 1 usage or input error,
/// 2 when the only problem is divergent records.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args followed by run, with errors mapped to exit codes.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace srk::cli
