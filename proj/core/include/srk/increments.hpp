#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "srk/random.hpp"
#include "srk/rational.hpp"

namespace srk {

/// Laws for the increments xi_k. The discrete kinds agree with N(0, 1) in all
/// moments up to the index in their name.
enum class IncrementKind { Gaussian, MatchUpTo1, MatchUpTo3, MatchUpTo5, MatchUpTo7 };

/// Atom of a discrete increment law. The value is stored through its square,
/// which is an exact rational (0, 1, 3 or 6), so every moment is an exact
/// rational. `value` is the double rendering (e.g. sqrt(3) correctly rounded).
struct Atom {
  double value;
  Rational square;
  Rational probability;
};

class IncrementDistribution {
 public:
  explicit IncrementDistribution(IncrementKind kind);

  IncrementKind kind() const { return kind_; }
  /// Empty for the Gaussian law. Sorted by value.
  const std::vector<Atom>& atoms() const { return atoms_; }
  /// Highest index k such that moments 0..k match N(0, 1). Infinite for the
  /// Gaussian law, reported as -1.
  int matched_moments() const;
  std::string name() const;

  friend bool operator==(const IncrementDistribution& a, const IncrementDistribution& b) {
    return a.kind_ == b.kind_;
  }

  /// One draw. Consumes exactly one uniform from the stream: discrete laws
  /// invert the cumulative atom probabilities, the Gaussian law applies the
  /// inverse normal CDF.
  double sample(PathStream& stream) const {
    const double u = stream.uniform();
    if (kind_ == IncrementKind::Gaussian) return gaussian_quantile(u);
    std::size_t i = 0;
    while (i + 1 < thresholds_.size() && u >= thresholds_[i]) ++i;
    return atoms_[i].value;
  }

  static double gaussian_quantile(double u);

 private:
  IncrementKind kind_;
  std::vector<Atom> atoms_;
  std::vector<double> thresholds_;  // cumulative probabilities
};

/// Exact k-th moment. For discrete kinds sum_i p_i v_i^k computed on the
/// squared atoms; for the Gaussian law (k-1)!! for even k and 0 for odd k.
/// Throws std::overflow_error when the result does not fit the 64-bit rational.
Rational moment(const IncrementDistribution& d, int k);

/// k-th moment of N(0, 1) as an exact integer.
Rational normal_moment(int k);

/// Minimal discrete pair for weak order p: the first block (xi_1..xi_m) must
/// match 2p+1 moments, the second block (xi_{m+1}..xi_{2m}) 2p-1 moments.
/// Throws std::invalid_argument for p outside {1, 2, 3}.
std::pair<IncrementDistribution, IncrementDistribution> required_distributions(int p);

/// Free-function form of IncrementDistribution::sample.
inline double sample(const IncrementDistribution& d, PathStream& stream) {
  return d.sample(stream);
}

/// CLI names: gaussian, d3, d5, d7, zero.
IncrementKind parse_increment_kind(std::string_view name);
std::string increment_kind_name(IncrementKind kind);

/// Distributions driving the two noise blocks of one step.
struct IncrementPair {
  IncrementDistribution first{IncrementKind::Gaussian};
  IncrementDistribution second{IncrementKind::Gaussian};
};

}  // namespace srk
