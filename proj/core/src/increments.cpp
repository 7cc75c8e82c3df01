#include "srk/increments.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/special_functions/erf.hpp>

namespace srk {

namespace {

std::vector<Atom> atoms_for(IncrementKind kind) {
  const double sqrt3 = std::sqrt(3.0);
  const double sqrt6 = std::sqrt(6.0);
  switch (kind) {
    case IncrementKind::Gaussian:
      return {};
    case IncrementKind::MatchUpTo1:
      return {{0.0, Rational(0), Rational(1)}};
    case IncrementKind::MatchUpTo3:
      return {{-1.0, Rational(1), Rational(1, 2)}, {1.0, Rational(1), Rational(1, 2)}};
    case IncrementKind::MatchUpTo5:
      return {{-sqrt3, Rational(3), Rational(1, 6)},
              {0.0, Rational(0), Rational(2, 3)},
              {sqrt3, Rational(3), Rational(1, 6)}};
    case IncrementKind::MatchUpTo7:
      return {{-sqrt6, Rational(6), Rational(1, 30)},
              {-1.0, Rational(1), Rational(3, 10)},
              {0.0, Rational(0), Rational(1, 3)},
              {1.0, Rational(1), Rational(3, 10)},
              {sqrt6, Rational(6), Rational(1, 30)}};
  }
  throw std::logic_error("unknown increment kind");
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("moment overflows int64");
  return out;
}

Rational checked_pow(const Rational& base, int e) {
  std::int64_t num = 1, den = 1;
  for (int i = 0; i < e; ++i) {
    num = checked_mul(num, base.numerator());
    den = checked_mul(den, base.denominator());
  }
  return Rational(num, den);
}

}  // namespace

IncrementDistribution::IncrementDistribution(IncrementKind kind)
    : kind_(kind), atoms_(atoms_for(kind)) {
  Rational cumulative(0);
  for (const auto& atom : atoms_) {
    cumulative += atom.probability;
    thresholds_.push_back(to_double(cumulative));
  }
}

int IncrementDistribution::matched_moments() const {
  switch (kind_) {
    case IncrementKind::Gaussian: return -1;
    case IncrementKind::MatchUpTo1: return 1;
    case IncrementKind::MatchUpTo3: return 3;
    case IncrementKind::MatchUpTo5: return 5;
    case IncrementKind::MatchUpTo7: return 7;
  }
  return 0;
}

std::string IncrementDistribution::name() const { return increment_kind_name(kind_); }

double IncrementDistribution::gaussian_quantile(double u) {
  // Phi^{-1}(u) = -sqrt(2) erfc^{-1}(2u), accurate in both tails.
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
}

Rational normal_moment(int k) {
  if (k < 0) throw std::invalid_argument("moment index must be nonnegative");
  if (k % 2 == 1) return Rational(0);
  std::int64_t acc = 1;
  for (int j = k - 1; j > 1; j -= 2) acc = checked_mul(acc, j);
  return Rational(acc);
}

Rational moment(const IncrementDistribution& d, int k) {
  if (k < 0) throw std::invalid_argument("moment index must be nonnegative");
  if (d.kind() == IncrementKind::Gaussian) return normal_moment(k);
  if (k == 0) return Rational(1);
  if (k % 2 == 1) return Rational(0);  // atoms come in +-v pairs of equal probability
  Rational acc(0);
  for (const auto& atom : d.atoms()) {
    const Rational term = checked_pow(atom.square, k / 2);
    acc += Rational(checked_mul(term.numerator(), atom.probability.numerator()),
                    checked_mul(term.denominator(), atom.probability.denominator()));
  }
  return acc;
}

std::pair<IncrementDistribution, IncrementDistribution> required_distributions(int p) {
  switch (p) {
    case 1:
      return {IncrementDistribution(IncrementKind::MatchUpTo3),
              IncrementDistribution(IncrementKind::MatchUpTo1)};
    case 2:
      return {IncrementDistribution(IncrementKind::MatchUpTo5),
              IncrementDistribution(IncrementKind::MatchUpTo3)};
    case 3:
      return {IncrementDistribution(IncrementKind::MatchUpTo7),
              IncrementDistribution(IncrementKind::MatchUpTo5)};
    default:
      throw std::invalid_argument("weak order must be 1, 2 or 3, got " + std::to_string(p));
  }
}

IncrementKind parse_increment_kind(std::string_view name) {
  if (name == "gaussian") return IncrementKind::Gaussian;
  if (name == "zero") return IncrementKind::MatchUpTo1;
  if (name == "d3") return IncrementKind::MatchUpTo3;
  if (name == "d5") return IncrementKind::MatchUpTo5;
  if (name == "d7") return IncrementKind::MatchUpTo7;
  throw std::invalid_argument("unknown increment distribution '" + std::string(name) + "'");
}

std::string increment_kind_name(IncrementKind kind) {
  switch (kind) {
    case IncrementKind::Gaussian: return "gaussian";
    case IncrementKind::MatchUpTo1: return "zero";
    case IncrementKind::MatchUpTo3: return "d3";
    case IncrementKind::MatchUpTo5: return "d5";
    case IncrementKind::MatchUpTo7: return "d7";
  }
  return "?";
}

}  // namespace srk
