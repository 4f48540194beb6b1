#include "wldist/measure.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace wldist {

Rational total_mass(const ScaledMeasure& mu) {
  long long sum = 0;
  for (long long x : mu.num) sum += x;
  return Rational(sum, mu.denom);
}

std::vector<std::string> validate_measure(const ScaledMeasure& mu) {
  std::vector<std::string> issues;
  if (mu.denom <= 0) issues.push_back("denominator must be positive");
  long long sum = 0;
  for (std::size_t i = 0; i < mu.num.size(); ++i) {
    if (mu.num[i] < 0) issues.push_back("negative numerator at " + std::to_string(i));
    sum += mu.num[i];
  }
  if (mu.denom > 0 && sum > mu.denom) issues.push_back("total mass exceeds one");
  return issues;
}

std::pair<ScaledMeasure, ScaledMeasure> rescale_to_common_denominator(const ScaledMeasure& mu,
                                                                      const ScaledMeasure& nu) {
  if (mu.denom <= 0 || nu.denom <= 0)
    throw std::invalid_argument("rescale: nonpositive denominator");
  const long long g = std::gcd(mu.denom, nu.denom);
  const __int128 lcm128 = static_cast<__int128>(mu.denom) / g * nu.denom;
  if (lcm128 > INT64_MAX) throw std::overflow_error("rescale: denominator overflow");
  const long long lcm = static_cast<long long>(lcm128);
  const long long fa = lcm / mu.denom;
  const long long fb = lcm / nu.denom;
  ScaledMeasure a(lcm, mu.num), b(lcm, nu.num);
  for (auto& x : a.num) {
    if (fa != 0 && x > INT64_MAX / fa) throw std::overflow_error("rescale: numerator overflow");
    x *= fa;
  }
  for (auto& x : b.num) {
    if (fb != 0 && x > INT64_MAX / fb) throw std::overflow_error("rescale: numerator overflow");
    x *= fb;
  }
  return {std::move(a), std::move(b)};
}

std::vector<std::string> validate_metric(const GroundSpace& space) {
  constexpr double kTol = 1e-9;
  std::vector<std::string> issues;
  const int m = space.m;
  if (static_cast<int>(space.dist.size()) != m) {
    issues.push_back("distance matrix row count != m");
    return issues;
  }
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(space.dist[i].size()) != m) {
      issues.push_back("row " + std::to_string(i) + " has wrong length");
      return issues;
    }
  }
  for (int i = 0; i < m; ++i) {
    if (std::abs(space.dist[i][i]) > kTol)
      issues.push_back("nonzero diagonal at " + std::to_string(i));
    for (int j = 0; j < m; ++j) {
      if (space.dist[i][j] < -kTol || !std::isfinite(space.dist[i][j]))
        issues.push_back("invalid entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
      if (std::abs(space.dist[i][j] - space.dist[j][i]) > kTol)
        issues.push_back("asymmetry at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        if (space.dist[i][j] > space.dist[i][k] + space.dist[k][j] + kTol) {
          issues.push_back("triangle violation (" + std::to_string(i) + "," + std::to_string(j) +
                           ") via " + std::to_string(k));
          return issues;  // one witness is enough
        }
  return issues;
}

std::vector<std::string> validate_cross_block(const std::vector<std::vector<double>>& block) {
  std::vector<std::string> issues;
  for (std::size_t i = 0; i < block.size(); ++i)
    for (std::size_t j = 0; j < block[i].size(); ++j)
      if (block[i][j] < 0.0 || !std::isfinite(block[i][j]))
        issues.push_back("invalid cross entry (" + std::to_string(i) + "," + std::to_string(j) +
                         ")");
  return issues;
}

}  // namespace wldist
