#pragma once

#include <string>
#include <utility>
#include <vector>

#include "wldist/rational.hpp"

namespace wldist {

// Finite nonnegative measure on an indexed point set with total mass <= 1.
// Masses are kept exact as integer numerators over one shared denominator;
// this is what makes the Prokhorov values on graphs exactly representable.
struct ScaledMeasure {
  long long denom = 1;
  std::vector<long long> num;

  ScaledMeasure() = default;
  ScaledMeasure(long long denom_, std::vector<long long> num_)
      : denom(denom_), num(std::move(num_)) {}

  std::size_t size() const { return num.size(); }
  Rational mass(std::size_t i) const { return Rational(num[i], denom); }
};

Rational total_mass(const ScaledMeasure& mu);

// Empty list means the measure satisfies its invariants.
std::vector<std::string> validate_measure(const ScaledMeasure& mu);

// Brings both measures onto the lcm of their denominators. Values are
// unchanged as rationals; throws on 64-bit denominator overflow.
std::pair<ScaledMeasure, ScaledMeasure> rescale_to_common_denominator(const ScaledMeasure& mu,
                                                                      const ScaledMeasure& nu);

// Finite pseudometric ground space shared by both transport metrics.
struct GroundSpace {
  int m = 0;
  std::vector<std::vector<double>> dist;
};

// Checks symmetry, zero diagonal, nonnegativity and the triangle inequality
// within an absolute tolerance of 1e-9. Returns the list of violations.
std::vector<std::string> validate_metric(const GroundSpace& space);

// Validation for rectangular cross-graph distance blocks (restrictions of a
// genuine metric to a bipartite block): nonnegative and finite entries only.
std::vector<std::string> validate_cross_block(const std::vector<std::vector<double>>& block);

}  // namespace wldist
