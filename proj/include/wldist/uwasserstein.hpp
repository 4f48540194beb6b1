#pragma once

#include <vector>

#include "wldist/measure.hpp"

namespace wldist {

// Unbalanced Wasserstein distance for measures of total mass <= 1:
//   W(mu, nu) = (||mu|| - ||nu||) + min-cost of moving exactly ||nu|| units
// from mu to nu (demand side saturated, supply side partially used), with
// ||mu|| >= ||nu|| after an internal swap. Coincides with classical optimal
// transport on probability measures.
double uw_distance(const ScaledMeasure& mu, const ScaledMeasure& nu, const GroundSpace& space);

// Bipartite core: masses `a` over denominator `da` on the left, `b` over `db`
// on the right, cross costs between them.
double uw_cross(const std::vector<long long>& a, long long da, const std::vector<long long>& b,
                long long db, const std::vector<std::vector<double>>& cross);

}  // namespace wldist
