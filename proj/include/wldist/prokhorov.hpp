#pragma once

#include <vector>

#include "wldist/measure.hpp"
#include "wldist/rational.hpp"

namespace wldist {

// rho(eps) = ||mu|| - (max admissible transport)/denom, the inner value of the
// Prokhorov linear program. Admissible arcs are pairs with d(x_i, x_j) <=
// eps + 1e-9 (closed threshold); the maximum is a single max-flow. The result
// is an exact rational in mass units. Swaps internally so ||mu|| >= ||nu||.
Rational rho(const ScaledMeasure& mu, const ScaledMeasure& nu, const GroundSpace& space,
             double eps);

// Exact Prokhorov distance via the candidate scan
//   P = min({eps in D' | rho(eps) <= eps} u {rho(eps) | eps in D', rho(eps) > eps}),
// D' = {all distinct ground distances} u {0}. Candidates are evaluated in
// ascending order; comparisons use an absolute slack of 1e-9.
double prokhorov_distance(const ScaledMeasure& mu, const ScaledMeasure& nu,
                          const GroundSpace& space);

// Bipartite core used by the pairwise refinement: masses `a` over denominator
// `da` on the left point set, `b` over `db` on the right, and the cross
// distance block. Only cross distances enter the flow and the candidate set.
double prokhorov_cross(const std::vector<long long>& a, long long da,
                       const std::vector<long long>& b, long long db,
                       const std::vector<std::vector<double>>& cross);

// Same computation with exact rational ground distances and exact
// comparisons; used by the exact mode of the refinement pipeline.
Rational prokhorov_cross_exact(const std::vector<long long>& a, long long da,
                               const std::vector<long long>& b, long long db,
                               const std::vector<std::vector<Rational>>& cross);

}  // namespace wldist
