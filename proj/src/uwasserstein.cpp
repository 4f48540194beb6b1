#include "wldist/uwasserstein.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "wldist/flow.hpp"

namespace wldist {

namespace {

long long lcm_checked(long long a, long long b) {
  const long long g = std::gcd(a, b);
  const __int128 l = static_cast<__int128>(a) / g * b;
  if (l > INT64_MAX) throw std::overflow_error("uw_distance: denominator overflow");
  return static_cast<long long>(l);
}

}  // namespace

double uw_cross(const std::vector<long long>& a_in, long long da,
                const std::vector<long long>& b_in, long long db,
                const std::vector<std::vector<double>>& cross) {
  const long long sa = std::accumulate(a_in.begin(), a_in.end(), 0LL);
  const long long sb = std::accumulate(b_in.begin(), b_in.end(), 0LL);
  const bool swapped = static_cast<__int128>(sa) * db < static_cast<__int128>(sb) * da;
  const auto& heavy = swapped ? b_in : a_in;
  const auto& light = swapped ? a_in : b_in;
  const long long dh = swapped ? db : da;
  const long long dl = swapped ? da : db;

  const long long den = lcm_checked(dh, dl);
  std::vector<long long> mu = heavy, nu = light;
  for (auto& x : mu) x *= den / dh;
  for (auto& x : nu) x *= den / dl;
  const long long mu_mass = std::accumulate(mu.begin(), mu.end(), 0LL);
  const long long nu_mass = std::accumulate(nu.begin(), nu.end(), 0LL);
  const double gap = static_cast<double>(mu_mass - nu_mass) / static_cast<double>(den);
  if (nu_mass == 0) return gap;

  const int p = static_cast<int>(mu.size());
  const int q = static_cast<int>(nu.size());
  MinCostSolver solver(p + q + 2);
  const int source = p + q, sink = p + q + 1;
  for (int i = 0; i < p; ++i)
    if (mu[i] > 0) solver.add_edge(source, i, mu[i], 0);
  for (int j = 0; j < q; ++j)
    if (nu[j] > 0) solver.add_edge(p + j, sink, nu[j], 0);
  for (int i = 0; i < p; ++i) {
    if (mu[i] <= 0) continue;
    for (int j = 0; j < q; ++j) {
      if (nu[j] <= 0) continue;
      const double c = swapped ? cross[j][i] : cross[i][j];
      if (!(c >= 0.0) || !std::isfinite(c))
        throw std::invalid_argument("uw_distance: costs must be finite and nonnegative");
      solver.add_edge(i, p + j, std::min(mu[i], nu[j]),
                      static_cast<long long>(std::llround(c * kCostScale)));
    }
  }
  const auto [flow, scaled_cost] = solver.solve(source, sink, nu_mass);
  if (flow != nu_mass)
    throw std::logic_error("uw_distance: transport infeasible after mass swap");
  return gap + static_cast<double>(scaled_cost) / (kCostScale * static_cast<double>(den));
}

double uw_distance(const ScaledMeasure& mu, const ScaledMeasure& nu, const GroundSpace& space) {
  if (static_cast<int>(mu.num.size()) != space.m || static_cast<int>(nu.num.size()) != space.m)
    throw std::invalid_argument("uw_distance: support does not match the ground space");
  return uw_cross(mu.num, mu.denom, nu.num, nu.denom, space.dist);
}

}  // namespace wldist
