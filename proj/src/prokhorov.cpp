#include "wldist/prokhorov.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "wldist/flow.hpp"

namespace wldist {

namespace {

constexpr double kSlack = 1e-9;

long long lcm_checked(long long a, long long b) {
  const long long g = std::gcd(a, b);
  const __int128 l = static_cast<__int128>(a) / g * b;
  if (l > INT64_MAX) throw std::overflow_error("prokhorov: denominator overflow");
  return static_cast<long long>(l);
}

// Max admissible transport between supplies `a` and demands `b` (both over a
// common denominator), where arc (i, j) is open iff admissible(i, j).
template <typename Admissible>
long long admissible_flow(const std::vector<long long>& a, const std::vector<long long>& b,
                          const Admissible& admissible) {
  const int p = static_cast<int>(a.size());
  const int q = static_cast<int>(b.size());
  DinicSolver solver(p + q + 2);
  const int source = p + q, sink = p + q + 1;
  long long total_b = 0;
  for (int i = 0; i < p; ++i)
    if (a[i] > 0) solver.add_edge(source, i, a[i]);
  for (int j = 0; j < q; ++j)
    if (b[j] > 0) {
      solver.add_edge(p + j, sink, b[j]);
      total_b += b[j];
    }
  for (int i = 0; i < p; ++i) {
    if (a[i] <= 0) continue;
    for (int j = 0; j < q; ++j)
      if (b[j] > 0 && admissible(i, j)) solver.add_edge(i, p + j, total_b);
  }
  return solver.solve(source, sink);
}

struct Oriented {
  std::vector<long long> mu, nu;  // over the common denominator, ||mu|| >= ||nu||
  long long den = 1;
  long long mu_mass = 0;
  bool swapped = false;
};

Oriented orient_and_rescale(const std::vector<long long>& a, long long da,
                            const std::vector<long long>& b, long long db) {
  const long long sa = std::accumulate(a.begin(), a.end(), 0LL);
  const long long sb = std::accumulate(b.begin(), b.end(), 0LL);
  Oriented out;
  out.swapped = static_cast<__int128>(sa) * db < static_cast<__int128>(sb) * da;
  const auto& heavy = out.swapped ? b : a;
  const auto& light = out.swapped ? a : b;
  const long long dh = out.swapped ? db : da;
  const long long dl = out.swapped ? da : db;
  out.den = lcm_checked(dh, dl);
  out.mu = heavy;
  out.nu = light;
  for (auto& x : out.mu) x *= out.den / dh;
  for (auto& x : out.nu) x *= out.den / dl;
  out.mu_mass = std::accumulate(out.mu.begin(), out.mu.end(), 0LL);
  return out;
}

// Candidate scan: P = min({eps | rho(eps) <= eps} u {rho(eps) | rho(eps) > eps}).
// rho is non-increasing, so the scan over ascending candidates may stop at the
// first eps with rho(eps) <= eps; earlier candidates contribute their rho.
double scan_candidates(const Oriented& v, const std::vector<std::vector<double>>& cross,
                       bool transpose, std::vector<double> candidates) {
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  auto dist = [&](int i, int j) { return transpose ? cross[j][i] : cross[i][j]; };
  double best = std::numeric_limits<double>::infinity();
  for (double eps : candidates) {
    const long long flow =
        admissible_flow(v.mu, v.nu, [&](int i, int j) { return dist(i, j) <= eps + kSlack; });
    const double rho_val = static_cast<double>(v.mu_mass - flow) / static_cast<double>(v.den);
    if (rho_val <= eps + kSlack) {
      best = std::min(best, eps);
      break;
    }
    best = std::min(best, rho_val);
  }
  return best;
}

}  // namespace

double prokhorov_cross(const std::vector<long long>& a, long long da,
                       const std::vector<long long>& b, long long db,
                       const std::vector<std::vector<double>>& cross) {
  const Oriented v = orient_and_rescale(a, da, b, db);
  // Support-restricted candidates: rho only jumps at distances between
  // supported points, so these suffice for the scan.
  std::vector<double> candidates{0.0};
  for (std::size_t i = 0; i < v.mu.size(); ++i) {
    if (v.mu[i] <= 0) continue;
    for (std::size_t j = 0; j < v.nu.size(); ++j)
      if (v.nu[j] > 0)
        candidates.push_back(v.swapped ? cross[j][i] : cross[i][j]);
  }
  return scan_candidates(v, cross, v.swapped, std::move(candidates));
}

Rational prokhorov_cross_exact(const std::vector<long long>& a, long long da,
                               const std::vector<long long>& b, long long db,
                               const std::vector<std::vector<Rational>>& cross) {
  const Oriented v = orient_and_rescale(a, da, b, db);
  auto dist = [&](int i, int j) -> const Rational& {
    return v.swapped ? cross[j][i] : cross[i][j];
  };
  std::vector<Rational> candidates{Rational(0, 1)};
  for (std::size_t i = 0; i < v.mu.size(); ++i) {
    if (v.mu[i] <= 0) continue;
    for (std::size_t j = 0; j < v.nu.size(); ++j)
      if (v.nu[j] > 0) candidates.push_back(dist(static_cast<int>(i), static_cast<int>(j)));
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  Rational best(INT64_MAX, 1);
  for (const Rational& eps : candidates) {
    const long long flow =
        admissible_flow(v.mu, v.nu, [&](int i, int j) { return dist(i, j) <= eps; });
    const Rational rho_val(v.mu_mass - flow, v.den);
    if (rho_val <= eps) {
      best = std::min(best, eps);
      break;
    }
    best = std::min(best, rho_val);
  }
  return best;
}

Rational rho(const ScaledMeasure& mu_in, const ScaledMeasure& nu_in, const GroundSpace& space,
             double eps) {
  if (eps < 0) throw std::invalid_argument("rho: negative eps");
  if (static_cast<int>(mu_in.num.size()) != space.m ||
      static_cast<int>(nu_in.num.size()) != space.m)
    throw std::invalid_argument("rho: measure support does not match the ground space");
  const Oriented v = orient_and_rescale(mu_in.num, mu_in.denom, nu_in.num, nu_in.denom);
  auto dist = [&](int i, int j) { return v.swapped ? space.dist[j][i] : space.dist[i][j]; };
  const long long flow =
      admissible_flow(v.mu, v.nu, [&](int i, int j) { return dist(i, j) <= eps + kSlack; });
  return Rational(v.mu_mass - flow, v.den);
}

double prokhorov_distance(const ScaledMeasure& mu, const ScaledMeasure& nu,
                          const GroundSpace& space) {
  if (static_cast<int>(mu.num.size()) != space.m || static_cast<int>(nu.num.size()) != space.m)
    throw std::invalid_argument("prokhorov_distance: support does not match the ground space");
  const Oriented v = orient_and_rescale(mu.num, mu.denom, nu.num, nu.denom);
  // Full candidate set D' = {all distinct ground distances} u {0}.
  std::vector<double> candidates{0.0};
  for (int i = 0; i < space.m; ++i)
    for (int j = 0; j < space.m; ++j) candidates.push_back(space.dist[i][j]);
  return scan_candidates(v, space.dist, v.swapped, std::move(candidates));
}

}  // namespace wldist
