#include "wldist/wl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wldist/prokhorov.hpp"
#include "wldist/uwasserstein.hpp"

namespace wldist {

namespace {

using Signature = std::pair<int, std::vector<int>>;

// One refinement round: the new color of v is the rank of its signature
// (old color, sorted multiset of neighbor colors) among all distinct
// signatures, i.e. dense ids in sorted-signature order.
std::vector<int> refine_once(const std::vector<std::vector<int>>& adj, const std::vector<int>& col,
                             int* count_out) {
  const int n = static_cast<int>(adj.size());
  std::vector<Signature> sig(n);
  for (int v = 0; v < n; ++v) {
    std::vector<int> nb;
    nb.reserve(adj[v].size());
    for (int u : adj[v]) nb.push_back(col[u]);
    std::sort(nb.begin(), nb.end());
    sig[v] = {col[v], std::move(nb)};
  }
  std::vector<Signature> keys = sig;
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::vector<int> out(n);
  for (int v = 0; v < n; ++v)
    out[v] = static_cast<int>(std::lower_bound(keys.begin(), keys.end(), sig[v]) - keys.begin());
  *count_out = static_cast<int>(keys.size());
  return out;
}

}  // namespace

int WlColoring::color_count(int h) const {
  if (h < 0 || h >= static_cast<int>(levels.size()))
    throw std::out_of_range("WlColoring::color_count: level out of range");
  int mx = -1;
  for (int c : levels[h]) mx = std::max(mx, c);
  return mx + 1;
}

WlColoring wl_refine(const Graph& g, int max_h) {
  if (max_h < 0) throw std::invalid_argument("wl_refine: negative level");
  WlColoring out;
  out.levels.emplace_back(g.n, 0);
  int colors = g.n > 0 ? 1 : 0;
  for (int h = 1; h <= max_h; ++h) {
    int count = 0;
    out.levels.push_back(refine_once(g.adj, out.levels.back(), &count));
    if (out.stable_at < 0 && count == colors) out.stable_at = h;
    colors = count;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pairwise refinement engine
// ---------------------------------------------------------------------------

struct PairRefinement::Impl {
  Graph g, h;
  BaseMetric base;
  int n = 0, m = 0;
  std::vector<std::vector<int>> union_adj;

  std::vector<std::vector<int>> jcols;  // joint colors per level, size n+m
  std::vector<int> jcounts;
  std::vector<ColorLevel> levels;

  std::vector<std::vector<std::vector<double>>> mats;     // color matrices per level
  std::vector<std::vector<std::vector<Rational>>> xmats;  // exact (prokhorov mode)
  std::vector<double> deltas;
  std::vector<Rational> xdeltas;
  std::vector<char> have_delta;

  int stab = -1;

  Impl(const Graph& g_in, const Graph& h_in, BaseMetric base_in)
      : g(g_in), h(h_in), base(base_in), n(g_in.n), m(h_in.n) {
    if (n == 0 || m == 0) throw std::invalid_argument("PairRefinement: graphs must be non-empty");
    union_adj.resize(n + m);
    for (int v = 0; v < n; ++v) union_adj[v] = g.adj[v];
    for (int v = 0; v < m; ++v) {
      union_adj[n + v].reserve(h.adj[v].size());
      for (int u : h.adj[v]) union_adj[n + v].push_back(n + u);
    }
    // Level 0: constant coloring on both sides.
    jcols.emplace_back(n + m, 0);
    jcounts.push_back(1);
    ColorLevel l0;
    l0.gcol.assign(n, 0);
    l0.hcol.assign(m, 0);
    l0.gc = l0.hc = 1;
    l0.gsize = {static_cast<long long>(n)};
    l0.hsize = {static_cast<long long>(m)};
    levels.push_back(std::move(l0));
  }

  void side_classes(const std::vector<int>& jcol, int offset, int count,
                    const std::vector<int>& prev_side_col, int prev_classes,
                    const std::vector<std::vector<int>>& adj, std::vector<int>& side_col,
                    int& side_count, std::vector<long long>& size,
                    std::vector<std::vector<std::pair<int, long long>>>& meas,
                    std::vector<int>& parent) {
    // Ranks of joint class ids present on this side, in increasing joint id.
    std::vector<int> present;
    for (int v = 0; v < count; ++v) present.push_back(jcol[offset + v]);
    std::sort(present.begin(), present.end());
    present.erase(std::unique(present.begin(), present.end()), present.end());
    side_count = static_cast<int>(present.size());
    side_col.assign(count, 0);
    std::vector<int> rep(side_count, -1);
    for (int v = 0; v < count; ++v) {
      const int rank = static_cast<int>(
          std::lower_bound(present.begin(), present.end(), jcol[offset + v]) - present.begin());
      side_col[v] = rank;
      if (rep[rank] < 0) rep[rank] = v;
    }
    size.assign(side_count, 0);
    for (int v = 0; v < count; ++v) ++size[side_col[v]];
    parent.assign(side_count, -1);
    meas.assign(side_count, {});
    std::vector<long long> counts(prev_classes, 0);
    for (int a = 0; a < side_count; ++a) {
      const int v = rep[a];
      parent[a] = prev_side_col[v];
      std::fill(counts.begin(), counts.end(), 0);
      for (int u : adj[v + offset]) ++counts[prev_side_col[u - offset]];
      for (int c = 0; c < prev_classes; ++c)
        if (counts[c] > 0) meas[a].emplace_back(c, counts[c]);
    }
  }

  void ensure_colors(int t) {
    while (static_cast<int>(levels.size()) <= t) {
      const int cur = static_cast<int>(levels.size()) - 1;
      int count = 0;
      std::vector<int> next = refine_once(union_adj, jcols[cur], &count);
      ColorLevel lv;
      lv.same_partition_as_prev = count == jcounts[cur];
      side_classes(next, 0, n, levels[cur].gcol, levels[cur].gc, union_adj, lv.gcol, lv.gc,
                   lv.gsize, lv.gmeas, lv.gparent);
      side_classes(next, n, m, levels[cur].hcol, levels[cur].hc, union_adj, lv.hcol, lv.hc,
                   lv.hsize, lv.hmeas, lv.hparent);
      jcols.push_back(std::move(next));
      jcounts.push_back(count);
      levels.push_back(std::move(lv));
      if (stab < 0 && levels.back().same_partition_as_prev)
        stab = static_cast<int>(levels.size()) - 1;
    }
  }

  // Distance between the neighbor measures of class a (left) and b (right),
  // with ground distances read from the previous level's matrix.
  template <typename Mat, typename Value, typename Metric>
  Value class_pair_distance(const ColorLevel& lv, int a, int b, const Mat& prev,
                            const Metric& metric) {
    const auto& ma = lv.gmeas[a];
    const auto& mb = lv.hmeas[b];
    std::vector<long long> av(ma.size()), bv(mb.size());
    for (std::size_t i = 0; i < ma.size(); ++i) av[i] = ma[i].second;
    for (std::size_t j = 0; j < mb.size(); ++j) bv[j] = mb[j].second;
    std::vector<std::vector<typename Mat::value_type::value_type>> sub(
        ma.size(), std::vector<typename Mat::value_type::value_type>(mb.size()));
    for (std::size_t i = 0; i < ma.size(); ++i)
      for (std::size_t j = 0; j < mb.size(); ++j) sub[i][j] = prev[ma[i].first][mb[j].first];
    return metric(av, bv, sub);
  }

  void ensure_matrix(int t) {
    ensure_colors(t);
    if (static_cast<int>(mats.size()) > t) return;
    if (mats.empty()) {
      mats.push_back({{0.0}});
      xmats.push_back({{Rational(0, 1)}});
    }
    while (static_cast<int>(mats.size()) <= t) {
      const int lvl = static_cast<int>(mats.size());
      const ColorLevel& lv = levels[lvl];
      std::vector<std::vector<double>> mat(lv.gc, std::vector<double>(lv.hc, 0.0));
      std::vector<std::vector<Rational>> xmat;
      if (base == BaseMetric::prokhorov)
        xmat.assign(lv.gc, std::vector<Rational>(lv.hc));
      for (int a = 0; a < lv.gc; ++a) {
        for (int b = 0; b < lv.hc; ++b) {
          if (base == BaseMetric::prokhorov) {
            const Rational val = class_pair_distance<std::vector<std::vector<Rational>>, Rational>(
                lv, a, b, xmats[lvl - 1],
                [&](const std::vector<long long>& av, const std::vector<long long>& bv,
                    const std::vector<std::vector<Rational>>& sub) {
                  return prokhorov_cross_exact(av, n, bv, m, sub);
                });
            xmat[a][b] = val;
            mat[a][b] = val.to_double();
          } else {
            mat[a][b] = class_pair_distance<std::vector<std::vector<double>>, double>(
                lv, a, b, mats[lvl - 1],
                [&](const std::vector<long long>& av, const std::vector<long long>& bv,
                    const std::vector<std::vector<double>>& sub) {
                  return uw_cross(av, n, bv, m, sub);
                });
          }
        }
      }
      mats.push_back(std::move(mat));
      if (base == BaseMetric::prokhorov) xmats.push_back(std::move(xmat));
    }
  }

  void ensure_delta(int t) {
    ensure_matrix(t);
    if (static_cast<int>(deltas.size()) <= t) {
      deltas.resize(t + 1, 0.0);
      xdeltas.resize(t + 1);
      have_delta.resize(t + 1, 0);
    }
    if (have_delta[t]) return;
    const ColorLevel& lv = levels[t];
    if (base == BaseMetric::prokhorov) {
      xdeltas[t] = prokhorov_cross_exact(lv.gsize, n, lv.hsize, m, xmats[t]);
      deltas[t] = xdeltas[t].to_double();
    } else {
      deltas[t] = uw_cross(lv.gsize, n, lv.hsize, m, mats[t]);
    }
    have_delta[t] = 1;
  }

  int stabilization() {
    for (int t = 1; stab < 0; ++t) {
      ensure_colors(t);
      if (t > n + m + 1) throw std::logic_error("stabilization_index: refinement did not settle");
    }
    return stab;
  }
};

PairRefinement::PairRefinement(const Graph& g, const Graph& h, BaseMetric base)
    : impl_(std::make_unique<Impl>(g, h, base)) {}
PairRefinement::~PairRefinement() = default;
PairRefinement::PairRefinement(PairRefinement&&) noexcept = default;

const Graph& PairRefinement::left() const { return impl_->g; }
const Graph& PairRefinement::right() const { return impl_->h; }
BaseMetric PairRefinement::base() const { return impl_->base; }

const ColorLevel& PairRefinement::level(int t) {
  if (t < 0) throw std::invalid_argument("PairRefinement::level: negative level");
  impl_->ensure_colors(t);
  return impl_->levels[t];
}

const std::vector<std::vector<double>>& PairRefinement::color_matrix(int t) {
  if (t < 0) throw std::invalid_argument("PairRefinement::color_matrix: negative level");
  impl_->ensure_matrix(t);
  return impl_->mats[t];
}

const std::vector<std::vector<Rational>>& PairRefinement::color_matrix_exact(int t) {
  if (impl_->base != BaseMetric::prokhorov)
    throw std::logic_error("color_matrix_exact: exact matrices exist in prokhorov mode only");
  impl_->ensure_matrix(t);
  return impl_->xmats[t];
}

double PairRefinement::delta(int t) {
  impl_->ensure_delta(t);
  return impl_->deltas[t];
}

Rational PairRefinement::delta_exact(int t) {
  if (impl_->base != BaseMetric::prokhorov)
    throw std::logic_error("delta_exact: exact values exist in prokhorov mode only");
  impl_->ensure_delta(t);
  return impl_->xdeltas[t];
}

int PairRefinement::stabilization_index() { return impl_->stabilization(); }

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

CrossDistanceMatrix pair_distance_matrix(const Graph& g, const Graph& h, int level,
                                         BaseMetric base) {
  PairRefinement ref(g, h, base);
  const auto& mat = ref.color_matrix(level);
  const ColorLevel& lv = ref.level(level);
  CrossDistanceMatrix out;
  out.h = level;
  out.entries.assign(g.n, std::vector<double>(h.n, 0.0));
  for (int u = 0; u < g.n; ++u)
    for (int v = 0; v < h.n; ++v) out.entries[u][v] = mat[lv.gcol[u]][lv.hcol[v]];
  return out;
}

double delta_h(const Graph& g, const Graph& h, int level, BaseMetric base) {
  PairRefinement ref(g, h, base);
  return ref.delta(level);
}

Rational delta_h_exact(const Graph& g, const Graph& h, int level) {
  PairRefinement ref(g, h, BaseMetric::prokhorov);
  return ref.delta_exact(level);
}

int stabilization_index(const Graph& g, const Graph& h) {
  PairRefinement ref(g, h, BaseMetric::wasserstein);
  return ref.stabilization_index();
}

namespace {

long long default_cap(int n, int m) {
  const long long nm = static_cast<long long>(n) * m;
  return nm * nm;
}

}  // namespace

DeltaInfResult delta_inf_P(const Graph& g, const Graph& h, DeltaInfOptions opt) {
  PairRefinement ref(g, h, BaseMetric::prokhorov);
  const int n = g.n, m = h.n;
  const long long cap = opt.level_cap < 0 ? default_cap(n, m) : opt.level_cap;

  // Per vertex pair: sup over levels of D_t/t. The sup is attained by the
  // time the matrix sequence reaches its fixed point, because beyond it D_t
  // is constant and D_t/t decreases.
  std::vector<std::vector<Rational>> sup(n, std::vector<Rational>(m));
  DeltaInfResult res;
  for (long long t = 1;; ++t) {
    if (t > cap)
      throw std::runtime_error("delta_inf_P: level cap of " + std::to_string(cap) + " exceeded");
    const int ti = static_cast<int>(t);
    const auto& mat = ref.color_matrix_exact(ti);
    const ColorLevel& lv = ref.level(ti);
    const Rational inv(1, t);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < m; ++v) {
        const Rational val = mat[lv.gcol[u]][lv.hcol[v]] * inv;
        if (val > sup[u][v]) sup[u][v] = val;
      }
    if (t >= 2 && lv.same_partition_as_prev) {
      const auto& prev = ref.color_matrix_exact(ti - 1);
      bool fixed = true;
      for (int a = 0; a < lv.gc && fixed; ++a)
        for (int b = 0; b < lv.hc && fixed; ++b)
          if (mat[a][b] != prev[lv.gparent[a]][lv.hparent[b]]) fixed = false;
      if (fixed) {
        res.stabilized_at = ti;
        res.levels_used = ti;
        break;
      }
    }
  }

  const std::vector<long long> unit_g(n, 1), unit_h(m, 1);
  res.value_exact = prokhorov_cross_exact(unit_g, n, unit_h, m, sup);
  res.value = res.value_exact.to_double();
  return res;
}

DeltaInfResult delta_inf_W(const Graph& g, const Graph& h, double eps, DeltaInfOptions opt) {
  if (!(eps > 0)) throw std::invalid_argument("delta_inf_W: eps must be positive");
  PairRefinement ref(g, h, BaseMetric::wasserstein);
  const int n = g.n, m = h.n;
  const long long cap = opt.level_cap < 0 ? default_cap(n, m) : opt.level_cap;

  // After round_from levels, entries are rounded to the 1/(n*m)^round_from
  // grid; fixpoint detection runs on the rounded sequence. When the grid
  // exceeds double precision the rounding degenerates to the identity, which
  // still terminates: the clamped sequence is nondecreasing in a finite set.
  const int round_from = static_cast<int>(std::ceil(std::log2(1.0 / eps)));
  const double grid = std::pow(static_cast<double>(n) * m, round_from);
  auto maybe_round = [&](double x, long long level) {
    if (level <= round_from) return x;
    const double scaled = x * grid;
    if (!(scaled < 9.007199254740992e15)) return x;  // 2^53: grid finer than doubles
    return std::round(scaled) / grid;
  };

  std::vector<std::vector<double>> sup(n, std::vector<double>(m, 0.0));
  std::vector<std::vector<std::vector<double>>> emats;  // rounded matrices per level
  emats.push_back({{0.0}});
  DeltaInfResult res;
  res.eps = eps;
  for (long long t = 1;; ++t) {
    if (t > cap)
      throw std::runtime_error("delta_inf_W: level cap of " + std::to_string(cap) + " exceeded");
    const int ti = static_cast<int>(t);
    const ColorLevel& lv = ref.level(ti);
    const auto& prev = emats[ti - 1];
    std::vector<std::vector<double>> cur(lv.gc, std::vector<double>(lv.hc, 0.0));
    for (int a = 0; a < lv.gc; ++a) {
      const auto& ma = lv.gmeas[a];
      std::vector<long long> av(ma.size());
      for (std::size_t i = 0; i < ma.size(); ++i) av[i] = ma[i].second;
      for (int b = 0; b < lv.hc; ++b) {
        const auto& mb = lv.hmeas[b];
        std::vector<long long> bv(mb.size());
        std::vector<std::vector<double>> sub(ma.size(), std::vector<double>(mb.size()));
        for (std::size_t j = 0; j < mb.size(); ++j) bv[j] = mb[j].second;
        for (std::size_t i = 0; i < ma.size(); ++i)
          for (std::size_t j = 0; j < mb.size(); ++j) sub[i][j] = prev[ma[i].first][mb[j].first];
        double val = maybe_round(uw_cross(av, n, bv, m, sub), t);
        // Distances of iterated measures only increase with the level; the
        // clamp keeps the rounded sequence monotone as well.
        val = std::max(val, prev[lv.gparent[a]][lv.hparent[b]]);
        cur[a][b] = val;
      }
    }
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < m; ++v)
        sup[u][v] = std::max(sup[u][v], cur[lv.gcol[u]][lv.hcol[v]] / static_cast<double>(t));
    bool fixed = false;
    if (t >= 2 && lv.same_partition_as_prev) {
      fixed = true;
      for (int a = 0; a < lv.gc && fixed; ++a)
        for (int b = 0; b < lv.hc && fixed; ++b)
          if (cur[a][b] != prev[lv.gparent[a]][lv.hparent[b]]) fixed = false;
    }
    emats.push_back(std::move(cur));
    if (fixed) {
      res.stabilized_at = ti;
      res.levels_used = ti;
      break;
    }
  }

  const std::vector<long long> unit_g(n, 1), unit_h(m, 1);
  res.value = uw_cross(unit_g, n, unit_h, m, sup);
  return res;
}

}  // namespace wldist
