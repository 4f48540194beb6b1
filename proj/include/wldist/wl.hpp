#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "wldist/graph.hpp"
#include "wldist/measure.hpp"
#include "wldist/rational.hpp"

namespace wldist {

enum class BaseMetric { prokhorov, wasserstein };

// Color refinement trace of a single graph. Level 0 is the constant coloring;
// level h+1 refines by the multiset of neighbor colors. Color ids are dense
// per level, assigned in sorted-signature order.
struct WlColoring {
  std::vector<std::vector<int>> levels;  // levels[h][v]
  int stable_at = -1;                    // first h >= 1 with partition_h == partition_{h-1}

  int color_count(int h) const;
};

WlColoring wl_refine(const Graph& g, int max_h);

// Vertex-level matrix of d^h distances between the level-h colors of two
// graphs. Entries are nonnegative, nondecreasing in h, and equal for vertex
// pairs whose level-h colors coincide.
struct CrossDistanceMatrix {
  int h = 0;
  std::vector<std::vector<double>> entries;  // |V(G)| x |V(H)|
};

CrossDistanceMatrix pair_distance_matrix(const Graph& g, const Graph& h, int level,
                                         BaseMetric base);

// Graph-level distance between the two distributions of iterated degree
// measures after `level` refinement rounds.
double delta_h(const Graph& g, const Graph& h, int level, BaseMetric base);

// Exact rational value of delta_P^h; all entries live on the 1/lcm(n,m) grid.
Rational delta_h_exact(const Graph& g, const Graph& h, int level);

// Smallest h >= 1 at which the joint color partition of the disjoint union
// stops refining.
int stabilization_index(const Graph& g, const Graph& h);

struct DeltaInfOptions {
  // Hard cap on refinement levels; -1 means the default (n*m)^2.
  long long level_cap = -1;
};

struct DeltaInfResult {
  double value = 0.0;
  Rational value_exact;  // meaningful for the Prokhorov variant only
  int levels_used = 0;   // last level evaluated
  int stabilized_at = 0; // level T with D_T == D_{T-1} and stable partition
  double eps = 0.0;      // additive error guarantee (Wasserstein variant)
};

// delta_P^inf: per-pair sup over h >= 1 of D_h/h, evaluated exactly; the
// matrix sequence is iterated until it reaches its fixed point, then one
// Prokhorov step over the assembled ground matrix gives the result.
DeltaInfResult delta_inf_P(const Graph& g, const Graph& h, DeltaInfOptions opt = {});

// delta_W^inf with additive error eps: after ceil(log2(1/eps)) levels the
// matrices are rounded to the 1/(n*m)^ceil(log2(1/eps)) grid and the fixed
// point is detected on the rounded sequence.
DeltaInfResult delta_inf_W(const Graph& g, const Graph& h, double eps, DeltaInfOptions opt = {});

// Combinatorial data of one refinement level of a graph pair. Colors are
// per-side dense ids derived from the joint refinement of the disjoint union,
// so stabilization is detected on the pair, not per graph.
struct ColorLevel {
  std::vector<int> gcol, hcol;   // per-vertex color ranks
  int gc = 0, hc = 0;            // class counts per side
  std::vector<long long> gsize, hsize;
  // Neighbor measures per class over previous-level ranks (levels >= 1):
  // list of (previous rank, neighbor count) per class, counts over |V|.
  std::vector<std::vector<std::pair<int, long long>>> gmeas, hmeas;
  std::vector<int> gparent, hparent;  // class -> previous-level class
  bool same_partition_as_prev = false;
};

// Parallel refinement engine for one graph pair. Computes levels lazily and
// caches one distance value per distinct color pair and level, which is what
// keeps the whole run polynomial in practice.
class PairRefinement {
 public:
  PairRefinement(const Graph& g, const Graph& h, BaseMetric base);
  ~PairRefinement();
  PairRefinement(PairRefinement&&) noexcept;

  const Graph& left() const;
  const Graph& right() const;
  BaseMetric base() const;

  const ColorLevel& level(int t);  // combinatorial data only

  // Color-indexed distance matrix at level t (gc x hc).
  const std::vector<std::vector<double>>& color_matrix(int t);
  const std::vector<std::vector<Rational>>& color_matrix_exact(int t);  // P mode

  double delta(int t);
  Rational delta_exact(int t);  // P mode

  int stabilization_index();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace wldist
