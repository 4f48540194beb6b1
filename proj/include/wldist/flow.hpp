#pragma once

#include <cstdint>
#include <vector>

namespace wldist {

// Integer-capacity flow network with real arc costs. Costs are only used by
// the min-cost solver, which rounds them to a 1e-9 fixed-point grid so that
// all comparisons inside the solver are exact integer comparisons.
struct FlowNetwork {
  int node_count = 0;
  int source = 0;
  int sink = 0;
  struct Arc {
    int from;
    int to;
    long long capacity;
    double cost;
  };
  std::vector<Arc> arcs;

  void add_arc(int from, int to, long long capacity, double cost = 0.0) {
    arcs.push_back({from, to, capacity, cost});
  }
};

// Value of a maximum source->sink flow (Dinic).
long long max_flow(const FlowNetwork& net);

struct MinCostResult {
  double cost = 0.0;
  bool feasible = false;
};

// Minimum cost of sending exactly `required` units, or feasible=false when no
// such flow exists. Costs must be nonnegative (they are ground distances);
// a negative-cost arc is rejected.
MinCostResult min_cost_flow(const FlowNetwork& net, long long required);

// Fixed-point scale applied to arc costs inside the min-cost solver.
inline constexpr double kCostScale = 1e9;

// Reusable Dinic solver; the convenience functions above wrap these classes.
class DinicSolver {
 public:
  explicit DinicSolver(int node_count);
  void add_edge(int from, int to, long long capacity);
  long long solve(int source, int sink);

 private:
  struct Edge {
    int to;
    long long cap;
    int rev;
  };
  bool bfs(int source, int sink);
  long long dfs(int v, int sink, long long pushed);

  std::vector<std::vector<Edge>> graph_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

// Successive shortest augmenting paths with Johnson potentials on integer
// (fixed-point) costs.
class MinCostSolver {
 public:
  explicit MinCostSolver(int node_count);
  void add_edge(int from, int to, long long capacity, long long cost);
  // Sends up to `required` units; returns (units actually sent, total cost).
  std::pair<long long, long long> solve(int source, int sink, long long required);

 private:
  struct Edge {
    int to;
    long long cap;
    long long cost;
    int rev;
  };
  std::vector<std::vector<Edge>> graph_;
  int n_;
};

}  // namespace wldist
