#include "wldist/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace wldist {

namespace {
constexpr long long kInf = std::numeric_limits<long long>::max() / 4;
}

DinicSolver::DinicSolver(int node_count) : graph_(node_count) {}

void DinicSolver::add_edge(int from, int to, long long capacity) {
  graph_[from].push_back({to, capacity, static_cast<int>(graph_[to].size())});
  graph_[to].push_back({from, 0, static_cast<int>(graph_[from].size()) - 1});
}

bool DinicSolver::bfs(int source, int sink) {
  level_.assign(graph_.size(), -1);
  std::queue<int> q;
  level_[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (const Edge& e : graph_[v]) {
      if (e.cap > 0 && level_[e.to] < 0) {
        level_[e.to] = level_[v] + 1;
        q.push(e.to);
      }
    }
  }
  return level_[sink] >= 0;
}

long long DinicSolver::dfs(int v, int sink, long long pushed) {
  if (v == sink) return pushed;
  for (int& i = iter_[v]; i < static_cast<int>(graph_[v].size()); ++i) {
    Edge& e = graph_[v][i];
    if (e.cap <= 0 || level_[v] + 1 != level_[e.to]) continue;
    const long long got = dfs(e.to, sink, std::min(pushed, e.cap));
    if (got > 0) {
      e.cap -= got;
      graph_[e.to][e.rev].cap += got;
      return got;
    }
  }
  return 0;
}

long long DinicSolver::solve(int source, int sink) {
  if (source == sink) return 0;
  long long flow = 0;
  while (bfs(source, sink)) {
    iter_.assign(graph_.size(), 0);
    while (long long pushed = dfs(source, sink, kInf)) flow += pushed;
  }
  return flow;
}

long long max_flow(const FlowNetwork& net) {
  DinicSolver solver(net.node_count);
  for (const auto& arc : net.arcs) {
    if (arc.capacity < 0) throw std::invalid_argument("max_flow: negative capacity");
    solver.add_edge(arc.from, arc.to, arc.capacity);
  }
  return solver.solve(net.source, net.sink);
}

MinCostSolver::MinCostSolver(int node_count) : graph_(node_count), n_(node_count) {}

void MinCostSolver::add_edge(int from, int to, long long capacity, long long cost) {
  graph_[from].push_back({to, capacity, cost, static_cast<int>(graph_[to].size())});
  graph_[to].push_back({from, 0, -cost, static_cast<int>(graph_[from].size()) - 1});
}

std::pair<long long, long long> MinCostSolver::solve(int source, int sink, long long required) {
  // Successive shortest augmenting paths; costs are nonnegative, so Dijkstra
  // with Johnson potentials works from the start.
  std::vector<long long> potential(n_, 0), dist(n_);
  std::vector<int> prev_node(n_), prev_edge(n_);
  long long flow = 0, cost = 0;
  while (flow < required) {
    dist.assign(n_, kInf);
    dist[source] = 0;
    using Item = std::pair<long long, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    pq.push({0, source});
    while (!pq.empty()) {
      auto [d, v] = pq.top();
      pq.pop();
      if (d > dist[v]) continue;
      for (int i = 0; i < static_cast<int>(graph_[v].size()); ++i) {
        const Edge& e = graph_[v][i];
        if (e.cap <= 0) continue;
        const long long nd = d + e.cost + potential[v] - potential[e.to];
        if (nd < dist[e.to]) {
          dist[e.to] = nd;
          prev_node[e.to] = v;
          prev_edge[e.to] = i;
          pq.push({nd, e.to});
        }
      }
    }
    if (dist[sink] >= kInf) break;  // no augmenting path left
    for (int v = 0; v < n_; ++v)
      if (dist[v] < kInf) potential[v] += dist[v];
    long long push = required - flow;
    for (int v = sink; v != source; v = prev_node[v])
      push = std::min(push, graph_[prev_node[v]][prev_edge[v]].cap);
    for (int v = sink; v != source; v = prev_node[v]) {
      Edge& e = graph_[prev_node[v]][prev_edge[v]];
      e.cap -= push;
      graph_[v][e.rev].cap += push;
      cost += push * e.cost;
    }
    flow += push;
  }
  return {flow, cost};
}

MinCostResult min_cost_flow(const FlowNetwork& net, long long required) {
  if (required < 0) throw std::invalid_argument("min_cost_flow: negative required flow");
  MinCostSolver solver(net.node_count);
  for (const auto& arc : net.arcs) {
    if (arc.capacity < 0) throw std::invalid_argument("min_cost_flow: negative capacity");
    if (arc.cost < 0)
      throw std::invalid_argument("min_cost_flow: negative cost rejected (costs are distances)");
    solver.add_edge(arc.from, arc.to, arc.capacity,
                    static_cast<long long>(std::llround(arc.cost * kCostScale)));
  }
  const auto [flow, scaled_cost] = solver.solve(net.source, net.sink, required);
  MinCostResult result;
  result.feasible = flow == required;
  result.cost = result.feasible ? static_cast<double>(scaled_cost) / kCostScale : 0.0;
  return result;
}

}  // namespace wldist
