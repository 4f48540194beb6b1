#include "wldist/graph.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace wldist {

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& nb : adj) twice += nb.size();
  return twice / 2;
}

bool Graph::has_edge(int u, int v) const {
  const auto& nb = adj[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

Graph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 0) throw std::invalid_argument("graph_from_edges: negative vertex count");
  Graph g;
  g.n = n;
  g.adj.assign(n, {});
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::out_of_range("graph_from_edges: endpoint out of range: " + std::to_string(u) +
                              " " + std::to_string(v));
    if (u == v) throw std::invalid_argument("graph_from_edges: self-loop at " + std::to_string(u));
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second) continue;
    g.adj[u].push_back(v);
    g.adj[v].push_back(u);
  }
  for (auto& nb : g.adj) std::sort(nb.begin(), nb.end());
  return g;
}

std::vector<std::string> validate_graph(const Graph& g) {
  std::vector<std::string> issues;
  if (g.n < 0) issues.push_back("negative vertex count");
  if (static_cast<int>(g.adj.size()) != g.n) issues.push_back("adjacency size != n");
  if (g.labels && static_cast<int>(g.labels->size()) != g.n)
    issues.push_back("label vector size != n");
  for (int v = 0; v < static_cast<int>(g.adj.size()); ++v) {
    const auto& nb = g.adj[v];
    if (!std::is_sorted(nb.begin(), nb.end()))
      issues.push_back("adjacency of " + std::to_string(v) + " not sorted");
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
      issues.push_back("duplicate neighbor at " + std::to_string(v));
    for (int u : nb) {
      if (u < 0 || u >= g.n) {
        issues.push_back("neighbor out of range at " + std::to_string(v));
        continue;
      }
      if (u == v) issues.push_back("self-loop at " + std::to_string(v));
      if (!std::binary_search(g.adj[u].begin(), g.adj[u].end(), v))
        issues.push_back("asymmetric edge " + std::to_string(v) + "-" + std::to_string(u));
    }
  }
  return issues;
}

Graph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_edge_list: cannot open " + path.string());
  std::vector<std::pair<int, int>> edges;
  long long header_n = -1;
  int max_id = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;  // blank or comment-only line
    if (first == "n") {
      if (!(ls >> header_n) || header_n < 0)
        throw std::runtime_error("load_edge_list: bad header at line " + std::to_string(lineno));
      continue;
    }
    int u, v;
    try {
      u = std::stoi(first);
    } catch (const std::exception&) {
      throw std::runtime_error("load_edge_list: parse error at line " + std::to_string(lineno));
    }
    if (!(ls >> v) || u < 0 || v < 0)
      throw std::runtime_error("load_edge_list: parse error at line " + std::to_string(lineno));
    std::string extra;
    if (ls >> extra)
      throw std::runtime_error("load_edge_list: trailing tokens at line " + std::to_string(lineno));
    if (u == v)
      throw std::runtime_error("load_edge_list: self-loop at line " + std::to_string(lineno));
    edges.emplace_back(u, v);
    max_id = std::max({max_id, u, v});
  }
  const int n = header_n >= 0 ? static_cast<int>(header_n) : max_id + 1;
  if (max_id >= n)
    throw std::runtime_error("load_edge_list: vertex id " + std::to_string(max_id) +
                             " exceeds header count " + std::to_string(n));
  return graph_from_edges(n, edges);
}

Graph sample_sbm(const std::vector<int>& sizes, const std::vector<std::vector<double>>& probs,
                 Rng& rng) {
  const int blocks = static_cast<int>(sizes.size());
  if (blocks == 0) throw std::invalid_argument("sample_sbm: no blocks");
  if (static_cast<int>(probs.size()) != blocks)
    throw std::invalid_argument("sample_sbm: probability matrix size mismatch");
  int n = 0;
  for (int s : sizes) {
    if (s <= 0) throw std::invalid_argument("sample_sbm: nonpositive block size");
    n += s;
  }
  for (const auto& row : probs) {
    if (static_cast<int>(row.size()) != blocks)
      throw std::invalid_argument("sample_sbm: probability matrix size mismatch");
    for (double p : row)
      if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("sample_sbm: probability out of range");
  }
  std::vector<int> block_of(n);
  int at = 0;
  for (int b = 0; b < blocks; ++b)
    for (int i = 0; i < sizes[b]; ++i) block_of[at++] = b;
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.next_double() < probs[block_of[u]][block_of[v]]) edges.emplace_back(u, v);
  return graph_from_edges(n, edges);
}

Graph sample_sbm(const std::vector<int>& sizes, const std::vector<std::vector<double>>& probs,
                 std::uint64_t seed) {
  Rng rng(seed);
  return sample_sbm(sizes, probs, rng);
}

Graph sample_er(int n, double p, Rng& rng) { return sample_sbm({n}, {{p}}, rng); }

Graph sample_er(int n, double p, std::uint64_t seed) {
  Rng rng(seed);
  return sample_er(n, p, rng);
}

Graph blowup(const Graph& g, int k) {
  if (k < 1) throw std::invalid_argument("blowup: multiplier must be >= 1");
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < g.n; ++u)
    for (int v : g.adj[u]) {
      if (v < u) continue;
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) edges.emplace_back(u * k + i, v * k + j);
    }
  return graph_from_edges(g.n * k, edges);
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < a.n; ++u)
    for (int v : a.adj[u])
      if (u < v) edges.emplace_back(u, v);
  for (int u = 0; u < b.n; ++u)
    for (int v : b.adj[u])
      if (u < v) edges.emplace_back(a.n + u, a.n + v);
  return graph_from_edges(a.n + b.n, edges);
}

Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return graph_from_edges(n, edges);
}

Graph cycle_graph(int n) {
  if (n < 3) throw std::invalid_argument("cycle_graph: need at least 3 vertices");
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return graph_from_edges(n, edges);
}

Graph path_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return graph_from_edges(n, edges);
}

Graph star_graph(int leaves) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return graph_from_edges(leaves + 1, edges);
}

Graph empty_graph(int n) { return graph_from_edges(n, {}); }

Graph permute_graph(const Graph& g, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != g.n)
    throw std::invalid_argument("permute_graph: permutation size mismatch");
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < g.n; ++u)
    for (int v : g.adj[u])
      if (u < v) edges.emplace_back(perm[u], perm[v]);
  Graph out = graph_from_edges(g.n, edges);
  if (g.labels) {
    std::vector<int> lab(g.n);
    for (int v = 0; v < g.n; ++v) lab[perm[v]] = (*g.labels)[v];
    out.labels = std::move(lab);
  }
  return out;
}

}  // namespace wldist
