#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wldist/rng.hpp"

namespace wldist {

// Finite simple undirected graph. Adjacency lists are sorted and symmetric,
// vertex ids are dense 0-based. Node labels, when present, are carried for
// dataset bookkeeping only; no metric consumes them (the refinement always
// starts from the constant coloring).
struct Graph {
  int n = 0;
  std::vector<std::vector<int>> adj;
  std::optional<std::vector<int>> labels;

  int order() const { return n; }
  std::size_t edge_count() const;
  bool has_edge(int u, int v) const;
  int degree(int v) const { return static_cast<int>(adj[v].size()); }
};

// Builds a graph from an edge list; duplicate edges are collapsed.
// Throws on self-loops or out-of-range endpoints.
Graph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges);

// Returns human-readable invariant violations; empty means the graph is valid.
std::vector<std::string> validate_graph(const Graph& g);

// Edge-list file: optional header "n <count>", then "u v" per line,
// "#" starts a comment. Reports parse errors with line numbers.
Graph load_edge_list(const std::filesystem::path& path);

Graph sample_sbm(const std::vector<int>& sizes, const std::vector<std::vector<double>>& probs,
                 Rng& rng);
Graph sample_sbm(const std::vector<int>& sizes, const std::vector<std::vector<double>>& probs,
                 std::uint64_t seed);
Graph sample_er(int n, double p, Rng& rng);
Graph sample_er(int n, double p, std::uint64_t seed);

// Replaces every vertex by k pairwise non-adjacent copies; copies of u and v
// are adjacent iff uv is an edge. Preserves the induced graphon.
Graph blowup(const Graph& g, int k);

Graph disjoint_union(const Graph& a, const Graph& b);

// Small named graphs used all over the tests and CLI docs.
Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph path_graph(int n);
Graph star_graph(int leaves);
Graph empty_graph(int n);

// Applies a vertex permutation: vertex v of the result is perm[v] of g.
Graph permute_graph(const Graph& g, const std::vector<int>& perm);

}  // namespace wldist
