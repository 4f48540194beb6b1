#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "wldist/graph.hpp"

namespace wldist {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Rooted tree in preorder: parent[0] = -1, parent[i] < i. The canonical code
// is the parenthesis string of the tree rooted at a centroid (the smaller
// code when there are two centroids).
struct RootedTree {
  int order = 0;
  std::vector<int> parent;
  int height = 0;
  std::string code;

  std::vector<std::vector<int>> children() const;
};

// One representative per isomorphism class of free trees with 1..max_order
// vertices, canonically rooted, in deterministic (order, code) order.
// max_order must lie in [1, 10].
std::vector<RootedTree> enumerate_trees(int max_order);

// Exact homomorphism count via the leaf-to-root product DP:
//   cnt[node][v] = prod_children sum_{u in N(v)} cnt[child][u].
BigInt hom_count(const RootedTree& tree, const Graph& g);

// t(T, G) = hom(T, G) / |V(G)|^|V(T)| as an exact rational.
BigRational hom_density(const RootedTree& tree, const Graph& g);

// Densities of all trees from enumerate_trees(max_order), in the same order.
std::vector<BigRational> hom_density_profile(const Graph& g, int max_order);

}  // namespace wldist
