#include "wldist/treehom.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace wldist {

std::vector<std::vector<int>> RootedTree::children() const {
  std::vector<std::vector<int>> ch(order);
  for (int v = 1; v < order; ++v) ch[parent[v]].push_back(v);
  return ch;
}

namespace {

// AHU parenthesis code: a leaf is "()", an inner vertex wraps the sorted
// concatenation of its children's codes.
std::string rooted_code(const std::vector<std::vector<int>>& adj, int v, int from) {
  std::vector<std::string> parts;
  for (int u : adj[v])
    if (u != from) parts.push_back(rooted_code(adj, u, v));
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (const auto& p : parts) out += p;
  out += ")";
  return out;
}

std::vector<int> centroids(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> size(n, 1), order, parent(n, -1);
  order.reserve(n);
  order.push_back(0);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int u : adj[order[i]])
      if (u != parent[order[i]]) {
        parent[u] = order[i];
        order.push_back(u);
      }
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (parent[*it] >= 0) size[parent[*it]] += size[*it];
  std::vector<int> best;
  int best_weight = n + 1;
  for (int v = 0; v < n; ++v) {
    int weight = n - size[v];
    for (int u : adj[v])
      if (u != parent[v]) weight = std::max(weight, size[u]);
    if (weight < best_weight) {
      best_weight = weight;
      best = {v};
    } else if (weight == best_weight) {
      best.push_back(v);
    }
  }
  return best;
}

// Canonical free-tree code: the smallest rooted code over all centroids.
std::string free_code(const std::vector<std::vector<int>>& adj) {
  std::string best;
  for (int c : centroids(adj)) {
    std::string code = rooted_code(adj, c, -1);
    if (best.empty() || code < best) best = code;
  }
  return best;
}

// Rebuilds the canonical rooted tree from its code; children appear in the
// code's (sorted) order, vertices get preorder ids.
RootedTree tree_from_code(const std::string& code) {
  RootedTree t;
  t.code = code;
  std::vector<int> stack;
  int depth = -1;
  for (char c : code) {
    if (c == '(') {
      const int v = t.order++;
      t.parent.push_back(stack.empty() ? -1 : stack.back());
      stack.push_back(v);
      ++depth;
      t.height = std::max(t.height, depth);
    } else {
      stack.pop_back();
      --depth;
    }
  }
  if (!stack.empty()) throw std::logic_error("tree_from_code: unbalanced code");
  return t;
}

}  // namespace

std::vector<RootedTree> enumerate_trees(int max_order) {
  if (max_order < 1 || max_order > 10)
    throw std::invalid_argument("enumerate_trees: max_order must be in [1, 10]");
  std::vector<RootedTree> out;
  for (int n = 1; n <= max_order; ++n) {
    std::set<std::string> codes;
    if (n == 1) {
      codes.insert("()");
    } else {
      // All parent arrays with parent[i] < i cover every tree shape on n
      // vertices; duplicates are filtered by the canonical free code.
      std::vector<int> p(n, 0);
      while (true) {
        std::vector<std::vector<int>> adj(n);
        for (int i = 1; i < n; ++i) {
          adj[p[i]].push_back(i);
          adj[i].push_back(p[i]);
        }
        codes.insert(free_code(adj));
        int i = n - 1;
        while (i >= 1 && p[i] == i - 1) p[i--] = 0;
        if (i < 1) break;
        ++p[i];
      }
    }
    for (const auto& code : codes) out.push_back(tree_from_code(code));
  }
  return out;
}

BigInt hom_count(const RootedTree& tree, const Graph& g) {
  if (tree.order == 0) throw std::invalid_argument("hom_count: empty tree");
  const auto children = tree.children();
  std::vector<std::vector<BigInt>> cnt(tree.order, std::vector<BigInt>(g.n));
  for (int v = tree.order - 1; v >= 0; --v) {
    for (int gv = 0; gv < g.n; ++gv) {
      BigInt prod = 1;
      for (int c : children[v]) {
        BigInt s = 0;
        for (int u : g.adj[gv]) s += cnt[c][u];
        prod *= s;
        if (prod == 0) break;
      }
      cnt[v][gv] = prod;
    }
  }
  BigInt total = 0;
  for (int gv = 0; gv < g.n; ++gv) total += cnt[0][gv];
  return total;
}

BigRational hom_density(const RootedTree& tree, const Graph& g) {
  if (g.n == 0) throw std::invalid_argument("hom_density: empty graph");
  BigInt denom = 1;
  for (int i = 0; i < tree.order; ++i) denom *= g.n;
  return BigRational(hom_count(tree, g), denom);
}

std::vector<BigRational> hom_density_profile(const Graph& g, int max_order) {
  std::vector<BigRational> out;
  for (const auto& tree : enumerate_trees(max_order)) out.push_back(hom_density(tree, g));
  return out;
}

}  // namespace wldist
