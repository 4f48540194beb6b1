#include "wldist/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace wldist {

int Dataset::num_classes() const {
  std::set<int> classes(class_labels.begin(), class_labels.end());
  return static_cast<int>(classes.size());
}

namespace {

std::vector<long long> read_int_column(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("load_tudataset: missing file " + file.string());
  std::vector<long long> out;
  std::string line;
  while (std::getline(in, line)) {
    std::string token;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) token += c;
    if (token.empty()) continue;
    out.push_back(std::stoll(token));
  }
  return out;
}

std::vector<std::pair<long long, long long>> read_edge_pairs(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("load_tudataset: missing file " + file.string());
  std::vector<std::pair<long long, long long>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    long long u, v;
    if (!(ls >> u)) continue;
    if (!(ls >> v))
      throw std::runtime_error("load_tudataset: malformed edge at " + file.string() + ":" +
                               std::to_string(lineno));
    out.emplace_back(u, v);
  }
  return out;
}

}  // namespace

Dataset load_tudataset(const std::filesystem::path& dir, const std::string& name) {
  const auto base = dir / name;
  const auto indicator = read_int_column(base.string() + "_graph_indicator.txt");
  const auto graph_labels = read_int_column(base.string() + "_graph_labels.txt");
  const auto edges = read_edge_pairs(base.string() + "_A.txt");

  const long long num_vertices = static_cast<long long>(indicator.size());
  const long long num_graphs = static_cast<long long>(graph_labels.size());
  std::vector<int> local_id(num_vertices);
  std::vector<int> graph_size(num_graphs, 0);
  for (long long v = 0; v < num_vertices; ++v) {
    const long long gid = indicator[v];
    if (gid < 1 || gid > num_graphs)
      throw std::runtime_error("load_tudataset: graph indicator out of range at vertex " +
                               std::to_string(v + 1));
    local_id[v] = graph_size[gid - 1]++;
  }

  std::vector<std::vector<std::pair<int, int>>> per_graph_edges(num_graphs);
  for (auto [u, v] : edges) {
    if (u < 1 || v < 1 || u > num_vertices || v > num_vertices)
      throw std::runtime_error("load_tudataset: edge endpoint out of range");
    const long long gu = indicator[u - 1], gv = indicator[v - 1];
    if (gu != gv)
      throw std::runtime_error("load_tudataset: edge " + std::to_string(u) + "-" +
                               std::to_string(v) + " joins two graphs");
    per_graph_edges[gu - 1].emplace_back(local_id[u - 1], local_id[v - 1]);
  }

  std::vector<std::vector<int>> node_labels;
  const auto labels_file = base.string() + "_node_labels.txt";
  if (std::filesystem::exists(labels_file)) {
    const auto flat = read_int_column(labels_file);
    if (static_cast<long long>(flat.size()) != num_vertices)
      throw std::runtime_error("load_tudataset: node label count mismatch");
    node_labels.assign(num_graphs, {});
    for (long long v = 0; v < num_vertices; ++v)
      node_labels[indicator[v] - 1].push_back(static_cast<int>(flat[v]));
  }

  Dataset ds;
  ds.name = name;
  ds.graphs.reserve(num_graphs);
  for (long long i = 0; i < num_graphs; ++i) {
    Graph g = graph_from_edges(graph_size[i], per_graph_edges[i]);
    if (!node_labels.empty()) g.labels = node_labels[i];
    ds.graphs.push_back(std::move(g));
    ds.class_labels.push_back(static_cast<int>(graph_labels[i]));
  }
  return ds;
}

}  // namespace wldist
