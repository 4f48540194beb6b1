#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "wldist/graph.hpp"

namespace wldist {

struct Dataset {
  std::string name;
  std::vector<Graph> graphs;
  std::vector<int> class_labels;

  std::size_t size() const { return graphs.size(); }
  int num_classes() const;
};

// Loads a dataset in the published TUDataset layout:
//   <name>_A.txt               1-based "u, v" edge pairs
//   <name>_graph_indicator.txt 1-based graph id per vertex
//   <name>_graph_labels.txt    class label per graph
//   <name>_node_labels.txt     optional node label per vertex
// Vertex ids are remapped to dense 0-based ids per graph. An edge joining
// vertices of two different graphs is a hard error.
Dataset load_tudataset(const std::filesystem::path& dir, const std::string& name);

}  // namespace wldist
