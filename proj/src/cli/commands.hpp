#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wldist/graph.hpp"

namespace wldist::cli {

inline constexpr int kSchemaVersion = 1;

// "fixed:h" (or a bare integer) / "stable-plus:k".
struct HMode {
  bool stable_plus = false;
  int value = 0;
};
HMode parse_h_mode(const std::string& text);

// Lossless double formatting shared by every CSV and JSON writer.
std::string fmt_double(double x);

struct DistOptions {
  std::string metric = "wasserstein";  // or "prokhorov"
  std::string h = "3";                 // level or "inf"
  double eps = 1e-3;                   // additive error for wasserstein h=inf
  bool exact = false;                  // print the exact rational (prokhorov)
};
int cmd_dist(const std::string& graph_a, const std::string& graph_b, const DistOptions& opt,
             std::ostream& out);

struct MatrixOptions {
  std::string metric = "wasserstein";
  std::string h_mode = "stable-plus:3";
  std::string out_csv;
  std::string checkpoint;  // empty: no checkpointing
  int jobs = 1;
};
int cmd_matrix(const std::string& dir, const std::string& name, const MatrixOptions& opt,
               std::ostream& out);

struct SbmOptions {
  int n = 30;
  int count = 50;
  double p = 0.5;
  double qmin = 0.1;
  double qmax = 0.5;
  std::string h_mode = "stable-plus:3";
  std::string models = "64x2";  // comma-separated "<width>x<layers>"
  std::string activation = "relu";
  double scale = 1.0;
  std::uint64_t seed = 1;
  std::string out_csv;
};
int cmd_sbm(const SbmOptions& opt, std::ostream& out);

struct KnnOptions {
  std::string matrix_csv;
  int splits = 10;
  double train_frac = 0.9;
  std::uint64_t seed = 1;
};
int cmd_knn(const std::string& dir, const std::string& name, const KnnOptions& opt,
            std::ostream& out);

int cmd_trees(const std::string& graph_path, int max_order, std::ostream& out);

struct EmbedOptions {
  std::string model_file;        // JSON model; wins over model_spec
  std::string model_spec = "64x2";
  std::string activation = "relu";
  double scale = 1.0;
  std::uint64_t seed = 1;
  std::string out_csv;
};
int cmd_embed(const std::string& dir, const std::string& name, const EmbedOptions& opt,
              std::ostream& out);

// CSV helpers (header row mandatory, '.' decimals, UTF-8).
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);
std::vector<std::vector<std::string>> read_csv(const std::string& path);

// Spearman rank correlation with average ranks on ties.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation
};
MeanStd mean_std(const std::vector<double>& xs);

// 1-NN accuracy protocol shared by cmd_knn and the acceptance suite: seeded
// shuffles, train_frac split, nearest-neighbor ties broken by the lowest
// training index.
std::vector<double> knn_accuracies(const std::vector<std::vector<double>>& dist,
                                   const std::vector<int>& labels, int splits, double train_frac,
                                   std::uint64_t seed);

// Pairwise distance matrix of a dataset; checkpoint may be empty.
std::vector<std::vector<double>> dataset_distance_matrix(const std::vector<Graph>& graphs,
                                                         const std::string& metric,
                                                         const HMode& mode, int jobs,
                                                         const std::string& checkpoint);

}  // namespace wldist::cli
