#include <iostream>

#include <CLI11.hpp>

#include "cli/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Iterated-degree-measure graph distances, MPNN lower bounds and tree densities"};
  app.require_subcommand(1);

  // dist
  auto* dist = app.add_subcommand("dist", "Distance between two edge-list graphs");
  std::string graph_a, graph_b;
  wldist::cli::DistOptions dopt;
  dist->add_option("graphA", graph_a, "first edge-list file")->required();
  dist->add_option("graphB", graph_b, "second edge-list file")->required();
  dist->add_option("--metric", dopt.metric, "prokhorov or wasserstein")
      ->default_val("wasserstein");
  dist->add_option("--h", dopt.h, "refinement level or 'inf'")->default_val("3");
  dist->add_option("--eps", dopt.eps, "additive error for wasserstein --h inf")
      ->default_val(1e-3);
  dist->add_flag("--exact", dopt.exact, "also print the exact rational (prokhorov)");

  // matrix
  auto* matrix = app.add_subcommand("matrix", "Pairwise distance matrix of a TUDataset");
  std::string mdir, mname;
  wldist::cli::MatrixOptions mopt;
  matrix->add_option("--dir", mdir, "dataset directory")->required();
  matrix->add_option("--name", mname, "dataset name")->required();
  matrix->add_option("--metric", mopt.metric)->default_val("wasserstein");
  matrix->add_option("--h-mode", mopt.h_mode, "fixed:<h> or stable-plus:<k>")
      ->default_val("stable-plus:3");
  matrix->add_option("--out", mopt.out_csv, "output CSV")->required();
  matrix->add_option("--checkpoint", mopt.checkpoint, "resumable cell log");
  matrix->add_option("--jobs", mopt.jobs, "worker threads")->default_val(1);

  // sbm
  auto* sbm = app.add_subcommand("sbm", "Two-block SBM convergence experiment");
  wldist::cli::SbmOptions sopt;
  sbm->add_option("--n", sopt.n)->default_val(30);
  sbm->add_option("--count", sopt.count)->default_val(50);
  sbm->add_option("--p", sopt.p)->default_val(0.5);
  sbm->add_option("--qmin", sopt.qmin)->default_val(0.1);
  sbm->add_option("--qmax", sopt.qmax)->default_val(0.5);
  sbm->add_option("--h-mode", sopt.h_mode)->default_val("stable-plus:3");
  sbm->add_option("--models", sopt.models, "comma-separated <width>x<layers>")
      ->default_val("64x2");
  sbm->add_option("--activation", sopt.activation)->default_val("relu");
  sbm->add_option("--scale", sopt.scale, "weight standard deviation")->default_val(1.0);
  sbm->add_option("--seed", sopt.seed)->default_val(1);
  sbm->add_option("--out", sopt.out_csv, "output CSV")->required();

  // knn
  auto* knn = app.add_subcommand("knn", "1-NN classification from a distance matrix");
  std::string kdir, kname;
  wldist::cli::KnnOptions kopt;
  knn->add_option("--dir", kdir)->required();
  knn->add_option("--name", kname)->required();
  knn->add_option("--metric-matrix", kopt.matrix_csv, "CSV from the matrix command")->required();
  knn->add_option("--splits", kopt.splits)->default_val(10);
  knn->add_option("--train-frac", kopt.train_frac)->default_val(0.9);
  knn->add_option("--seed", kopt.seed)->default_val(1);

  // trees
  auto* trees = app.add_subcommand("trees", "Tree homomorphism density table");
  std::string tgraph;
  int tmax = 6;
  trees->add_option("graph", tgraph, "edge-list file")->required();
  trees->add_option("--max-order", tmax)->default_val(6);

  // embed
  auto* embed = app.add_subcommand("embed", "MPNN embeddings of a TUDataset");
  std::string edir, ename;
  wldist::cli::EmbedOptions eopt;
  embed->add_option("--dir", edir)->required();
  embed->add_option("--name", ename)->required();
  embed->add_option("--model-file", eopt.model_file, "JSON model file");
  embed->add_option("--model", eopt.model_spec, "<width>x<layers> spec")->default_val("64x2");
  embed->add_option("--activation", eopt.activation)->default_val("relu");
  embed->add_option("--scale", eopt.scale)->default_val(1.0);
  embed->add_option("--seed", eopt.seed)->default_val(1);
  embed->add_option("--out", eopt.out_csv, "output CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (dist->parsed()) return wldist::cli::cmd_dist(graph_a, graph_b, dopt, std::cout);
    if (matrix->parsed()) return wldist::cli::cmd_matrix(mdir, mname, mopt, std::cout);
    if (sbm->parsed()) return wldist::cli::cmd_sbm(sopt, std::cout);
    if (knn->parsed()) return wldist::cli::cmd_knn(kdir, kname, kopt, std::cout);
    if (trees->parsed()) return wldist::cli::cmd_trees(tgraph, tmax, std::cout);
    if (embed->parsed()) return wldist::cli::cmd_embed(edir, ename, eopt, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
