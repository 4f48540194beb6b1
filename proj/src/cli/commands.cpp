#include "cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "wldist/dataset.hpp"
#include "wldist/mpnn.hpp"
#include "wldist/rng.hpp"
#include "wldist/treehom.hpp"
#include "wldist/wl.hpp"

namespace wldist::cli {

namespace {

using nlohmann::json;

BaseMetric parse_metric(const std::string& name) {
  if (name == "prokhorov") return BaseMetric::prokhorov;
  if (name == "wasserstein") return BaseMetric::wasserstein;
  throw std::invalid_argument("unknown metric: " + name + " (use prokhorov or wasserstein)");
}

struct ModelSpec {
  int width = 0;
  int layers = 0;
  std::string text;
};

std::vector<ModelSpec> parse_model_specs(const std::string& text) {
  std::vector<ModelSpec> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto x = item.find('x');
    if (x == std::string::npos)
      throw std::invalid_argument("model spec must look like <width>x<layers>: " + item);
    ModelSpec spec;
    spec.width = std::stoi(item.substr(0, x));
    spec.layers = std::stoi(item.substr(x + 1));
    spec.text = item;
    if (spec.width < 1 || spec.layers < 1)
      throw std::invalid_argument("model spec must be positive: " + item);
    out.push_back(spec);
  }
  if (out.empty()) throw std::invalid_argument("no model specs given");
  return out;
}

MpnnModel build_model(const ModelSpec& spec, Activation act, double scale, std::uint64_t seed) {
  std::vector<int> dims(spec.layers + 2, spec.width);
  return random_model(dims, act, seed, scale);
}

double cell_distance(const Graph& a, const Graph& b, BaseMetric base, const HMode& mode) {
  PairRefinement ref(a, b, base);
  const int h = mode.stable_plus ? ref.stabilization_index() + mode.value : mode.value;
  return ref.delta(h);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += "\"";
  return out;
}

}  // namespace

HMode parse_h_mode(const std::string& text) {
  HMode mode;
  std::string value = text;
  if (text.rfind("stable-plus:", 0) == 0) {
    mode.stable_plus = true;
    value = text.substr(12);
  } else if (text.rfind("fixed:", 0) == 0) {
    value = text.substr(6);
  }
  try {
    mode.value = std::stoi(value);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad h-mode: " + text + " (use fixed:<h> or stable-plus:<k>)");
  }
  if (mode.value < 0) throw std::invalid_argument("h-mode level must be nonnegative");
  return mode;
}

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (std::size_t i = 0; i < header.size(); ++i)
    out << (i ? "," : "") << csv_escape(header[i]);
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(row[i]);
    out << "\n";
  }
}

std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> row;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else if (c == '"') {
          quoted = false;
        } else {
          cell += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        row.push_back(cell);
        cell.clear();
      } else {
        cell += c;
      }
    }
    row.push_back(cell);
    rows.push_back(std::move(row));
  }
  return rows;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("spearman: need two equal-length series");
  auto ranks = [](const std::vector<double>& xs) {
    const std::size_t n = xs.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return xs[i] < xs[j]; });
    std::vector<double> r(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j + 1 < n && xs[idx[j + 1]] == xs[idx[i]]) ++j;
      const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
      for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  const auto ra = ranks(a);
  const auto rb = ranks(b);
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += ra[i];
    mb += rb[i];
  }
  ma /= n;
  mb /= n;
  double cov = 0, va = 0, vb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    cov += (ra[i] - ma) * (rb[i] - mb);
    va += (ra[i] - ma) * (ra[i] - ma);
    vb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (va == 0 || vb == 0) return 0.0;
  return cov / std::sqrt(va * vb);
}

MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd out;
  if (xs.empty()) return out;
  for (double x : xs) out.mean += x;
  out.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double acc = 0;
    for (double x : xs) acc += (x - out.mean) * (x - out.mean);
    out.std = std::sqrt(acc / static_cast<double>(xs.size() - 1));
  }
  return out;
}

std::vector<double> knn_accuracies(const std::vector<std::vector<double>>& dist,
                                   const std::vector<int>& labels, int splits, double train_frac,
                                   std::uint64_t seed) {
  const int n = static_cast<int>(labels.size());
  if (static_cast<int>(dist.size()) != n)
    throw std::invalid_argument("knn: distance matrix does not match dataset size");
  if (n < 2) throw std::invalid_argument("knn: need at least two graphs");
  std::vector<double> accs;
  const Rng base(seed);
  for (int s = 0; s < splits; ++s) {
    Rng rng = base.split(static_cast<std::uint64_t>(s));
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.next_int(0, i)]);
    int ntrain = static_cast<int>(std::floor(train_frac * n + 1e-9));
    ntrain = std::clamp(ntrain, 1, n - 1);
    int correct = 0;
    for (int t = ntrain; t < n; ++t) {
      const int v = perm[t];
      int best = -1;
      for (int k = 0; k < ntrain; ++k) {
        const int u = perm[k];
        // Ties go to the lowest dataset index among the nearest training graphs.
        if (best < 0 || dist[v][u] < dist[v][best] ||
            (dist[v][u] == dist[v][best] && u < best))
          best = u;
      }
      if (labels[best] == labels[v]) ++correct;
    }
    accs.push_back(100.0 * correct / static_cast<double>(n - ntrain));
  }
  return accs;
}

std::vector<std::vector<double>> dataset_distance_matrix(const std::vector<Graph>& graphs,
                                                         const std::string& metric,
                                                         const HMode& mode, int jobs,
                                                         const std::string& checkpoint) {
  const BaseMetric base = parse_metric(metric);
  const int n = static_cast<int>(graphs.size());
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) cells.emplace_back(i, j);

  std::vector<std::vector<double>> out(n, std::vector<double>(n, 0.0));
  std::vector<char> done(cells.size(), 0);

  // Completed cells are replayed from the sidecar log, so interrupted runs
  // resume without recomputation.
  std::map<std::pair<int, int>, double> finished;
  if (!checkpoint.empty() && std::filesystem::exists(checkpoint)) {
    std::ifstream in(checkpoint);
    std::string line;
    while (std::getline(in, line)) {
      std::replace(line.begin(), line.end(), ',', ' ');
      std::istringstream ls(line);
      int i, j;
      double v;
      if (ls >> i >> j >> v) finished[{i, j}] = v;
    }
  }
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const auto it = finished.find(cells[k]);
    if (it != finished.end()) {
      out[cells[k].first][cells[k].second] = it->second;
      out[cells[k].second][cells[k].first] = it->second;
      done[k] = 1;
    }
  }

  std::ofstream log;
  if (!checkpoint.empty()) log.open(checkpoint, std::ios::app);
  std::mutex log_mutex;
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&]() {
    for (std::size_t k; (k = next.fetch_add(1)) < cells.size();) {
      if (done[k]) continue;
      try {
        const auto [i, j] = cells[k];
        const double v = cell_distance(graphs[i], graphs[j], base, mode);
        out[i][j] = v;
        out[j][i] = v;
        if (log.is_open()) {
          std::lock_guard<std::mutex> lock(log_mutex);
          log << i << "," << j << "," << fmt_double(v) << "\n" << std::flush;
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };

  const int workers = std::max(1, jobs);
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

int cmd_dist(const std::string& graph_a, const std::string& graph_b, const DistOptions& opt,
             std::ostream& out) {
  const Graph a = load_edge_list(graph_a);
  const Graph b = load_edge_list(graph_b);
  const BaseMetric base = parse_metric(opt.metric);
  const auto start = std::chrono::steady_clock::now();
  json report;
  report["schema_version"] = kSchemaVersion;
  report["command"] = "dist";
  report["metric"] = opt.metric;
  report["initial_coloring"] = "constant";  // node labels are never consumed
  if (opt.h == "inf") {
    if (base == BaseMetric::prokhorov) {
      const DeltaInfResult res = delta_inf_P(a, b);
      report["value"] = res.value;
      if (opt.exact) report["value_exact"] = res.value_exact.str();
      report["levels_used"] = res.levels_used;
    } else {
      const DeltaInfResult res = delta_inf_W(a, b, opt.eps);
      report["value"] = res.value;
      report["eps"] = res.eps;
      report["levels_used"] = res.levels_used;
    }
    report["h"] = "inf";
  } else {
    const int h = std::stoi(opt.h);
    if (h < 0) throw std::invalid_argument("cmd_dist: negative level");
    PairRefinement ref(a, b, base);
    report["value"] = ref.delta(h);
    if (opt.exact && base == BaseMetric::prokhorov)
      report["value_exact"] = ref.delta_exact(h).str();
    report["h"] = h;
  }
  report["stabilization_index"] = stabilization_index(a, b);
  const auto end = std::chrono::steady_clock::now();
  report["wall_time_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(end - start).count();
  out << report.dump() << "\n";
  return 0;
}

int cmd_matrix(const std::string& dir, const std::string& name, const MatrixOptions& opt,
               std::ostream& out) {
  if (opt.out_csv.empty()) throw std::invalid_argument("cmd_matrix: --out is required");
  const Dataset ds = load_tudataset(dir, name);
  const HMode mode = parse_h_mode(opt.h_mode);
  const auto start = std::chrono::steady_clock::now();
  const auto matrix = dataset_distance_matrix(ds.graphs, opt.metric, mode, opt.jobs,
                                              opt.checkpoint);
  const int n = static_cast<int>(ds.graphs.size());
  std::vector<std::string> header{"graph"};
  for (int i = 0; i < n; ++i) header.push_back(std::to_string(i));
  std::vector<std::vector<std::string>> rows;
  for (int i = 0; i < n; ++i) {
    std::vector<std::string> row{std::to_string(i)};
    for (int j = 0; j < n; ++j) row.push_back(fmt_double(matrix[i][j]));
    rows.push_back(std::move(row));
  }
  write_csv(opt.out_csv, header, rows);
  const auto end = std::chrono::steady_clock::now();
  json report;
  report["schema_version"] = kSchemaVersion;
  report["command"] = "matrix";
  report["dataset"] = name;
  report["graphs"] = n;
  report["metric"] = opt.metric;
  report["h_mode"] = opt.h_mode;
  report["csv"] = opt.out_csv;
  report["initial_coloring"] = "constant";
  report["wall_time_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(end - start).count();
  out << report.dump() << "\n";
  return 0;
}

int cmd_sbm(const SbmOptions& opt, std::ostream& out) {
  if (opt.count < 2) throw std::invalid_argument("cmd_sbm: need at least two graphs");
  if (opt.out_csv.empty()) throw std::invalid_argument("cmd_sbm: --out is required");
  const HMode mode = parse_h_mode(opt.h_mode);
  const Activation act = activation_from_name(opt.activation);
  const auto specs = parse_model_specs(opt.models);
  const Rng base_rng(opt.seed);

  const int half = opt.n / 2;
  const std::vector<int> sizes{half, opt.n - half};
  std::vector<Graph> graphs;
  std::vector<double> qs;
  for (int i = 1; i <= opt.count; ++i) {
    const double q = opt.count == 1
                         ? opt.qmax
                         : opt.qmin + (opt.qmax - opt.qmin) * (i - 1) / (opt.count - 1);
    qs.push_back(q);
    Rng rng = base_rng.split(static_cast<std::uint64_t>(i));
    graphs.push_back(sample_sbm(sizes, {{opt.p, q}, {q, opt.p}}, rng));
  }
  const Graph& last = graphs.back();

  std::vector<MpnnModel> models;
  std::vector<LipschitzCertificate> certs;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    models.push_back(build_model(specs[s], act, opt.scale,
                                 base_rng.split(1000 + s).next_u64()));
    certs.push_back(certify(models.back()));
  }

  std::vector<std::string> header{"i", "q", "graph_dist"};
  for (const auto& spec : specs) {
    header.push_back("emb_dist_" + spec.text);
    header.push_back("lower_bound_" + spec.text);
  }
  std::vector<std::vector<std::string>> rows;
  std::vector<double> graph_dists;
  std::vector<std::vector<double>> emb_dists(specs.size());
  bool lower_bound_sound = true;
  for (int i = 0; i < opt.count; ++i) {
    PairRefinement ref(graphs[i], last, BaseMetric::wasserstein);
    const int h = mode.stable_plus ? ref.stabilization_index() + mode.value : mode.value;
    const double gd = ref.delta(h);
    graph_dists.push_back(gd);
    std::vector<std::string> row{std::to_string(i + 1), fmt_double(qs[i]), fmt_double(gd)};
    for (std::size_t s = 0; s < specs.size(); ++s) {
      const double ed = embedding_distance(graphs[i], last, models[s]);
      const double lb =
          certs[s].readout_constant > 0 ? ed / certs[s].readout_constant : 0.0;
      emb_dists[s].push_back(ed);
      if (lb > gd + 1e-9) lower_bound_sound = false;
      row.push_back(fmt_double(ed));
      row.push_back(fmt_double(lb));
    }
    rows.push_back(std::move(row));
  }
  write_csv(opt.out_csv, header, rows);

  json report;
  report["schema_version"] = kSchemaVersion;
  report["command"] = "sbm";
  report["rows"] = opt.count;
  report["h_mode"] = opt.h_mode;
  report["csv"] = opt.out_csv;
  report["initial_coloring"] = "constant";
  report["lower_bound_sound"] = lower_bound_sound;
  json sp;
  for (std::size_t s = 0; s < specs.size(); ++s)
    sp[specs[s].text] = spearman(graph_dists, emb_dists[s]);
  report["spearman"] = sp;
  out << report.dump() << "\n";
  return 0;
}

int cmd_knn(const std::string& dir, const std::string& name, const KnnOptions& opt,
            std::ostream& out) {
  const Dataset ds = load_tudataset(dir, name);
  const auto rows = read_csv(opt.matrix_csv);
  const int n = static_cast<int>(ds.graphs.size());
  if (static_cast<int>(rows.size()) != n + 1)
    throw std::invalid_argument("cmd_knn: matrix size does not match dataset");
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i + 1].size()) != n + 1)
      throw std::invalid_argument("cmd_knn: malformed matrix row " + std::to_string(i));
    for (int j = 0; j < n; ++j) dist[i][j] = std::stod(rows[i + 1][j + 1]);
  }
  const auto accs = knn_accuracies(dist, ds.class_labels, opt.splits, opt.train_frac, opt.seed);
  const MeanStd ms = mean_std(accs);
  json report;
  report["schema_version"] = kSchemaVersion;
  report["command"] = "knn";
  report["dataset"] = name;
  report["splits"] = opt.splits;
  report["train_frac"] = opt.train_frac;
  report["seed"] = opt.seed;
  report["mean_accuracy"] = ms.mean;
  report["std_accuracy"] = ms.std;
  report["accuracies"] = accs;
  report["tie_break"] = "lowest training index";
  out << report.dump() << "\n";
  return 0;
}

int cmd_trees(const std::string& graph_path, int max_order, std::ostream& out) {
  const Graph g = load_edge_list(graph_path);
  const auto trees = enumerate_trees(max_order);
  out << "index,order,height,code,density_exact,density\n";
  for (std::size_t i = 0; i < trees.size(); ++i) {
    const BigRational d = hom_density(trees[i], g);
    std::ostringstream exact;
    exact << d;
    out << i << "," << trees[i].order << "," << trees[i].height << "," << trees[i].code << ","
        << exact.str() << "," << fmt_double(d.convert_to<double>()) << "\n";
  }
  return 0;
}

int cmd_embed(const std::string& dir, const std::string& name, const EmbedOptions& opt,
              std::ostream& out) {
  if (opt.out_csv.empty()) throw std::invalid_argument("cmd_embed: --out is required");
  const Dataset ds = load_tudataset(dir, name);
  MpnnModel model;
  if (!opt.model_file.empty()) {
    model = load_model(opt.model_file);
  } else {
    const auto specs = parse_model_specs(opt.model_spec);
    if (specs.size() != 1) throw std::invalid_argument("cmd_embed: give exactly one model spec");
    model = build_model(specs[0], activation_from_name(opt.activation), opt.scale, opt.seed);
  }
  std::vector<std::string> header{"graph"};
  const int d = model.readout.out_dim();
  for (int k = 0; k < d; ++k) header.push_back("dim" + std::to_string(k));
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < ds.graphs.size(); ++i) {
    const auto e = embed(ds.graphs[i], model);
    std::vector<std::string> row{std::to_string(i)};
    for (double x : e) row.push_back(fmt_double(x));
    rows.push_back(std::move(row));
  }
  write_csv(opt.out_csv, header, rows);
  json report;
  report["schema_version"] = kSchemaVersion;
  report["command"] = "embed";
  report["dataset"] = name;
  report["graphs"] = ds.graphs.size();
  report["csv"] = opt.out_csv;
  out << report.dump() << "\n";
  return 0;
}

}  // namespace wldist::cli
