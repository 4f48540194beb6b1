#include "wldist/mpnn.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "wldist/rng.hpp"

namespace wldist {

const char* activation_name(Activation a) {
  switch (a) {
    case Activation::relu:
      return "relu";
    case Activation::tanh:
      return "tanh";
    case Activation::identity:
      return "identity";
  }
  throw std::logic_error("activation_name: unknown activation");
}

Activation activation_from_name(const std::string& name) {
  if (name == "relu") return Activation::relu;
  if (name == "tanh") return Activation::tanh;
  if (name == "identity") return Activation::identity;
  throw std::invalid_argument("unknown activation: " + name);
}

namespace {

double apply_act(Activation a, double x) {
  switch (a) {
    case Activation::relu:
      return x > 0 ? x : 0.0;
    case Activation::tanh:
      return std::tanh(x);
    case Activation::identity:
      return x;
  }
  return x;
}

std::vector<double> apply_layer(const MpnnLayer& layer, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != layer.in_dim())
    throw std::invalid_argument("mpnn: layer input dimension mismatch");
  std::vector<double> out(layer.out_dim());
  for (int i = 0; i < layer.out_dim(); ++i) {
    double acc = layer.bias[i];
    const auto& row = layer.weight[i];
    for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * x[j];
    out[i] = apply_act(layer.act, acc);
  }
  return out;
}

// Upper bound on the spectral norm: power iteration with a safety inflation.
// The iterates give lower estimates that converge from below, so the final
// value is inflated by 1%; exact enough for certificates on random models.
double spectral_norm_ub(const std::vector<std::vector<double>>& w) {
  const int rows = static_cast<int>(w.size());
  if (rows == 0) return 0.0;
  const int cols = static_cast<int>(w[0].size());
  if (cols == 0) return 0.0;
  std::vector<double> v(cols);
  for (int j = 0; j < cols; ++j) v[j] = 1.0 + 1e-3 * j;  // avoid unlucky orthogonal start
  double est = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    double nv = 0.0;
    for (double x : v) nv += x * x;
    nv = std::sqrt(nv);
    if (nv == 0.0) return 0.0;
    for (double& x : v) x /= nv;
    std::vector<double> y(rows, 0.0);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) y[i] += w[i][j] * v[j];
    double ny = 0.0;
    for (double x : y) ny += x * x;
    ny = std::sqrt(ny);
    est = std::max(est, ny);
    if (ny == 0.0) return 0.0;
    std::vector<double> next(cols, 0.0);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) next[j] += w[i][j] * y[i];
    v = std::move(next);
  }
  return est * 1.01;
}

double inf_operator_norm(const std::vector<std::vector<double>>& w) {
  double worst = 0.0;
  for (const auto& row : w) {
    double s = 0.0;
    for (double x : row) s += std::abs(x);
    worst = std::max(worst, s);
  }
  return worst;
}

double inf_norm(const std::vector<double>& v) {
  double worst = 0.0;
  for (double x : v) worst = std::max(worst, std::abs(x));
  return worst;
}

MpnnLayer layer_from_json(const nlohmann::json& j) {
  MpnnLayer layer;
  layer.weight = j.at("weight").get<std::vector<std::vector<double>>>();
  layer.bias = j.at("bias").get<std::vector<double>>();
  layer.act = activation_from_name(j.at("activation").get<std::string>());
  return layer;
}

nlohmann::json layer_to_json(const MpnnLayer& layer) {
  return {{"weight", layer.weight},
          {"bias", layer.bias},
          {"activation", activation_name(layer.act)}};
}

}  // namespace

void MpnnModel::validate() const {
  if (phi0.empty()) throw std::invalid_argument("mpnn: empty initial feature");
  int dim = static_cast<int>(phi0.size());
  for (const auto& layer : layers) {
    if (layer.in_dim() != dim) throw std::invalid_argument("mpnn: layer dimensions do not chain");
    if (static_cast<int>(layer.bias.size()) != layer.out_dim())
      throw std::invalid_argument("mpnn: bias dimension mismatch");
    dim = layer.out_dim();
  }
  if (readout.in_dim() != dim)
    throw std::invalid_argument("mpnn: readout dimension does not match last layer");
  if (static_cast<int>(readout.bias.size()) != readout.out_dim())
    throw std::invalid_argument("mpnn: readout bias dimension mismatch");
}

MpnnModel random_model(const std::vector<int>& dims, Activation act, std::uint64_t seed,
                       double scale) {
  if (dims.size() < 2) throw std::invalid_argument("random_model: need at least d_0 and d");
  for (int d : dims)
    if (d < 1) throw std::invalid_argument("random_model: dimensions must be >= 1");
  Rng rng(seed);
  MpnnModel model;
  model.phi0.assign(dims[0], 1.0);
  auto make_layer = [&](int in, int out, Activation a) {
    MpnnLayer layer;
    layer.weight.assign(out, std::vector<double>(in));
    layer.bias.assign(out, 0.0);
    layer.act = a;
    for (auto& row : layer.weight)
      for (double& x : row) x = scale * rng.next_normal();
    return layer;
  };
  for (std::size_t t = 1; t + 1 < dims.size(); ++t)
    model.layers.push_back(make_layer(dims[t - 1], dims[t], act));
  // Readout stays linear so the certificate treats it as a plain Lipschitz map.
  model.readout = make_layer(dims[dims.size() - 2], dims.back(), Activation::identity);
  model.validate();
  return model;
}

std::vector<std::vector<std::vector<double>>> vertex_features(const Graph& g,
                                                              const MpnnModel& model) {
  model.validate();
  std::vector<std::vector<std::vector<double>>> features;
  features.emplace_back(g.n, model.phi0);
  const double inv_n = g.n > 0 ? 1.0 / g.n : 0.0;
  for (const auto& layer : model.layers) {
    const auto& prev = features.back();
    std::vector<std::vector<double>> cur(g.n);
    for (int v = 0; v < g.n; ++v) {
      std::vector<double> msg(layer.in_dim(), 0.0);
      for (int u : g.adj[v])
        for (int d = 0; d < layer.in_dim(); ++d) msg[d] += prev[u][d];
      for (double& x : msg) x *= inv_n;
      cur[v] = apply_layer(layer, msg);
    }
    features.push_back(std::move(cur));
  }
  return features;
}

std::vector<double> embed(const Graph& g, const MpnnModel& model) {
  if (g.n == 0) throw std::invalid_argument("embed: empty graph");
  const auto features = vertex_features(g, model);
  const auto& last = features.back();
  std::vector<double> pooled(last[0].size(), 0.0);
  for (int v = 0; v < g.n; ++v)
    for (std::size_t d = 0; d < pooled.size(); ++d) pooled[d] += last[v][d];
  for (double& x : pooled) x /= g.n;
  return apply_layer(model.readout, pooled);
}

LipschitzCertificate certify(const MpnnModel& model) {
  model.validate();
  LipschitzCertificate cert;
  cert.r.push_back(inf_norm(model.phi0));
  double c = 0.0;
  for (const auto& layer : model.layers) {
    const double lip = spectral_norm_ub(layer.weight);
    cert.lip.push_back(lip);
    c = lip * (cert.r.back() + c);
    double bound = inf_operator_norm(layer.weight) * cert.r.back() + inf_norm(layer.bias);
    if (layer.act == Activation::tanh) bound = std::min(bound, 1.0);
    cert.r.push_back(bound);
  }
  cert.model_constant = c;
  cert.readout_lip = spectral_norm_ub(model.readout.weight);
  cert.readout_constant = cert.readout_lip * (cert.r.back() + c);
  return cert;
}

double embedding_distance(const Graph& g, const Graph& h, const MpnnModel& model) {
  const auto eg = embed(g, model);
  const auto eh = embed(h, model);
  double acc = 0.0;
  for (std::size_t d = 0; d < eg.size(); ++d) acc += (eg[d] - eh[d]) * (eg[d] - eh[d]);
  return std::sqrt(acc);
}

double certified_lower_bound(const Graph& g, const Graph& h, const MpnnModel& model) {
  const auto cert = certify(model);
  if (cert.readout_constant <= 0.0) return 0.0;
  return embedding_distance(g, h, model) / cert.readout_constant;
}

std::string model_to_json(const MpnnModel& model) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["phi0"] = model.phi0;
  j["layers"] = nlohmann::json::array();
  for (const auto& layer : model.layers) j["layers"].push_back(layer_to_json(layer));
  j["readout"] = layer_to_json(model.readout);
  return j.dump();
}

MpnnModel model_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  MpnnModel model;
  model.phi0 = j.at("phi0").get<std::vector<double>>();
  for (const auto& lj : j.at("layers")) model.layers.push_back(layer_from_json(lj));
  model.readout = layer_from_json(j.at("readout"));
  model.validate();
  return model;
}

void save_model(const MpnnModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_model: cannot write " + path);
  out << model_to_json(model) << "\n";
}

MpnnModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_model: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace wldist
