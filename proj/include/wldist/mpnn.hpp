#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wldist/graph.hpp"

namespace wldist {

enum class Activation { relu, tanh, identity };

const char* activation_name(Activation a);
Activation activation_from_name(const std::string& name);

// One affine layer followed by a pointwise 1-Lipschitz activation.
struct MpnnLayer {
  std::vector<std::vector<double>> weight;  // out_dim x in_dim
  std::vector<double> bias;                 // out_dim
  Activation act = Activation::identity;

  int in_dim() const { return weight.empty() ? 0 : static_cast<int>(weight[0].size()); }
  int out_dim() const { return static_cast<int>(weight.size()); }
};

// Message-passing model with sum aggregation normalized by the graph order:
//   h_v^{(t)} = phi_t( (1/|V|) sum_{u in N(v)} h_u^{(t-1)} ),
//   h_G = psi( (1/|V|) sum_v h_v^{(L)} ).
struct MpnnModel {
  std::vector<double> phi0;       // initial feature, R^{d_0}
  std::vector<MpnnLayer> layers;  // phi_1 .. phi_L
  MpnnLayer readout;              // psi

  int num_layers() const { return static_cast<int>(layers.size()); }
  void validate() const;  // throws on dimension mismatches
};

// Weights i.i.d. normal(0, scale^2), biases zero, phi0 all-ones.
// dims = d_0, d_1, ..., d_L, d (readout output); needs at least two entries.
MpnnModel random_model(const std::vector<int>& dims, Activation act, std::uint64_t seed,
                       double scale);

// Features for t = 0..L; result[t][v] is the feature of vertex v after layer t.
std::vector<std::vector<std::vector<double>>> vertex_features(const Graph& g,
                                                              const MpnnModel& model);

std::vector<double> embed(const Graph& g, const MpnnModel& model);

// Certified constants: r_t bounds the feature sup norms reachable from
// measures of mass <= 1, lip_t bounds the layer Lipschitz constants, and
//   C_0 = 0,  C_t = lip_t * (r_{t-1} + C_{t-1})
// gives the model constant; the readout is treated as layer L+1.
struct LipschitzCertificate {
  std::vector<double> r;    // r_0 .. r_L
  std::vector<double> lip;  // lip_1 .. lip_L (message layers)
  double readout_lip = 0.0;
  double model_constant = 0.0;    // C_phi
  double readout_constant = 0.0;  // C_(phi,psi)
};

LipschitzCertificate certify(const MpnnModel& model);

double embedding_distance(const Graph& g, const Graph& h, const MpnnModel& model);

// embedding_distance / C_(phi,psi): a certified lower bound on delta_W^L.
// Returns 0 when the constant vanishes.
double certified_lower_bound(const Graph& g, const Graph& h, const MpnnModel& model);

// JSON model files round-trip bit-exactly.
std::string model_to_json(const MpnnModel& model);
MpnnModel model_from_json(const std::string& text);
void save_model(const MpnnModel& model, const std::string& path);
MpnnModel load_model(const std::string& path);

}  // namespace wldist
