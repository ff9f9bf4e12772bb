//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef COVGEN_NN_GRAPH_MODEL_HPP
#define COVGEN_NN_GRAPH_MODEL_HPP

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "covgen/chem/molecule.hpp"
#include "covgen/util/rng.hpp"

namespace covgen::nn {

enum class GraphLayerKind { Conv, Attention, DeepResidual };
enum class GraphHead { Binary, Multiclass, Regression };

struct GraphConfig {
  GraphLayerKind kind = GraphLayerKind::Conv;
  int layers = 3;  // message-passing layers; the first is always Conv
  int hidden = 32;
  GraphHead head = GraphHead::Binary;
  int classes = 2;  // output width for Multiclass; Binary is 2, Regression 1
  double lr = 0.05;
  double momentum = 0.9;
  double clip_norm = 5.0;
  int epochs = 40;
  int batch = 32;

  int output_dim() const;
};

// Featurized molecule: per-node descriptor rows plus the row-normalized
// self-looped adjacency used by every propagation layer.
struct GraphInput {
  Eigen::MatrixXd features;  // n x kNodeFeatures
  Eigen::MatrixXd adj_norm;  // n x n, D^-1 (A + I)
};

constexpr int kNodeFeatures = 22;

// Node rows: element one-hot over {C,N,O,S,P,F,Cl,Br,I,B,Si,Se,other},
// degree one-hot 0..5+, then formal charge, aromatic flag, ring flag.
GraphInput featurize(const chem::MolecularGraph &mol);

// Node attribution from class-gradient weighting: per-layer channel weights
// are node-averaged logit gradients, layer heat is the ReLU of the weighted
// activation sum, and the final map averages layers then max-normalizes.
struct AttributionMap {
  std::vector<double> raw;         // per node, before normalization
  std::vector<double> normalized;  // all zero when no positive heat exists
  std::vector<int> tagged;         // nodes with normalized value > 0.3
};

constexpr double kTagThreshold = 0.3;

class GraphModel {
public:
  GraphModel(GraphConfig config, util::Rng &rng);

  const GraphConfig &config() const { return config_; }

  struct Forward {
    std::vector<Eigen::MatrixXd> acts;  // post-ReLU layer outputs, n x hidden
    Eigen::RowVectorXd pooled;          // node mean of the last layer
    Eigen::RowVectorXd logits;          // head output (pre-softmax)
  };
  Forward forward(const GraphInput &input) const;

  // Softmax class probabilities, or the single regression value.
  std::vector<double> predict(const GraphInput &input) const;

  // Mean loss over the batch: cross entropy for classifier heads (targets
  // are class indices), squared error / 2 for regression.
  double evaluate_loss(const std::vector<GraphInput> &inputs,
                       const std::vector<double> &targets) const;
  std::map<std::string, Eigen::MatrixXd> loss_gradient(
      const std::vector<GraphInput> &inputs,
      const std::vector<double> &targets) const;
  double train_batch(const std::vector<GraphInput> &inputs,
                     const std::vector<double> &targets);

  // Exact gradient of the pre-softmax logit for `cls` with respect to each
  // layer's post-ReLU activations.
  std::vector<Eigen::MatrixXd> activation_gradients(const GraphInput &input,
                                                    int cls) const;
  // Recomputes the class logit treating `acts` as layer `layer`'s output;
  // pairs with activation_gradients for finite-difference checks.
  double logit_from_layer(const GraphInput &input, int layer,
                          const Eigen::MatrixXd &acts, int cls) const;

  AttributionMap gradcam(const GraphInput &input, int cls) const;

  std::vector<std::pair<std::string, Eigen::MatrixXd *>> named_params();
  std::vector<std::pair<std::string, const Eigen::MatrixXd *>> named_params()
      const;

  void save(const std::string &path, const std::string &config_hash) const;
  static GraphModel load(const std::string &path);

private:
  struct LayerGrads;
  void backward(const GraphInput &input, const Forward &fwd,
                const Eigen::RowVectorXd &dlogits,
                std::map<std::string, Eigen::MatrixXd> *grads,
                std::vector<Eigen::MatrixXd> *dacts_out) const;

  GraphConfig config_;
  // Per layer: w ("w<i>"), b ("b<i>"), attention vectors "a<i>src"/"a<i>dst".
  // Head: "head_w", "head_b".
  std::vector<Eigen::MatrixXd> w_, b_, a_src_, a_dst_;
  Eigen::MatrixXd head_w_, head_b_;
  std::map<std::string, Eigen::MatrixXd> velocity_;
};

struct GraphTrainReport {
  std::vector<double> train_loss;  // per epoch
};

GraphModel train_graph_model(const std::vector<GraphInput> &inputs,
                             const std::vector<double> &targets,
                             const GraphConfig &config, uint64_t seed,
                             GraphTrainReport *report = nullptr);

// Indices of a class-balanced subsample: every class is cut to the size of
// the rarest one (uniform choice without replacement), order shuffled.
std::vector<size_t> balanced_subsample(const std::vector<double> &targets,
                                       util::Rng &rng);

// Balanced retraining from scratch on the subsample.
GraphModel retrain_balanced(const std::vector<GraphInput> &inputs,
                            const std::vector<double> &targets,
                            const GraphConfig &config, uint64_t seed,
                            GraphTrainReport *report = nullptr);

}  // namespace covgen::nn

#endif  // COVGEN_NN_GRAPH_MODEL_HPP
