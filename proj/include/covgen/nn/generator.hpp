//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef COVGEN_NN_GENERATOR_HPP
#define COVGEN_NN_GENERATOR_HPP

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "covgen/nn/tokenizer.hpp"
#include "covgen/util/rng.hpp"

namespace covgen::nn {

struct GeneratorConfig {
  int embedding = 64;
  int hidden = 256;
  int max_len = 128;
  double lr = 0.1;
  double momentum = 0.9;
  double clip_norm = 5.0;
  int batch = 64;
  int epochs = 10;
  double holdout_fraction = 0.1;
};

struct TokenSequence {
  std::vector<int> tokens;        // emitted ids; ends with EOS when terminated
  std::vector<double> log_probs;  // model log-prob of each emitted token
  bool terminated = false;
  double total_log_prob() const;
};

// Character-level recurrent language model over SMILES tokens: embedding,
// one gated recurrent layer, dense softmax output. All math in doubles;
// checkpoints round parameters to f32.
class GeneratorModel {
public:
  GeneratorModel(Tokenizer tokenizer, GeneratorConfig config, util::Rng &rng);

  const Tokenizer &tokenizer() const { return tokenizer_; }
  const GeneratorConfig &config() const { return config_; }

  // Mean next-token cross-entropy under teacher forcing, no update.
  double evaluate_loss(const std::vector<std::vector<int>> &seqs) const;

  // One gradient-descent step with momentum and norm clipping; returns the
  // batch loss before the update.
  double train_batch(const std::vector<std::vector<int>> &seqs);

  // Teacher-forced log-probability of a full encoded sequence
  // [BOS, y_1 .. y_T]: sum over steps of log p(y_t | prefix).
  double sequence_log_prob(const std::vector<int> &ids) const;

  // REINFORCE objective J = sum over episodes of R * log-prob(sequence) and
  // its parameter gradient (ascent direction). Gradient is exactly linear in
  // the rewards; all-zero rewards give a zero gradient.
  double reinforce_objective(const std::vector<std::vector<int>> &seqs,
                             const std::vector<double> &rewards) const;
  std::map<std::string, Eigen::MatrixXd> reinforce_gradient(
      const std::vector<std::vector<int>> &seqs,
      const std::vector<double> &rewards) const;

  // Plain-SGD ascent step on J with norm clipping (no momentum, so zero
  // rewards leave parameters bit-identical).
  void policy_gradient_update(const std::vector<std::vector<int>> &seqs,
                              const std::vector<double> &rewards, double lr);

  // Autoregressive sampling. Per-step stored log-probs are temperature-1
  // model log-probs of the emitted tokens; the sampling distribution itself
  // is tempered. Deterministic for a fixed seed and thread-independent.
  TokenSequence sample_one(util::Rng &rng, double temperature) const;
  std::vector<TokenSequence> sample(int n, double temperature,
                                    uint64_t seed) const;

  // Named parameter access (checkpointing, tests).
  std::vector<std::pair<std::string, Eigen::MatrixXd *>> named_params();
  std::vector<std::pair<std::string, const Eigen::MatrixXd *>> named_params()
      const;

  void save(const std::string &path, const std::string &config_hash) const;
  static GeneratorModel load(const std::string &path);

private:
  struct Cache;
  double backward(const std::vector<std::vector<int>> &seqs,
                  const std::vector<std::vector<double>> &step_weights,
                  std::map<std::string, Eigen::MatrixXd> &grads) const;
  void apply_update(const std::map<std::string, Eigen::MatrixXd> &grads,
                    double lr, double momentum_coef);

  Tokenizer tokenizer_;
  GeneratorConfig config_;
  Eigen::MatrixXd emb_;           // V x E
  Eigen::MatrixXd wz_, wr_, wh_;  // E x H
  Eigen::MatrixXd uz_, ur_, uh_;  // H x H
  Eigen::MatrixXd bz_, br_, bh_;  // 1 x H
  Eigen::MatrixXd wo_;            // H x V
  Eigen::MatrixXd bo_;            // 1 x V
  std::map<std::string, Eigen::MatrixXd> velocity_;
};

struct PretrainReport {
  std::vector<double> train_loss;    // per epoch
  std::vector<double> holdout_loss;  // per epoch (empty if no holdout)
};

// Fits a tokenizer over the corpus, splits a held-out tail after a seeded
// shuffle, and trains for config.epochs. Throws on an empty corpus.
GeneratorModel pretrain_generator(const std::vector<std::string> &corpus,
                                  const GeneratorConfig &config, uint64_t seed,
                                  PretrainReport *report = nullptr);

}  // namespace covgen::nn

#endif  // COVGEN_NN_GENERATOR_HPP
