//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef COVGEN_RL_TRAIN_HPP
#define COVGEN_RL_TRAIN_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "covgen/chem/molecule.hpp"
#include "covgen/nn/generator.hpp"
#include "covgen/score/scorer.hpp"

namespace covgen::rl {

struct RlConfig {
  int iterations = 50;
  int batch = 512;
  double lr = 0.001;
  double temperature = 1.0;
  double selection_fraction = 0.5;  // share of the batch entering the update
  int checkpoint_every = 0;         // iterations between snapshots; 0 = off
};

struct RlIterationReport {
  int iteration = 0;
  double mean_reward = 0.0;        // full batch, invalid molecules count as 0
  double fraction_valid = 0.0;
  double fraction_desirable = 0.0;
  std::map<std::string, double> objective_means;  // clipped, ranked objectives
  int selected_count = 0;
};

// Raw scores for one valid parsed molecule, keyed by scorer name. Validity
// is filled by the loop itself; every other registry scorer must be covered.
using RawScoreFn = std::function<std::map<std::string, double>(
    const chem::MolecularGraph &mol, const std::string &smiles)>;

// Optional snapshot callback, invoked as (iteration, model).
using CheckpointFn = std::function<void(int, const nn::GeneratorModel &)>;

// Multi-objective fine-tuning loop: sample a batch, parse and score it,
// rank by dominance and crowding, and update the generator on the selected
// episodes with their scalar rewards. Deterministic for a fixed seed.
// A scorer failure aborts the run with the iteration and molecule named.
std::vector<RlIterationReport> rl_train(nn::GeneratorModel &model,
                                        const score::ScorerRegistry &registry,
                                        const RawScoreFn &raw_scores,
                                        const RlConfig &config, uint64_t seed,
                                        const CheckpointFn &checkpoint = {});

}  // namespace covgen::rl

#endif  // COVGEN_RL_TRAIN_HPP
