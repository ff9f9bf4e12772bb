//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef COVGEN_CLI_PROVIDERS_HPP
#define COVGEN_CLI_PROVIDERS_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "covgen/chem/fingerprint.hpp"
#include "covgen/chem/molecule.hpp"
#include "covgen/cli/config.hpp"
#include "covgen/desc/sa_score.hpp"
#include "covgen/nn/graph_model.hpp"
#include "covgen/rl/train.hpp"
#include "covgen/score/scorer.hpp"

namespace covgen::cli {

// Everything the active scorers need to turn a molecule into raw scores:
// graph-model checkpoints, external score tables, the similarity reference
// panel, the fragment table and the optional substructure query.
struct ScoreProviders {
  std::optional<nn::GraphModel> covalent;
  std::optional<nn::GraphModel> affinity;
  int affinity_class = 1;
  std::optional<nn::GraphModel> docking;
  std::optional<std::unordered_map<std::string, double>> docking_table;
  std::optional<std::unordered_map<std::string, double>> overlap_table;
  std::vector<chem::Fingerprint> reference_fps;
  std::optional<desc::FragmentScoreTable> sa_table;
  std::optional<chem::MolecularGraph> motif;
  std::string motif_name;
};

// Registry from the config: the preset's scorers plus the optional motif
// scorer (validity alone backs a motif-only setup). Throws ConfigError when
// nothing is configured or the preset name is unknown.
score::ScorerRegistry build_registry(const RunConfig &config);

// Loads every provider the registry needs. A fragment table fitted from
// scoring.sa_corpus is saved under out_dir and recorded in *outputs; all
// files read are recorded in *inputs. Duplicate-id warnings from external
// score files go to stderr.
ScoreProviders build_providers(const RunConfig &config,
                               const score::ScorerRegistry &registry,
                               const std::string &out_dir,
                               std::vector<std::string> *inputs,
                               std::vector<std::string> *outputs);

// Raw scores for one parsed molecule, keyed by scorer name. External score
// tables are looked up by molecule id first (when non-empty), then by the
// canonical key; misses score as the scorer's worst raw value.
std::map<std::string, double> raw_scores(const score::ScorerRegistry &registry,
                                         const ScoreProviders &providers,
                                         const chem::MolecularGraph &mol,
                                         const std::string &canonical,
                                         const std::string &id);

// Adapter for the RL loop: canonicalizes the sampled molecule and delegates
// to raw_scores with an empty id.
rl::RawScoreFn make_raw_score_fn(const score::ScorerRegistry &registry,
                                 std::shared_ptr<const ScoreProviders> prov);

}  // namespace covgen::cli

#endif  // COVGEN_CLI_PROVIDERS_HPP
