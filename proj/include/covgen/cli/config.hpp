//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef COVGEN_CLI_CONFIG_HPP
#define COVGEN_CLI_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "covgen/nn/generator.hpp"
#include "covgen/nn/graph_model.hpp"
#include "covgen/rl/train.hpp"

namespace covgen::cli {

// Bad or missing configuration (config file, preset name, flag value
// resolved against the config). Mapped to its own exit code.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unreadable or malformed input data (corpora, checkpoints, CSVs, poses).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Full run configuration. Every key of the JSON config file lands here;
// unknown keys are rejected so typos cannot silently fall back to defaults.
struct RunConfig {
  nn::GeneratorConfig generator;
  nn::GraphConfig graph;
  bool graph_balanced = false;  // class-balanced retraining for classifiers
  rl::RlConfig rl;
  double sample_temperature = 1.0;

  // Scoring setup: preset plus the providers its scorers need.
  std::string preset;          // egfr-1..4 / ache-1..4, empty = none
  std::string covalent_model;  // binary classifier checkpoint
  std::string affinity_model;  // classifier checkpoint
  int affinity_class = 1;      // class whose probability is the raw score
  std::string docking_model;   // regression checkpoint, preferred source
  std::string docking_scores;  // external CSV fallback (id,score)
  std::string overlap_scores;  // external CSV, only source for overlap
  std::string reference;       // corpus for the max-similarity raw score
  std::string sa_table;        // fitted fragment table to load
  std::string sa_corpus;       // corpus to fit a fragment table from

  // Optional extra scorer: raw = 1 when the named substructure is present.
  std::string motif_name;
  std::string motif_smiles;
  double motif_weight = 1.0;
  std::optional<double> motif_threshold;

  // Canonical serialized form (defaults filled in, keys sorted) and its
  // 16-hex-digit hash. Two configs with equal hashes behave identically.
  std::string canonical_text() const;
  std::string hash() const;
};

// Parses the JSON config file; empty path yields the defaults. Throws
// ConfigError on syntax errors, unknown keys or out-of-range values and
// InputError when the file cannot be read.
RunConfig load_config(const std::string &path);

}  // namespace covgen::cli

#endif  // COVGEN_CLI_CONFIG_HPP
