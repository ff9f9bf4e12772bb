//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef COVGEN_CLI_COMMANDS_HPP
#define COVGEN_CLI_COMMANDS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace covgen::cli {

// Process exit codes. Distinct classes so scripts can react to the cause.
enum ExitCode {
  kOk = 0,
  kUsage = 2,    // unknown flag/subcommand, missing required flag
  kConfig = 3,   // bad config file, preset or flag value
  kInput = 4,    // unreadable or malformed input data
  kRuntime = 5,  // everything else
};

// Flags shared by every subcommand.
struct CommonOptions {
  std::string config_path;  // optional JSON config file
  std::string out_dir;      // required; created if missing
  uint64_t seed = 0;        // the run's single randomness source
};

struct PretrainOptions {
  CommonOptions common;
  std::string kind = "generator";  // generator | graph
  std::string corpus;
};

struct RlTrainOptions {
  CommonOptions common;
  std::string model;  // pretrained generator checkpoint
};

struct SampleOptions {
  CommonOptions common;
  std::string model;
  int count = 1000;
  double temperature = -1.0;  // <0 = take sample.temperature from config
};

struct ScoreOptions {
  CommonOptions common;
  std::string input;   // corpus of molecules to score
  std::string preset;  // overrides scoring.preset when non-empty
};

struct EvaluateOptions {
  CommonOptions common;
  std::string run;        // scores.csv from the score command
  std::string reference;  // known-inhibitor corpus
  std::vector<int> scales;  // optional generation-volume sweep
};

struct AttributeOptions {
  CommonOptions common;
  std::string model;  // graph-model checkpoint
  std::string input;
  int cls = 1;  // class whose evidence is mapped
  std::vector<std::string> poses;  // pose files for warhead distances
};

struct MotifSearchOptions {
  CommonOptions common;
  std::string run;
  std::vector<std::string> extra_motifs;  // name=SMILES
};

struct ProjectOptions {
  CommonOptions common;
  std::vector<std::string> inputs;   // one corpus per cohort
  std::vector<std::string> cohorts;  // labels; file stems when empty
  bool svg = false;
};

int run_pretrain(const PretrainOptions &opts);
int run_rltrain(const RlTrainOptions &opts);
int run_sample(const SampleOptions &opts);
int run_score(const ScoreOptions &opts);
int run_evaluate(const EvaluateOptions &opts);
int run_attribute(const AttributeOptions &opts);
int run_motif_search(const MotifSearchOptions &opts);
int run_project(const ProjectOptions &opts);

// Full argument parsing and dispatch; args excludes the program name.
// Returns the process exit code.
int dispatch(const std::vector<std::string> &args);

}  // namespace covgen::cli

#endif  // COVGEN_CLI_COMMANDS_HPP
