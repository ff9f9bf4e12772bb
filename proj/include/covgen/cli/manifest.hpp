//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef COVGEN_CLI_MANIFEST_HPP
#define COVGEN_CLI_MANIFEST_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace covgen::cli {

// Reproducibility record for one command invocation: everything needed to
// rerun it (config hash, seed, inputs) plus the complete list of files the
// run will produce. Written atomically to <out-dir>/manifest.json before
// any result file, so a crash can never leave results without a manifest.
struct RunManifest {
  std::string command;
  std::string config_hash;
  uint64_t seed = 0;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::string created_utc;  // ISO-8601, filled by write_manifest
  std::string engine_version;
};

// Current UTC time as ISO-8601 (e.g. 2026-08-16T12:00:00Z).
std::string utc_timestamp();

// Serializes the manifest to <out_dir>/manifest.json (temp + rename) and
// returns the path. Stamps created_utc and engine_version.
std::string write_manifest(RunManifest manifest, const std::string &out_dir);

}  // namespace covgen::cli

#endif  // COVGEN_CLI_MANIFEST_HPP
