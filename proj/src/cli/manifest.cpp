//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#include "covgen/cli/manifest.hpp"

#include <ctime>
#include <filesystem>

#include <json.hpp>

#include "covgen/util/io.hpp"
#include "covgen/version.hpp"

namespace covgen::cli {

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string write_manifest(RunManifest manifest, const std::string &out_dir) {
  manifest.created_utc = utc_timestamp();
  manifest.engine_version = kEngineVersion;

  nlohmann::json j;
  j["command"] = manifest.command;
  j["config_hash"] = manifest.config_hash;
  j["seed"] = manifest.seed;
  j["inputs"] = manifest.inputs;
  j["outputs"] = manifest.outputs;
  j["created_utc"] = manifest.created_utc;
  j["engine_version"] = manifest.engine_version;

  const std::string path =
      (std::filesystem::path(out_dir) / "manifest.json").string();
  util::write_file_atomic(path, j.dump(2) + "\n");
  return path;
}

}  // namespace covgen::cli
