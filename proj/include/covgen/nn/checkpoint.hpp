//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef COVGEN_NN_CHECKPOINT_HPP
#define COVGEN_NN_CHECKPOINT_HPP

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

namespace covgen::nn {

// Versioned binary tensor container: "CVGN" magic, format version, then
// named tensors with shape headers and row-major little-endian f32 payloads.
// Written atomically. A text sidecar (same path + ".json") carries the
// vocabulary and config hash; model classes manage the sidecar content.
class TensorStore {
public:
  static constexpr uint32_t kVersion = 1;

  void put(const std::string &name, const Eigen::MatrixXd &tensor);
  const Eigen::MatrixXd &get(const std::string &name) const;  // throws
  bool contains(const std::string &name) const;
  size_t size() const { return tensors_.size(); }
  const std::map<std::string, Eigen::MatrixXd> &tensors() const {
    return tensors_;
  }

  void save(const std::string &path) const;
  static TensorStore load(const std::string &path);

private:
  std::map<std::string, Eigen::MatrixXd> tensors_;  // ordered for determinism
};

}  // namespace covgen::nn

#endif  // COVGEN_NN_CHECKPOINT_HPP
