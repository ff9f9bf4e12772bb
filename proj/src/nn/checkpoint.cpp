//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#include "covgen/nn/checkpoint.hpp"

#include <cstring>
#include <stdexcept>

#include "covgen/util/io.hpp"

namespace covgen::nn {

namespace {

constexpr char kMagic[4] = {'C', 'V', 'G', 'N'};

void append_u32(std::string &buf, uint32_t v) {
  for (int k = 0; k < 4; ++k)
    buf.push_back(static_cast<char>((v >> (8 * k)) & 0xff));
}

uint32_t read_u32(const std::string &buf, size_t &pos) {
  if (pos + 4 > buf.size())
    throw std::runtime_error("checkpoint: truncated header");
  uint32_t v = 0;
  for (int k = 0; k < 4; ++k)
    v |= static_cast<uint32_t>(static_cast<unsigned char>(buf[pos + k]))
         << (8 * k);
  pos += 4;
  return v;
}

void append_f32(std::string &buf, float v) {
  static_assert(sizeof(float) == 4);
  uint32_t bits;
  std::memcpy(&bits, &v, 4);
  append_u32(buf, bits);
}

float read_f32(const std::string &buf, size_t &pos) {
  const uint32_t bits = read_u32(buf, pos);
  float v;
  std::memcpy(&v, &bits, 4);
  return v;
}

}  // namespace

void TensorStore::put(const std::string &name, const Eigen::MatrixXd &tensor) {
  tensors_[name] = tensor;
}

const Eigen::MatrixXd &TensorStore::get(const std::string &name) const {
  const auto it = tensors_.find(name);
  if (it == tensors_.end())
    throw std::runtime_error("checkpoint: missing tensor '" + name + "'");
  return it->second;
}

bool TensorStore::contains(const std::string &name) const {
  return tensors_.count(name) > 0;
}

void TensorStore::save(const std::string &path) const {
  std::string buf;
  buf.append(kMagic, 4);
  append_u32(buf, kVersion);
  append_u32(buf, static_cast<uint32_t>(tensors_.size()));
  for (const auto &[name, t] : tensors_) {
    append_u32(buf, static_cast<uint32_t>(name.size()));
    buf += name;
    append_u32(buf, static_cast<uint32_t>(t.rows()));
    append_u32(buf, static_cast<uint32_t>(t.cols()));
    for (Eigen::Index r = 0; r < t.rows(); ++r)
      for (Eigen::Index c = 0; c < t.cols(); ++c)
        append_f32(buf, static_cast<float>(t(r, c)));
  }
  util::write_file_atomic(path, buf);
}

TensorStore TensorStore::load(const std::string &path) {
  const std::string buf = util::read_file(path);
  if (buf.size() < 12 || std::memcmp(buf.data(), kMagic, 4) != 0)
    throw std::runtime_error(path + ": not a covgen checkpoint");
  size_t pos = 4;
  const uint32_t version = read_u32(buf, pos);
  if (version != kVersion)
    throw std::runtime_error(path + ": unsupported checkpoint version " +
                             std::to_string(version));
  const uint32_t count = read_u32(buf, pos);
  TensorStore store;
  for (uint32_t i = 0; i < count; ++i) {
    const uint32_t name_len = read_u32(buf, pos);
    if (pos + name_len > buf.size())
      throw std::runtime_error(path + ": truncated tensor name");
    const std::string name = buf.substr(pos, name_len);
    pos += name_len;
    const uint32_t rows = read_u32(buf, pos);
    const uint32_t cols = read_u32(buf, pos);
    if (static_cast<uint64_t>(rows) * cols * 4 > buf.size() - pos)
      throw std::runtime_error(path + ": truncated tensor payload");
    Eigen::MatrixXd t(rows, cols);
    for (uint32_t r = 0; r < rows; ++r)
      for (uint32_t c = 0; c < cols; ++c)
        t(r, c) = static_cast<double>(read_f32(buf, pos));
    store.tensors_[name] = std::move(t);
  }
  return store;
}

}  // namespace covgen::nn
