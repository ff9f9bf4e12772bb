//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#include "covgen/nn/tokenizer.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace covgen::nn {

std::vector<std::string> Tokenizer::split_tokens(const std::string &smiles) {
  std::vector<std::string> out;
  for (size_t i = 0; i < smiles.size();) {
    const char c = smiles[i];
    if (c == '[') {
      const size_t close = smiles.find(']', i);
      if (close == std::string::npos)
        throw std::invalid_argument("tokenizer: unterminated bracket atom");
      out.push_back(smiles.substr(i, close - i + 1));
      i = close + 1;
    } else if (c == '%') {
      if (i + 2 >= smiles.size() || !isdigit(smiles[i + 1]) ||
          !isdigit(smiles[i + 2]))
        throw std::invalid_argument("tokenizer: malformed %nn ring label");
      out.push_back(smiles.substr(i, 3));
      i += 3;
    } else if ((c == 'C' || c == 'B') && i + 1 < smiles.size() &&
               ((c == 'C' && smiles[i + 1] == 'l') ||
                (c == 'B' && smiles[i + 1] == 'r'))) {
      out.push_back(smiles.substr(i, 2));
      i += 2;
    } else {
      out.push_back(std::string(1, c));
      ++i;
    }
  }
  return out;
}

Tokenizer Tokenizer::fit(const std::vector<std::string> &corpus) {
  if (corpus.empty())
    throw std::invalid_argument("tokenizer: empty corpus");
  std::set<std::string> seen;
  for (const auto &s : corpus)
    for (const auto &t : split_tokens(s)) seen.insert(t);
  std::vector<std::string> tokens = {"<pad>", "<bos>", "<eos>"};
  tokens.insert(tokens.end(), seen.begin(), seen.end());
  return from_tokens(tokens);
}

Tokenizer Tokenizer::from_tokens(const std::vector<std::string> &tokens) {
  if (tokens.size() < 4 || tokens[0] != "<pad>" || tokens[1] != "<bos>" ||
      tokens[2] != "<eos>")
    throw std::invalid_argument("tokenizer: malformed vocabulary");
  Tokenizer t;
  t.tokens_ = tokens;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (!t.index_.emplace(tokens[i], static_cast<int>(i)).second)
      throw std::invalid_argument("tokenizer: duplicate token '" + tokens[i] +
                                  "'");
  }
  return t;
}

std::vector<int> Tokenizer::encode(const std::string &smiles) const {
  std::vector<int> ids = {kBos};
  for (const auto &t : split_tokens(smiles)) {
    const auto it = index_.find(t);
    if (it == index_.end())
      throw std::invalid_argument("tokenizer: token '" + t +
                                  "' outside vocabulary");
    ids.push_back(it->second);
  }
  ids.push_back(kEos);
  return ids;
}

std::string Tokenizer::decode(const std::vector<int> &ids) const {
  std::string out;
  for (const int id : ids) {
    if (id == kEos) break;
    if (id == kBos || id == kPad) continue;
    if (id < 0 || id >= size())
      throw std::invalid_argument("tokenizer: id out of range");
    out += tokens_[static_cast<size_t>(id)];
  }
  return out;
}

}  // namespace covgen::nn
