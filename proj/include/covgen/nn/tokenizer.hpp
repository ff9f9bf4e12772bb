//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef COVGEN_NN_TOKENIZER_HPP
#define COVGEN_NN_TOKENIZER_HPP

#include <string>
#include <unordered_map>
#include <vector>

namespace covgen::nn {

// Character-level SMILES tokenizer with three reserved ids. Bracket atom
// expressions, two-letter halogens and %nn ring labels stay single tokens so
// the generator cannot emit half an atom.
class Tokenizer {
public:
  static constexpr int kPad = 0;
  static constexpr int kBos = 1;
  static constexpr int kEos = 2;

  // Vocabulary = reserved ids + sorted distinct tokens of the corpus.
  static Tokenizer fit(const std::vector<std::string> &corpus);
  static Tokenizer from_tokens(const std::vector<std::string> &tokens);

  // Splits a SMILES string into surface tokens (no reserved ids).
  static std::vector<std::string> split_tokens(const std::string &smiles);

  // BOS + body + EOS. Throws std::invalid_argument on out-of-vocabulary
  // tokens.
  std::vector<int> encode(const std::string &smiles) const;

  // Concatenates tokens, skipping reserved ids and stopping at EOS.
  std::string decode(const std::vector<int> &ids) const;

  int size() const { return static_cast<int>(tokens_.size()); }
  const std::vector<std::string> &tokens() const { return tokens_; }
  bool contains(const std::string &token) const {
    return index_.count(token) > 0;
  }

private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
};

}  // namespace covgen::nn

#endif  // COVGEN_NN_TOKENIZER_HPP
