//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef COVGEN_CHEM_CORPUS_HPP
#define COVGEN_CHEM_CORPUS_HPP

#include <optional>
#include <string>
#include <vector>

namespace covgen::chem {

struct CorpusRecord {
  std::string smiles;
  std::string id;  // supplied or auto-assigned m<N>
  std::optional<double> label;
  int line = 0;  // 1-based source line
};

// UTF-8, one SMILES per line with optional tab-separated id and label fields.
// Blank lines and '#' comments are skipped. Throws std::runtime_error with
// the offending line number on unreadable files or malformed labels.
std::vector<CorpusRecord> read_corpus(const std::string &path);

// Writes records back in the same format (smiles\tid[\tlabel]).
void write_corpus(const std::string &path,
                  const std::vector<CorpusRecord> &records);

}  // namespace covgen::chem

#endif  // COVGEN_CHEM_CORPUS_HPP
