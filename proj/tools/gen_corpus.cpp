//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//
// Regenerates the bundled data files: the toy training corpus (with binary
// covalent-warhead labels) and the reference inhibitor panel.

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "covgen/chem/canonical.hpp"
#include "covgen/chem/corpus.hpp"
#include "covgen/chem/smiles.hpp"

#include "../tests/support/corpus_gen.hpp"

int main(int argc, char **argv) {
  namespace fs = std::filesystem;
  const fs::path out_dir = argc > 1 ? argv[1] : "data";
  fs::create_directories(out_dir);

  using covgen::chem::CorpusRecord;

  const auto generated = covgen::testsupport::generate_toy_corpus();
  std::vector<CorpusRecord> corpus;
  corpus.reserve(generated.size());
  char id[16];
  for (size_t i = 0; i < generated.size(); ++i) {
    std::snprintf(id, sizeof id, "m%04zu", i + 1);
    corpus.push_back({generated[i].smiles, id,
                      generated[i].warhead ? 1.0 : 0.0, 0});
  }
  const auto corpus_path = (out_dir / "toy_corpus.smi").string();
  covgen::chem::write_corpus(corpus_path, corpus);

  std::vector<CorpusRecord> refs;
  const auto &panel = covgen::testsupport::reference_inhibitors();
  for (size_t i = 0; i < panel.size(); ++i) {
    std::snprintf(id, sizeof id, "ref%02zu", i + 1);
    refs.push_back({covgen::chem::canonical_smiles(
                        covgen::chem::parse_smiles(panel[i])),
                    id, std::nullopt, 0});
  }
  const auto refs_path = (out_dir / "reference_inhibitors.smi").string();
  covgen::chem::write_corpus(refs_path, refs);

  std::printf("wrote %zu molecules to %s\n", corpus.size(),
              corpus_path.c_str());
  std::printf("wrote %zu references to %s\n", refs.size(), refs_path.c_str());
  return 0;
}
