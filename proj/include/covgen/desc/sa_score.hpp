//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef COVGEN_DESC_SA_SCORE_HPP
#define COVGEN_DESC_SA_SCORE_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "covgen/chem/molecule.hpp"

namespace covgen::desc {

// Fragment-frequency contributions fitted from a reference corpus: the
// log-scaled ratio of an environment's count to the median count, clipped to
// [-4, 4]. Environments never seen during fitting contribute the minimum.
class FragmentScoreTable {
public:
  static constexpr double kMinContribution = -4.0;
  static constexpr double kMaxContribution = 4.0;

  static FragmentScoreTable fit(const std::vector<chem::MolecularGraph> &corpus,
                                const std::string &corpus_id);

  double contribution(uint64_t environment) const;
  size_t size() const { return contributions_.size(); }
  const std::string &corpus_id() const { return corpus_id_; }

  // Versioned key/value text file: header with corpus id and a content hash,
  // then one "hash contribution" pair per line.
  void save(const std::string &path) const;
  static FragmentScoreTable load(const std::string &path);

  void set(uint64_t environment, double value);  // test hook

private:
  std::unordered_map<uint64_t, double> contributions_;
  std::string corpus_id_;
};

// Ertl-style synthetic accessibility on the 1..10 scale, lower = easier:
// mean fragment contribution minus size, macrocycle, spiro/bridge and stereo
// penalties, affinely mapped from the [-4, 2.5] raw band onto [1, 10].
double sa_score(const chem::MolecularGraph &mol, const FragmentScoreTable &table);

// Penalty ingredients, exposed for tests.
int spiro_atom_count(const chem::MolecularGraph &mol);
int bridgehead_atom_count(const chem::MolecularGraph &mol);
bool has_macrocycle(const chem::MolecularGraph &mol);

}  // namespace covgen::desc

#endif  // COVGEN_DESC_SA_SCORE_HPP
