//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef COVGEN_CHEM_CANONICAL_HPP
#define COVGEN_CHEM_CANONICAL_HPP

#include <string>
#include <vector>

#include "covgen/chem/molecule.hpp"

namespace covgen::chem {

struct CanonicalResult {
  std::string smiles;
  // Position of each input atom in the canonical output order (preorder over
  // the emitted string, components concatenated in emission order).
  std::vector<int> output_position;
};

// Canonical SMILES: invariant under atom relabeling, aromatic rings kept in
// lowercase form, stereo annotations dropped, components sorted and joined
// with '.'. Parsing the result reproduces the same graph up to relabeling.
CanonicalResult canonicalize(const MolecularGraph &mol);

std::string canonical_smiles(const MolecularGraph &mol);

// Atoms listed in canonical output order; inverse of output_position.
std::vector<int> canonical_atom_order(const MolecularGraph &mol);

}  // namespace covgen::chem

#endif  // COVGEN_CHEM_CANONICAL_HPP
