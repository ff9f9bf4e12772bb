//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef COVGEN_CHEM_SUBSTRUCTURE_HPP
#define COVGEN_CHEM_SUBSTRUCTURE_HPP

#include <vector>

#include "covgen/chem/molecule.hpp"

namespace covgen::chem {

// All injective mappings of query atoms onto target atoms preserving element,
// aromatic flag, and the presence + order of every query bond. Formal charge
// and hydrogen counts are not compared. mapping[i] = target atom for query
// atom i.
std::vector<std::vector<int>> substructure_matches(const MolecularGraph &query,
                                                   const MolecularGraph &target);

bool has_substructure(const MolecularGraph &query, const MolecularGraph &target);

}  // namespace covgen::chem

#endif  // COVGEN_CHEM_SUBSTRUCTURE_HPP
