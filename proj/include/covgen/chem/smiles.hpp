//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef COVGEN_CHEM_SMILES_HPP
#define COVGEN_CHEM_SMILES_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "covgen/chem/molecule.hpp"

namespace covgen::chem {

enum class SmilesErrorKind {
  EmptyInput,
  BadSyntax,
  UnknownSymbol,
  UnbalancedParenthesis,
  UnclosedRingBond,
  ValenceViolation,
  AromaticityError,
};

const char *to_string(SmilesErrorKind kind);

class SmilesError : public std::runtime_error {
public:
  SmilesError(SmilesErrorKind kind, size_t position, const std::string &detail);

  SmilesErrorKind kind() const { return kind_; }
  // Byte offset into the input where the problem was detected.
  size_t position() const { return position_; }

private:
  SmilesErrorKind kind_;
  size_t position_;
};

// Parses one SMILES string into a finalized molecular graph: ring perception,
// aromatic bond resolution, kekulization, hydrogen filling and valence
// checking all happen here. Throws SmilesError on any defect.
MolecularGraph parse_smiles(std::string_view text);

// True when the string parses cleanly.
bool smiles_valid(std::string_view text);

}  // namespace covgen::chem

#endif  // COVGEN_CHEM_SMILES_HPP
