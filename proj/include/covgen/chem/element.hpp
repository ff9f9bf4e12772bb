//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef COVGEN_CHEM_ELEMENT_HPP
#define COVGEN_CHEM_ELEMENT_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace covgen::chem {

struct Element {
  int atomic_number;
  const char *symbol;
  double mass;                 // standard atomic weight, g/mol
  std::span<const int> valences;  // allowed valences, ascending
  bool organic_subset;         // writable without brackets
  bool can_be_aromatic;
};

// Lookup by symbol ("C", "Cl", ...). Case-sensitive; callers handle the
// lowercase aromatic forms themselves.
const Element *find_element(std::string_view symbol);
const Element *element_by_number(int atomic_number);

// Allowed valences adjusted for formal charge: N+ behaves like C, O- like F,
// and so on down the isoelectronic shift. Empty span means unconstrained.
std::span<const int> allowed_valences(const Element &el, int charge);

}  // namespace covgen::chem

#endif  // COVGEN_CHEM_ELEMENT_HPP
