//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#include "covgen/chem/element.hpp"

#include <array>
#include <cstring>

namespace covgen::chem {
namespace {

constexpr int kV1[] = {1};
constexpr int kV2[] = {2};
constexpr int kV3[] = {3};
constexpr int kV4[] = {4};
constexpr int kV35[] = {3, 5};
constexpr int kV246[] = {2, 4, 6};
constexpr int kV1357[] = {1, 3, 5, 7};
constexpr int kVNone[] = {0};

// Desk-scale periodic table: the SMILES organic subset plus the bracket
// elements that show up in covalent-inhibitor corpora (B for boronates,
// Se, Si, alkali/alkaline counterions, a few transition metals for salts).
constexpr Element kElements[] = {
    {1, "H", 1.008, kV1, false, false},
    {3, "Li", 6.94, kV1, false, false},
    {5, "B", 10.81, kV3, true, true},
    {6, "C", 12.011, kV4, true, true},
    {7, "N", 14.007, kV35, true, true},
    {8, "O", 15.999, kV2, true, true},
    {9, "F", 18.998, kV1, true, false},
    {11, "Na", 22.990, kV1, false, false},
    {12, "Mg", 24.305, kV2, false, false},
    {14, "Si", 28.085, kV4, false, false},
    {15, "P", 30.974, kV35, true, true},
    {16, "S", 32.06, kV246, true, true},
    {17, "Cl", 35.45, kV1, true, false},
    {19, "K", 39.098, kV1, false, false},
    {20, "Ca", 40.078, kV2, false, false},
    {26, "Fe", 55.845, kVNone, false, false},
    {29, "Cu", 63.546, kVNone, false, false},
    {30, "Zn", 65.38, kV2, false, false},
    {33, "As", 74.922, kV35, false, true},
    {34, "Se", 78.971, kV246, false, true},
    {35, "Br", 79.904, kV1, true, false},
    {53, "I", 126.904, kV1357, true, false},
};

}  // namespace

const Element *find_element(std::string_view symbol) {
  for (const Element &el : kElements) {
    if (symbol == el.symbol) return &el;
  }
  return nullptr;
}

const Element *element_by_number(int atomic_number) {
  for (const Element &el : kElements) {
    if (el.atomic_number == atomic_number) return &el;
  }
  return nullptr;
}

std::span<const int> allowed_valences(const Element &el, int charge) {
  if (charge == 0) {
    if (el.valences.size() == 1 && el.valences[0] == 0) return {};
    return el.valences;
  }
  // Isoelectronic shift: a +1 charge raises the default valence of N/O/S/P
  // by one, a -1 charge lowers it (C+ and C- both cap at 3).
  static constexpr int kShifted[] = {0, 1, 2, 3, 4, 5, 6, 7, 8};
  const int z = el.atomic_number;
  auto single = [](int v) {
    return std::span<const int>(&kShifted[v < 0 ? 0 : (v > 8 ? 8 : v)], 1);
  };
  switch (z) {
    case 6:  // C
      return single(charge > 0 ? 3 : 3);
    case 7:  // N
      return single(3 + charge);
    case 8:  // O
      return single(2 + charge);
    case 15:  // P
      return single(3 + charge);
    case 16:  // S
      return single(charge > 0 ? 3 : 1);
    case 5:  // B
      return single(3 + (charge < 0 ? 1 : 0));
    default:
      return {};  // counterions and metals: unconstrained
  }
}

}  // namespace covgen::chem
