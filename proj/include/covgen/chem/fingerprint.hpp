//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef COVGEN_CHEM_FINGERPRINT_HPP
#define COVGEN_CHEM_FINGERPRINT_HPP

#include <cstdint>
#include <vector>

#include "covgen/chem/molecule.hpp"

namespace covgen::chem {

// Folded circular fingerprint over 64-bit words.
struct Fingerprint {
  static constexpr int kBits = 2048;
  static constexpr int kRadius = 2;

  std::vector<uint64_t> words = std::vector<uint64_t>(kBits / 64, 0);

  void set(int bit) { words[static_cast<size_t>(bit) / 64] |= 1ull << (bit % 64); }
  bool test(int bit) const {
    return (words[static_cast<size_t>(bit) / 64] >> (bit % 64)) & 1u;
  }
  int popcount() const;
  bool operator==(const Fingerprint &other) const = default;
};

// Circular environments of radius 0..2 hashed with a fixed 64-bit mixing
// function and folded modulo 2048. Permutation invariant.
Fingerprint morgan_fingerprint(const MolecularGraph &mol);

// Environment identifier of one atom at one radius; exposed for the
// fragment-contribution table.
uint64_t environment_id(const MolecularGraph &mol, int atom, int radius);

// |a AND b| / |a OR b|, with 0/0 defined as 0.
double tanimoto(const Fingerprint &a, const Fingerprint &b);

}  // namespace covgen::chem

#endif  // COVGEN_CHEM_FINGERPRINT_HPP
