//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#include "covgen/chem/fingerprint.hpp"

#include <algorithm>
#include <bit>

#include "covgen/util/hash.hpp"

namespace covgen::chem {
namespace {

uint64_t atom_seed(const Atom &a) {
  uint64_t h = util::mix64(a.atomic_number);
  h = util::hash_combine(h, static_cast<uint64_t>(a.formal_charge + 16));
  h = util::hash_combine(h, a.degree);
  h = util::hash_combine(h, a.explicit_h);
  h = util::hash_combine(h, a.aromatic ? 1 : 0);
  h = util::hash_combine(h, a.in_ring ? 1 : 0);
  return h;
}

// One refinement sweep: neighbor ids mixed in sorted order so the result is
// independent of atom numbering.
std::vector<uint64_t> sweep(const MolecularGraph &mol,
                            const std::vector<uint64_t> &prev, int radius) {
  std::vector<uint64_t> next(prev.size());
  for (int i = 0; i < mol.atom_count(); ++i) {
    std::vector<std::pair<uint64_t, uint64_t>> env;
    for (const int e : mol.incident_bonds(i)) {
      const Bond &b = mol.bond(e);
      env.emplace_back(static_cast<uint64_t>(b.order),
                       prev[static_cast<size_t>(b.other(i))]);
    }
    std::sort(env.begin(), env.end());
    uint64_t h = util::mix64(static_cast<uint64_t>(radius));
    h = util::hash_combine(h, prev[static_cast<size_t>(i)]);
    for (const auto &[order, nbr] : env) {
      h = util::hash_combine(h, order);
      h = util::hash_combine(h, nbr);
    }
    next[static_cast<size_t>(i)] = h;
  }
  return next;
}

}  // namespace

int Fingerprint::popcount() const {
  int total = 0;
  for (const uint64_t w : words) total += std::popcount(w);
  return total;
}

Fingerprint morgan_fingerprint(const MolecularGraph &mol) {
  Fingerprint fp;
  std::vector<uint64_t> ids(static_cast<size_t>(mol.atom_count()));
  for (int i = 0; i < mol.atom_count(); ++i)
    ids[static_cast<size_t>(i)] = atom_seed(mol.atom(i));
  for (int r = 0; r <= Fingerprint::kRadius; ++r) {
    if (r > 0) ids = sweep(mol, ids, r);
    for (const uint64_t id : ids)
      fp.set(static_cast<int>(id % Fingerprint::kBits));
  }
  return fp;
}

uint64_t environment_id(const MolecularGraph &mol, int atom, int radius) {
  std::vector<uint64_t> ids(static_cast<size_t>(mol.atom_count()));
  for (int i = 0; i < mol.atom_count(); ++i)
    ids[static_cast<size_t>(i)] = atom_seed(mol.atom(i));
  for (int r = 1; r <= radius; ++r) ids = sweep(mol, ids, r);
  return ids[static_cast<size_t>(atom)];
}

double tanimoto(const Fingerprint &a, const Fingerprint &b) {
  int inter = 0;
  int uni = 0;
  for (size_t i = 0; i < a.words.size(); ++i) {
    inter += std::popcount(a.words[i] & b.words[i]);
    uni += std::popcount(a.words[i] | b.words[i]);
  }
  return uni == 0 ? 0.0 : static_cast<double>(inter) / uni;
}

}  // namespace covgen::chem
