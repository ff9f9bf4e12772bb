//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#include "covgen/chem/substructure.hpp"

#include <algorithm>

namespace covgen::chem {
namespace {

bool atoms_compatible(const Atom &q, const Atom &t) {
  return q.atomic_number == t.atomic_number && q.aromatic == t.aromatic;
}

struct Matcher {
  const MolecularGraph &q;
  const MolecularGraph &t;
  bool first_only;
  std::vector<int> order;    // query atoms in search order
  std::vector<int> mapping;  // query atom -> target atom or -1
  std::vector<char> used;    // target atom already mapped
  std::vector<std::vector<int>> results;

  Matcher(const MolecularGraph &query, const MolecularGraph &target,
          bool stop_at_first)
      : q(query), t(target), first_only(stop_at_first) {
    // Connectivity-first ordering keeps the search anchored: after the first
    // atom of each query component, every atom follows a mapped neighbor.
    const int n = q.atom_count();
    std::vector<char> placed(static_cast<size_t>(n), 0);
    order.reserve(static_cast<size_t>(n));
    for (int seed = 0; seed < n; ++seed) {
      if (placed[static_cast<size_t>(seed)]) continue;
      std::vector<int> frontier{seed};
      placed[static_cast<size_t>(seed)] = 1;
      while (!frontier.empty()) {
        const int v = frontier.front();
        frontier.erase(frontier.begin());
        order.push_back(v);
        for (const int w : q.neighbors(v)) {
          if (!placed[static_cast<size_t>(w)]) {
            placed[static_cast<size_t>(w)] = 1;
            frontier.push_back(w);
          }
        }
      }
    }
    mapping.assign(static_cast<size_t>(n), -1);
    used.assign(static_cast<size_t>(t.atom_count()), 0);
  }

  bool feasible(int qa, int ta) {
    if (used[static_cast<size_t>(ta)]) return false;
    if (!atoms_compatible(q.atom(qa), t.atom(ta))) return false;
    if (q.atom(qa).degree > t.atom(ta).degree) return false;
    // every already-mapped query neighbor must be a target neighbor over a
    // bond of the same order
    for (const int e : q.incident_bonds(qa)) {
      const Bond &qb = q.bond(e);
      const int other = qb.other(qa);
      const int mapped = mapping[static_cast<size_t>(other)];
      if (mapped < 0) continue;
      const int te = t.find_bond(ta, mapped);
      if (te < 0) return false;
      if (t.bond(te).order != qb.order) return false;
    }
    return true;
  }

  bool search(size_t depth) {
    if (depth == order.size()) {
      results.push_back(mapping);
      return first_only;
    }
    const int qa = order[depth];
    for (int ta = 0; ta < t.atom_count(); ++ta) {
      if (!feasible(qa, ta)) continue;
      mapping[static_cast<size_t>(qa)] = ta;
      used[static_cast<size_t>(ta)] = 1;
      if (search(depth + 1)) return true;
      mapping[static_cast<size_t>(qa)] = -1;
      used[static_cast<size_t>(ta)] = 0;
    }
    return false;
  }
};

}  // namespace

std::vector<std::vector<int>> substructure_matches(
    const MolecularGraph &query, const MolecularGraph &target) {
  if (query.atom_count() == 0 || query.atom_count() > target.atom_count())
    return {};
  Matcher m(query, target, /*stop_at_first=*/false);
  m.search(0);
  return std::move(m.results);
}

bool has_substructure(const MolecularGraph &query,
                      const MolecularGraph &target) {
  if (query.atom_count() == 0 || query.atom_count() > target.atom_count())
    return false;
  Matcher m(query, target, /*stop_at_first=*/true);
  return m.search(0);
}

}  // namespace covgen::chem
