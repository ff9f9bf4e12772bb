//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#include "covgen/chem/molecule.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace covgen::chem {

MolecularGraph::MolecularGraph(std::vector<Atom> atoms, std::vector<Bond> bonds,
                               std::string source_smiles)
    : atoms_(std::move(atoms)),
      bonds_(std::move(bonds)),
      source_smiles_(std::move(source_smiles)) {
  build_derived();
}

void MolecularGraph::build_derived() {
  const int n = atom_count();
  const int m = bond_count();

  for (const Bond &b : bonds_) {
    if (b.a == b.b) throw std::invalid_argument("self-loop bond");
    if (b.a < 0 || b.b < 0 || b.a >= n || b.b >= n)
      throw std::invalid_argument("bond endpoint out of range");
  }

  adjacency_start_.assign(static_cast<size_t>(n) + 1, 0);
  for (const Bond &b : bonds_) {
    ++adjacency_start_[static_cast<size_t>(b.a) + 1];
    ++adjacency_start_[static_cast<size_t>(b.b) + 1];
  }
  for (int i = 0; i < n; ++i) adjacency_start_[i + 1] += adjacency_start_[i];

  adjacency_.assign(static_cast<size_t>(m) * 2, 0);
  incident_.assign(static_cast<size_t>(m) * 2, 0);
  std::vector<int> cursor(adjacency_start_.begin(), adjacency_start_.end() - 1);
  for (int e = 0; e < m; ++e) {
    const Bond &b = bonds_[static_cast<size_t>(e)];
    adjacency_[cursor[b.a]] = b.b;
    incident_[cursor[b.a]++] = e;
    adjacency_[cursor[b.b]] = b.a;
    incident_[cursor[b.b]++] = e;
  }

  for (int i = 0; i < n; ++i) {
    const int deg = adjacency_start_[i + 1] - adjacency_start_[i];
    atoms_[static_cast<size_t>(i)].degree = static_cast<uint8_t>(deg);
    // duplicate-bond guard: neighbors of one atom must be distinct
    std::vector<int> nb(neighbors(i).begin(), neighbors(i).end());
    std::sort(nb.begin(), nb.end());
    if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
      throw std::invalid_argument("duplicate bond between atom pair");
  }

  // connected components, first-seen order
  component_of_.assign(static_cast<size_t>(n), -1);
  component_count_ = 0;
  for (int start = 0; start < n; ++start) {
    if (component_of_[start] != -1) continue;
    std::deque<int> queue{start};
    component_of_[start] = component_count_;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (const int w : neighbors(v)) {
        if (component_of_[w] == -1) {
          component_of_[w] = component_count_;
          queue.push_back(w);
        }
      }
    }
    ++component_count_;
  }

  // Ring bonds: every non-bridge edge. Bridges found by DFS low-links.
  std::vector<int> disc(static_cast<size_t>(n), -1);
  std::vector<int> low(static_cast<size_t>(n), 0);
  std::vector<bool> bridge(static_cast<size_t>(m), false);
  int timer = 0;
  // iterative DFS to avoid deep recursion on long chains
  struct Frame {
    int v;
    int parent_edge;
    int cursor;
  };
  for (int root = 0; root < n; ++root) {
    if (disc[root] != -1) continue;
    std::vector<Frame> stack{{root, -1, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame &fr = stack.back();
      const auto inc = incident_bonds(fr.v);
      if (fr.cursor < static_cast<int>(inc.size())) {
        const int e = inc[fr.cursor++];
        if (e == fr.parent_edge) continue;
        const int w = bonds_[static_cast<size_t>(e)].other(fr.v);
        if (disc[w] == -1) {
          disc[w] = low[w] = timer++;
          stack.push_back({w, e, 0});
        } else {
          low[fr.v] = std::min(low[fr.v], disc[w]);
        }
      } else {
        const int v = fr.v;
        const int pe = fr.parent_edge;
        stack.pop_back();
        if (!stack.empty()) {
          const int p = stack.back().v;
          low[p] = std::min(low[p], low[v]);
          if (low[v] > disc[p]) bridge[static_cast<size_t>(pe)] = true;
        }
      }
    }
  }
  for (int e = 0; e < m; ++e) {
    if (!bridge[static_cast<size_t>(e)]) {
      Bond &b = bonds_[static_cast<size_t>(e)];
      b.in_ring = true;
      atoms_[static_cast<size_t>(b.a)].in_ring = true;
      atoms_[static_cast<size_t>(b.b)].in_ring = true;
    }
  }

  // Small-ring set: cycle basis from a spanning tree, with each basis cycle
  // shrunk to a smallest cycle through its defining chord (BFS avoiding the
  // chord itself).
  rings_.clear();
  {
    std::vector<int> parent(static_cast<size_t>(n), -2);
    std::vector<int> parent_edge(static_cast<size_t>(n), -1);
    std::vector<bool> tree_edge(static_cast<size_t>(m), false);
    for (int root = 0; root < n; ++root) {
      if (parent[root] != -2) continue;
      parent[root] = -1;
      std::deque<int> queue{root};
      while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        const auto inc = incident_bonds(v);
        for (const int e : inc) {
          const int w = bonds_[static_cast<size_t>(e)].other(v);
          if (parent[w] == -2) {
            parent[w] = v;
            parent_edge[w] = e;
            tree_edge[static_cast<size_t>(e)] = true;
            queue.push_back(w);
          }
        }
      }
    }
    std::vector<std::vector<int>> seen;
    for (int chord = 0; chord < m; ++chord) {
      if (tree_edge[static_cast<size_t>(chord)] ||
          bridge[static_cast<size_t>(chord)])
        continue;
      const int src = bonds_[static_cast<size_t>(chord)].a;
      const int dst = bonds_[static_cast<size_t>(chord)].b;
      // shortest path src->dst not using the chord
      std::vector<int> prev(static_cast<size_t>(n), -1);
      std::deque<int> queue{src};
      prev[src] = src;
      while (!queue.empty() && prev[dst] == -1) {
        const int v = queue.front();
        queue.pop_front();
        const auto inc = incident_bonds(v);
        for (const int e : inc) {
          if (e == chord) continue;
          const int w = bonds_[static_cast<size_t>(e)].other(v);
          if (prev[w] == -1) {
            prev[w] = v;
            queue.push_back(w);
          }
        }
      }
      if (prev[dst] == -1) continue;
      std::vector<int> cycle;
      for (int v = dst; v != src; v = prev[v]) cycle.push_back(v);
      cycle.push_back(src);
      std::vector<int> key = cycle;
      std::sort(key.begin(), key.end());
      if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
        seen.push_back(key);
        rings_.push_back(std::move(cycle));
      }
    }
  }

  // Kekule assignment defaults to declared orders; the parser installs the
  // aromatic resolution before handing out the graph.
  if (kekule_.empty()) {
    kekule_.reserve(static_cast<size_t>(m));
    for (const Bond &b : bonds_)
      kekule_.push_back(b.order == BondOrder::Aromatic ? BondOrder::Single
                                                       : b.order);
  }
}

std::span<const int> MolecularGraph::incident_bonds(int i) const {
  const auto begin = adjacency_start_[static_cast<size_t>(i)];
  const auto end = adjacency_start_[static_cast<size_t>(i) + 1];
  return {incident_.data() + begin, static_cast<size_t>(end - begin)};
}

std::span<const int> MolecularGraph::neighbors(int i) const {
  const auto begin = adjacency_start_[static_cast<size_t>(i)];
  const auto end = adjacency_start_[static_cast<size_t>(i) + 1];
  return {adjacency_.data() + begin, static_cast<size_t>(end - begin)};
}

int MolecularGraph::find_bond(int i, int j) const {
  for (const int e : incident_bonds(i)) {
    if (bonds_[static_cast<size_t>(e)].other(i) == j) return e;
  }
  return -1;
}

BondOrder MolecularGraph::kekule_order(int bond_index) const {
  return kekule_[static_cast<size_t>(bond_index)];
}

int MolecularGraph::bond_order_sum(int i) const {
  int sum = 0;
  for (const int e : incident_bonds(i))
    sum += static_cast<int>(kekule_[static_cast<size_t>(e)]);
  return sum;
}

MolecularGraph MolecularGraph::permuted(const std::vector<int> &perm) const {
  const int n = atom_count();
  std::vector<Atom> atoms(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) atoms[static_cast<size_t>(perm[i])] = atoms_[i];
  std::vector<Bond> bonds = bonds_;
  for (Bond &b : bonds) {
    b.a = perm[b.a];
    b.b = perm[b.b];
  }
  MolecularGraph out;
  out.atoms_ = std::move(atoms);
  out.bonds_ = std::move(bonds);
  out.source_smiles_ = source_smiles_;
  out.kekule_ = kekule_;  // bond list order unchanged
  out.build_derived();
  return out;
}

}  // namespace covgen::chem
