//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef COVGEN_CHEM_MOLECULE_HPP
#define COVGEN_CHEM_MOLECULE_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace covgen::chem {

enum class BondOrder : uint8_t { Single = 1, Double = 2, Triple = 3, Aromatic = 4 };

enum class Stereo : uint8_t { None = 0, CCW = 1, CW = 2 };

struct Atom {
  uint8_t atomic_number = 6;
  int8_t formal_charge = 0;
  bool aromatic = false;
  bool in_ring = false;
  // Resolved hydrogen count: bracket H-count verbatim, implicit hydrogens
  // filled from the valence table otherwise.
  uint8_t explicit_h = 0;
  // Parsed @/@@ annotation. Preserved but never affects canonical ranking.
  Stereo stereo = Stereo::None;
  uint8_t degree = 0;  // incident bond count, derived
};

struct Bond {
  int a = 0;
  int b = 0;
  BondOrder order = BondOrder::Single;
  bool in_ring = false;
  int other(int atom) const { return atom == a ? b : a; }
};

// Immutable after construction (the parser finalizes it); all accessors are
// const and the type is safe to share across scoring threads.
class MolecularGraph {
public:
  MolecularGraph() = default;
  MolecularGraph(std::vector<Atom> atoms, std::vector<Bond> bonds,
                 std::string source_smiles);

  int atom_count() const { return static_cast<int>(atoms_.size()); }
  int bond_count() const { return static_cast<int>(bonds_.size()); }
  const Atom &atom(int i) const { return atoms_[static_cast<size_t>(i)]; }
  const Bond &bond(int i) const { return bonds_[static_cast<size_t>(i)]; }
  const std::vector<Atom> &atoms() const { return atoms_; }
  const std::vector<Bond> &bonds() const { return bonds_; }
  const std::string &source_smiles() const { return source_smiles_; }

  // Indices of bonds incident to atom i.
  std::span<const int> incident_bonds(int i) const;
  // Neighbor atom indices of atom i, ordered by bond insertion.
  std::span<const int> neighbors(int i) const;
  // Bond index between i and j, or -1.
  int find_bond(int i, int j) const;

  int component_count() const { return component_count_; }
  // Component id per atom, dense from 0 in first-seen order.
  const std::vector<int> &component_of() const { return component_of_; }

  // Small-ring set: one smallest cycle per independent cycle (atom index
  // lists). Covers every ring bond; adequate for aromatic-ring counting and
  // macrocycle detection at desk scale.
  const std::vector<std::vector<int>> &rings() const { return rings_; }

  // Bond order with Aromatic resolved to the kekulized Single/Double
  // assignment chosen at perception time.
  BondOrder kekule_order(int bond_index) const;

  // Sum of kekulized bond orders at atom i (heavy neighbors only).
  int bond_order_sum(int i) const;

  // Total hydrogen count of atom i (this model keeps all H implicit).
  int hydrogen_count(int i) const { return atom(i).explicit_h; }

  // Heavy-atom molecular formula invariants used by tests.
  int heavy_atom_count() const { return atom_count(); }

  // Relabeled copy: atom old index i becomes perm[i]. Bond endpoints are
  // remapped and bond list order preserved.
  MolecularGraph permuted(const std::vector<int> &perm) const;

private:
  friend class GraphFinalizer;

  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::string source_smiles_;

  std::vector<int> adjacency_;        // flattened neighbor lists
  std::vector<int> incident_;        // flattened incident bond lists
  std::vector<int> adjacency_start_;  // size atoms+1
  std::vector<int> component_of_;
  int component_count_ = 0;
  std::vector<std::vector<int>> rings_;
  std::vector<BondOrder> kekule_;  // per bond

  void build_derived();
};

}  // namespace covgen::chem

#endif  // COVGEN_CHEM_MOLECULE_HPP
