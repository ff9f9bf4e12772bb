//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef COVGEN_DESC_PROPERTIES_HPP
#define COVGEN_DESC_PROPERTIES_HPP

#include "covgen/chem/molecule.hpp"

namespace covgen::desc {

struct PropertyVector {
  double mw = 0.0;    // g/mol, implicit hydrogens included
  double logp = 0.0;  // atomic-contribution estimate
  int hba = 0;
  int hbd = 0;
  double psa = 0.0;  // Å²
  int rotb = 0;
  int arom = 0;    // aromatic ring count
  int alerts = 0;  // structural alert motif hits
};

PropertyVector compute_properties(const chem::MolecularGraph &mol);

// Individual calculators, exposed for tests.
double molecular_weight(const chem::MolecularGraph &mol);
double crippen_logp(const chem::MolecularGraph &mol);
double polar_surface_area(const chem::MolecularGraph &mol);
int hbond_acceptors(const chem::MolecularGraph &mol);
int hbond_donors(const chem::MolecularGraph &mol);
int rotatable_bonds(const chem::MolecularGraph &mol);
int aromatic_ring_count(const chem::MolecularGraph &mol);
int alert_count(const chem::MolecularGraph &mol);

}  // namespace covgen::desc

#endif  // COVGEN_DESC_PROPERTIES_HPP
