//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef COVGEN_DESC_QED_HPP
#define COVGEN_DESC_QED_HPP

#include "covgen/chem/molecule.hpp"
#include "covgen/desc/properties.hpp"

namespace covgen::desc {

// Geometric mean of the eight property desirabilities (asymmetric double
// sigmoids, published parameter set, unit weights). Always in (0, 1]; a dead
// desirability is floored at 1e-6 before the mean.
double qed(const chem::MolecularGraph &mol);
double qed(const PropertyVector &p);

// One desirability channel, exposed for tests. index follows the property
// order: mw, logp, hba, hbd, psa, rotb, arom, alerts.
double qed_desirability(int index, double value);

}  // namespace covgen::desc

#endif  // COVGEN_DESC_QED_HPP
