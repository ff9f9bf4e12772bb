//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef COVGEN_EVAL_EVALKIT_HPP
#define COVGEN_EVAL_EVALKIT_HPP

#include <Eigen/Dense>
#include <array>
#include <set>
#include <string>
#include <vector>

#include "covgen/chem/fingerprint.hpp"
#include "covgen/chem/molecule.hpp"
#include "covgen/nn/graph_model.hpp"
#include "covgen/score/scorer.hpp"

namespace covgen::eval {

struct MoleculeRecord {
  std::string smiles;     // surface form as generated
  std::string canonical;  // canonical key, empty when invalid
  score::ScoreVector scores;
  bool desirable = false;
};

// One generation campaign. Counts are derived from the records on
// construction and obey desirable <= valid <= generated.
struct GenerationRun {
  std::string run_id;
  std::string preset;
  std::vector<MoleculeRecord> records;
  int generated = 0;
  int valid = 0;
  int desirable = 0;
};

GenerationRun make_run(std::string run_id, std::string preset,
                       std::vector<MoleculeRecord> records);

struct Rediscovery {
  int count = 0;           // distinct desirable keys found in the reference
  bool applicable = false; // false when the run has no desirable structures
  double rate = 0.0;       // percent, 0 when not applicable
};

Rediscovery rediscovery_rate(const GenerationRun &run,
                             const std::set<std::string> &reference);

struct SweepRow {
  int scale = 0;
  int generated = 0;
  int valid = 0;
  int desirable = 0;
  int rediscovered = 0;
  bool rate_applicable = false;
  double rate = 0.0;  // percent
};

// Nested-prefix accounting: row k covers the first scales[k] records, so
// absolute rediscoveries are non-decreasing in scale. Scales must ascend
// and fit the run.
std::vector<SweepRow> volume_sweep(const GenerationRun &run,
                                   const std::vector<int> &scales,
                                   const std::set<std::string> &reference);

// Named query structures scanned over the desirable records of a run.
struct MotifQuery {
  std::string name;
  std::string smiles;
  chem::MolecularGraph graph;
};

// Allene, 3-oxo-beta-sultam and alpha-methylene-beta-lactone.
std::vector<MotifQuery> builtin_motifs();

struct MotifHits {
  std::string name;
  std::vector<int> record_indices;  // into run.records
};

std::vector<MotifHits> motif_search(const GenerationRun &run,
                                    const std::vector<MotifQuery> &motifs);

// Ingested 3D pose: heavy-atom coordinates in canonical atom order plus the
// target-residue anchor point. Distances in Angstroms.
struct PoseFile {
  std::string molecule_id;
  std::string residue_label;
  std::array<double, 3> anchor{};
  std::vector<std::array<double, 3>> coords;
};

// Text format: one header line "<mol-id> <residue-label> <x> <y> <z>",
// then one "<index> <x> <y> <z>" line per heavy atom. Indices must cover
// 0..n-1 exactly; coordinates must be finite. `origin` names the source in
// error messages.
PoseFile parse_pose(const std::string &content, const std::string &origin);
PoseFile load_pose(const std::string &path);

// Minimum Euclidean distance from any tagged atom to the residue anchor.
// Attribution indices and pose rows must both follow mol's atom order.
// Throws when no atom is tagged or the coordinate count mismatches.
double warhead_distance(const chem::MolecularGraph &mol,
                        const nn::AttributionMap &attribution,
                        const PoseFile &pose);

// Principal-component embedding of fingerprint bit vectors: mean-centered,
// top-k directions by power iteration with deflation, deterministic start
// and sign convention. points carries the first two coordinates.
struct ChemicalProjection {
  Eigen::MatrixXd scores;      // n x k
  Eigen::MatrixXd components;  // k x fingerprint bits, unit rows
  std::vector<std::array<double, 2>> points;
};

ChemicalProjection project_chemical_space(
    const std::vector<chem::Fingerprint> &fps, int k = 2);

}  // namespace covgen::eval

#endif  // COVGEN_EVAL_EVALKIT_HPP
