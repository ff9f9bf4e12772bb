//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef COVGEN_SCORE_SCORER_HPP
#define COVGEN_SCORE_SCORER_HPP

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace covgen::score {

enum class ScorerKind {
  Validity,
  Sa,
  CovalentActivity,
  ResidueAffinity,
  Docking,
  Overlap,
  Tanimoto,
  Qed,
  External,
};

const char *to_string(ScorerKind kind);

enum class Direction { HigherBetter, LowerBetter };

struct Knot {
  double x;
  double y;
};

enum class ThresholdOp { GreaterEq, LessEq };

struct Threshold {
  ThresholdOp op;
  double value;
  bool passes(double raw) const;
};

// One scoring function: a monotone piecewise-linear clip onto [0,1], an
// optional desirability threshold on the raw score, and an optional hard
// floor below which the clipped value is forced to zero.
struct ClippedScorer {
  std::string name;
  ScorerKind kind = ScorerKind::External;
  std::vector<Knot> knots;  // strictly increasing x; empty = clamped identity
  std::optional<Threshold> threshold;
  std::optional<double> hard_floor;
  double weight = 1.0;
  Direction direction = Direction::HigherBetter;

  // Piecewise-linear evaluation, constant beyond the outer knots.
  // Throws std::invalid_argument on non-finite raw input.
  double clip(double raw) const;
  bool passes_threshold(double raw) const;
  // Raw value assigned to molecules with no score (external files with
  // missing ids): the zero-clipped end of the knot range.
  double worst_raw() const;
};

// Scorer with the bundled defaults for its kind (knots, threshold, floor).
ClippedScorer make_scorer(ScorerKind kind, std::string name = "");

struct ScoreEntry {
  double raw = 0.0;
  double clipped = 0.0;
};

struct ScoreVector {
  std::string molecule_id;
  bool valid = true;
  std::map<std::string, ScoreEntry> values;  // keyed by scorer name
  bool desirable = false;
};

class ScorerRegistry {
public:
  void add(ClippedScorer scorer);  // rejects duplicate names
  const std::vector<ClippedScorer> &scorers() const { return scorers_; }
  const ClippedScorer *find(const std::string &name) const;
  bool empty() const { return scorers_.empty(); }

  // Fills clipped values and the desirable flag from raw scores already
  // stored in v. Invalid molecules get all clipped = 0 and desirable false.
  void evaluate(ScoreVector &v) const;

  // Objective presets: "<target>-<n>" for target in {egfr, ache} and n in
  // 1..4, growing from the base objective set by overlap, qed and tanimoto.
  static ScorerRegistry preset(const std::string &name);

private:
  std::vector<ClippedScorer> scorers_;
};

// Weighted arithmetic mean of clipped values over the registry's scorers,
// normalized by total weight so the result stays in [0,1]. Invalid molecule
// scores 0. Throws on an empty registry or a missing scorer value.
double reward(const ScoreVector &v, const ScorerRegistry &registry);

// True iff the molecule is valid and every registry scorer that declares a
// threshold passes it on the raw value. Throws on missing scorer values.
bool is_desirable(const ScoreVector &v, const ScorerRegistry &registry);

// Reads a two-column CSV (id, score). An optional "id,score" header line is
// skipped. Malformed rows raise std::runtime_error naming every bad line.
// A duplicate id keeps the last row and appends a note to *warnings.
std::unordered_map<std::string, double> ingest_external_scores(
    const std::string &path, std::vector<std::string> *warnings = nullptr);

}  // namespace covgen::score

#endif  // COVGEN_SCORE_SCORER_HPP
