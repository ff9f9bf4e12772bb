//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#include "covgen/score/scorer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "covgen/util/io.hpp"

namespace covgen::score {

const char *to_string(ScorerKind kind) {
  switch (kind) {
    case ScorerKind::Validity: return "validity";
    case ScorerKind::Sa: return "sa";
    case ScorerKind::CovalentActivity: return "covalent_activity";
    case ScorerKind::ResidueAffinity: return "residue_affinity";
    case ScorerKind::Docking: return "docking";
    case ScorerKind::Overlap: return "overlap";
    case ScorerKind::Tanimoto: return "tanimoto";
    case ScorerKind::Qed: return "qed";
    case ScorerKind::External: return "external";
  }
  return "unknown";
}

bool Threshold::passes(double raw) const {
  return op == ThresholdOp::GreaterEq ? raw >= value : raw <= value;
}

double ClippedScorer::clip(double raw) const {
  if (!std::isfinite(raw))
    throw std::invalid_argument("scorer '" + name + "': non-finite raw score");
  if (hard_floor && raw < *hard_floor) return 0.0;
  if (knots.empty()) return std::clamp(raw, 0.0, 1.0);
  if (raw <= knots.front().x) return knots.front().y;
  if (raw >= knots.back().x) return knots.back().y;
  for (size_t k = 1; k < knots.size(); ++k) {
    if (raw <= knots[k].x) {
      const Knot &a = knots[k - 1];
      const Knot &b = knots[k];
      const double t = (raw - a.x) / (b.x - a.x);
      return a.y + t * (b.y - a.y);
    }
  }
  return knots.back().y;
}

bool ClippedScorer::passes_threshold(double raw) const {
  return !threshold || threshold->passes(raw);
}

double ClippedScorer::worst_raw() const {
  if (knots.empty()) return 0.0;
  return direction == Direction::HigherBetter ? knots.front().x
                                              : knots.back().x;
}

ClippedScorer make_scorer(ScorerKind kind, std::string name) {
  ClippedScorer s;
  s.kind = kind;
  s.name = name.empty() ? to_string(kind) : std::move(name);
  switch (kind) {
    case ScorerKind::Validity:
      s.knots = {{0.0, 0.0}, {1.0, 1.0}};
      break;
    case ScorerKind::Sa:
      s.knots = {{3.0, 1.0}, {8.0, 0.0}};
      s.threshold = Threshold{ThresholdOp::LessEq, 6.0};
      s.direction = Direction::LowerBetter;
      break;
    case ScorerKind::CovalentActivity:
    case ScorerKind::ResidueAffinity:
      s.knots = {{0.5, 0.0}, {1.0, 1.0}};
      s.hard_floor = 0.5;
      s.threshold = Threshold{ThresholdOp::GreaterEq, 0.75};
      break;
    case ScorerKind::Docking:
      s.knots = {{-10.0, 1.0}, {-4.0, 0.0}};
      s.threshold = Threshold{ThresholdOp::LessEq, -6.0};
      s.direction = Direction::LowerBetter;
      break;
    case ScorerKind::Overlap:
      s.knots = {{0.0, 0.0}, {160.0, 1.0}};
      s.threshold = Threshold{ThresholdOp::GreaterEq, 100.0};
      break;
    case ScorerKind::Tanimoto:
      s.knots = {{0.0, 0.0}, {0.4, 1.0}};
      s.threshold = Threshold{ThresholdOp::GreaterEq, 0.1};
      break;
    case ScorerKind::Qed:
      break;  // clamped identity, no threshold
    case ScorerKind::External:
      break;
  }
  return s;
}

void ScorerRegistry::add(ClippedScorer scorer) {
  if (scorer.weight < 0.0)
    throw std::invalid_argument("scorer '" + scorer.name +
                                "': negative weight");
  for (size_t k = 1; k < scorer.knots.size(); ++k)
    if (!(scorer.knots[k - 1].x < scorer.knots[k].x))
      throw std::invalid_argument("scorer '" + scorer.name +
                                  "': knots not strictly increasing");
  for (const Knot &k : scorer.knots)
    if (k.y < 0.0 || k.y > 1.0)
      throw std::invalid_argument("scorer '" + scorer.name +
                                  "': knot value outside [0,1]");
  if (find(scorer.name))
    throw std::invalid_argument("duplicate scorer name '" + scorer.name + "'");
  scorers_.push_back(std::move(scorer));
}

const ClippedScorer *ScorerRegistry::find(const std::string &name) const {
  for (const auto &s : scorers_)
    if (s.name == name) return &s;
  return nullptr;
}

void ScorerRegistry::evaluate(ScoreVector &v) const {
  if (!v.valid) {
    for (const auto &s : scorers_) {
      auto &entry = v.values[s.name];
      entry.clipped = 0.0;
    }
    v.desirable = false;
    return;
  }
  for (const auto &s : scorers_) {
    auto it = v.values.find(s.name);
    if (it == v.values.end())
      throw std::invalid_argument("missing raw score for scorer '" + s.name +
                                  "'");
    it->second.clipped = s.clip(it->second.raw);
  }
  v.desirable = is_desirable(v, *this);
}

ScorerRegistry ScorerRegistry::preset(const std::string &name) {
  const auto dash = name.find('-');
  const std::string target = dash == std::string::npos ? name : name.substr(0, dash);
  const std::string level_str = dash == std::string::npos ? "" : name.substr(dash + 1);
  if ((target != "egfr" && target != "ache") || level_str.size() != 1 ||
      level_str[0] < '1' || level_str[0] > '4')
    throw std::invalid_argument("unknown scorer preset '" + name + "'");
  const int level = level_str[0] - '0';

  ScorerRegistry r;
  r.add(make_scorer(ScorerKind::Validity));
  r.add(make_scorer(ScorerKind::Sa));
  r.add(make_scorer(ScorerKind::CovalentActivity));
  r.add(make_scorer(ScorerKind::ResidueAffinity));
  r.add(make_scorer(ScorerKind::Docking));
  if (level >= 2) r.add(make_scorer(ScorerKind::Overlap));
  if (level >= 3) r.add(make_scorer(ScorerKind::Qed));
  if (level >= 4) r.add(make_scorer(ScorerKind::Tanimoto));
  return r;
}

double reward(const ScoreVector &v, const ScorerRegistry &registry) {
  if (registry.empty())
    throw std::invalid_argument("reward: empty scorer registry");
  if (!v.valid) return 0.0;
  double total = 0.0;
  double weight_sum = 0.0;
  for (const auto &s : registry.scorers()) {
    auto it = v.values.find(s.name);
    if (it == v.values.end())
      throw std::invalid_argument("missing raw score for scorer '" + s.name +
                                  "'");
    total += s.weight * s.clip(it->second.raw);
    weight_sum += s.weight;
  }
  if (weight_sum <= 0.0)
    throw std::invalid_argument("reward: total scorer weight is zero");
  return total / weight_sum;
}

bool is_desirable(const ScoreVector &v, const ScorerRegistry &registry) {
  if (!v.valid) return false;
  for (const auto &s : registry.scorers()) {
    if (!s.threshold) continue;
    auto it = v.values.find(s.name);
    if (it == v.values.end())
      throw std::invalid_argument("missing raw score for scorer '" + s.name +
                                  "'");
    if (!s.threshold->passes(it->second.raw)) return false;
  }
  return true;
}

std::unordered_map<std::string, double> ingest_external_scores(
    const std::string &path, std::vector<std::string> *warnings) {
  const auto lines = util::read_lines(path);
  std::unordered_map<std::string, double> scores;
  std::vector<int> bad_lines;
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string row = util::strip(lines[i]);
    if (row.empty() || row[0] == '#') continue;
    const auto comma = row.find(',');
    if (comma == std::string::npos || comma == 0) {
      bad_lines.push_back(static_cast<int>(i + 1));
      continue;
    }
    const std::string id = util::strip(row.substr(0, comma));
    const std::string value = util::strip(row.substr(comma + 1));
    if (i == 0 && id == "id" && value == "score") continue;  // header
    double raw = 0.0;
    try {
      size_t used = 0;
      raw = std::stod(value, &used);
      if (used != value.size() || !std::isfinite(raw)) throw std::exception();
    } catch (const std::exception &) {
      bad_lines.push_back(static_cast<int>(i + 1));
      continue;
    }
    if (warnings && scores.count(id))
      warnings->push_back(path + ":" + std::to_string(i + 1) +
                          ": duplicate id '" + id + "', keeping last value");
    scores[id] = raw;
  }
  if (!bad_lines.empty()) {
    std::ostringstream msg;
    msg << path << ": malformed score rows at line";
    if (bad_lines.size() > 1) msg << "s";
    for (size_t k = 0; k < bad_lines.size(); ++k)
      msg << (k ? "," : "") << " " << bad_lines[k];
    throw std::runtime_error(msg.str());
  }
  return scores;
}

}  // namespace covgen::score
