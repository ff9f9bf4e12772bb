//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#include "covgen/eval/evalkit.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "covgen/chem/smiles.hpp"
#include "covgen/chem/substructure.hpp"
#include "covgen/util/io.hpp"

namespace covgen::eval {

GenerationRun make_run(std::string run_id, std::string preset,
                       std::vector<MoleculeRecord> records) {
  GenerationRun run;
  run.run_id = std::move(run_id);
  run.preset = std::move(preset);
  run.records = std::move(records);
  run.generated = static_cast<int>(run.records.size());
  for (const auto &r : run.records) {
    if (r.scores.valid) ++run.valid;
    if (r.desirable) {
      if (!r.scores.valid)
        throw std::invalid_argument(
            "make_run: record '" + r.smiles + "' desirable but invalid");
      ++run.desirable;
    }
  }
  return run;
}

namespace {

Rediscovery rediscovery_over(const std::vector<MoleculeRecord> &records,
                             int desirable_total,
                             const std::set<std::string> &reference) {
  std::set<std::string> found;
  for (const auto &r : records)
    if (r.desirable && reference.count(r.canonical)) found.insert(r.canonical);
  Rediscovery out;
  out.count = static_cast<int>(found.size());
  out.applicable = desirable_total > 0;
  out.rate = out.applicable ? 100.0 * static_cast<double>(out.count) /
                                  static_cast<double>(desirable_total)
                            : 0.0;
  return out;
}

}  // namespace

Rediscovery rediscovery_rate(const GenerationRun &run,
                             const std::set<std::string> &reference) {
  return rediscovery_over(run.records, run.desirable, reference);
}

std::vector<SweepRow> volume_sweep(const GenerationRun &run,
                                   const std::vector<int> &scales,
                                   const std::set<std::string> &reference) {
  for (size_t i = 1; i < scales.size(); ++i)
    if (scales[i] <= scales[i - 1])
      throw std::invalid_argument("volume_sweep: scales must ascend");
  std::vector<SweepRow> rows;
  rows.reserve(scales.size());
  for (int scale : scales) {
    if (scale < 0 || scale > run.generated)
      throw std::invalid_argument("volume_sweep: scale " +
                                  std::to_string(scale) +
                                  " exceeds the run size");
    std::vector<MoleculeRecord> prefix(run.records.begin(),
                                       run.records.begin() + scale);
    GenerationRun sub = make_run(run.run_id, run.preset, std::move(prefix));
    const Rediscovery r = rediscovery_rate(sub, reference);
    rows.push_back({scale, sub.generated, sub.valid, sub.desirable, r.count,
                    r.applicable, r.rate});
  }
  return rows;
}

std::vector<MotifQuery> builtin_motifs() {
  std::vector<MotifQuery> motifs;
  const std::pair<const char *, const char *> defs[] = {
      {"allene", "C=C=C"},
      {"3-oxo-beta-sultam", "O=C1CS(=O)(=O)N1"},
      {"alpha-methylene-beta-lactone", "C=C1COC1=O"},
  };
  for (const auto &[name, smiles] : defs)
    motifs.push_back({name, smiles, chem::parse_smiles(smiles)});
  return motifs;
}

std::vector<MotifHits> motif_search(const GenerationRun &run,
                                    const std::vector<MotifQuery> &motifs) {
  std::vector<MotifHits> hits(motifs.size());
  for (size_t m = 0; m < motifs.size(); ++m) hits[m].name = motifs[m].name;
  for (size_t i = 0; i < run.records.size(); ++i) {
    const auto &record = run.records[i];
    if (!record.desirable) continue;
    const chem::MolecularGraph mol = chem::parse_smiles(record.canonical);
    for (size_t m = 0; m < motifs.size(); ++m)
      if (chem::has_substructure(motifs[m].graph, mol))
        hits[m].record_indices.push_back(static_cast<int>(i));
  }
  return hits;
}

namespace {

double parse_coord(const std::string &token, const std::string &origin,
                   size_t line_no) {
  try {
    size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size() || !std::isfinite(v)) throw std::runtime_error("");
    return v;
  } catch (...) {
    throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                             ": bad coordinate '" + token + "'");
  }
}

}  // namespace

PoseFile parse_pose(const std::string &content, const std::string &origin) {
  std::istringstream stream(content);
  std::string line;
  PoseFile pose;
  size_t line_no = 0;
  bool have_header = false;
  std::vector<bool> seen;
  std::vector<std::array<double, 3>> coords;

  while (std::getline(stream, line)) {
    ++line_no;
    const std::string text = util::strip(line);
    if (text.empty() || text[0] == '#') continue;
    std::istringstream fields(text);
    if (!have_header) {
      std::string x, y, z;
      if (!(fields >> pose.molecule_id >> pose.residue_label >> x >> y >> z))
        throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                                 ": malformed pose header");
      std::string extra;
      if (fields >> extra)
        throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                                 ": trailing fields in pose header");
      pose.anchor = {parse_coord(x, origin, line_no),
                     parse_coord(y, origin, line_no),
                     parse_coord(z, origin, line_no)};
      have_header = true;
      continue;
    }
    std::string idx, x, y, z;
    if (!(fields >> idx >> x >> y >> z))
      throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                               ": malformed atom row");
    std::string extra;
    if (fields >> extra)
      throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                               ": trailing fields in atom row");
    int index = -1;
    const auto r = std::from_chars(idx.data(), idx.data() + idx.size(), index);
    if (r.ec != std::errc{} || r.ptr != idx.data() + idx.size() || index < 0)
      throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                               ": bad atom index '" + idx + "'");
    if (static_cast<size_t>(index) >= coords.size()) {
      coords.resize(static_cast<size_t>(index) + 1);
      seen.resize(static_cast<size_t>(index) + 1, false);
    }
    if (seen[static_cast<size_t>(index)])
      throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                               ": duplicate atom index " + idx);
    seen[static_cast<size_t>(index)] = true;
    coords[static_cast<size_t>(index)] = {parse_coord(x, origin, line_no),
                                          parse_coord(y, origin, line_no),
                                          parse_coord(z, origin, line_no)};
  }
  if (!have_header)
    throw std::runtime_error(origin + ": empty pose file");
  for (size_t i = 0; i < seen.size(); ++i)
    if (!seen[i])
      throw std::runtime_error(origin + ": missing atom index " +
                               std::to_string(i));
  pose.coords = std::move(coords);
  return pose;
}

PoseFile load_pose(const std::string &path) {
  return parse_pose(util::read_file(path), path);
}

double warhead_distance(const chem::MolecularGraph &mol,
                        const nn::AttributionMap &attribution,
                        const PoseFile &pose) {
  if (pose.coords.size() != static_cast<size_t>(mol.atom_count()))
    throw std::invalid_argument(
        "warhead_distance: pose has " + std::to_string(pose.coords.size()) +
        " atoms, molecule has " + std::to_string(mol.atom_count()));
  if (attribution.tagged.empty())
    throw std::invalid_argument(
        "warhead_distance: attribution tags no warhead atoms");
  double best = std::numeric_limits<double>::infinity();
  for (int idx : attribution.tagged) {
    if (idx < 0 || idx >= mol.atom_count())
      throw std::invalid_argument("warhead_distance: tagged index " +
                                  std::to_string(idx) + " out of range");
    const auto &c = pose.coords[static_cast<size_t>(idx)];
    const double dx = c[0] - pose.anchor[0];
    const double dy = c[1] - pose.anchor[1];
    const double dz = c[2] - pose.anchor[2];
    best = std::min(best, std::sqrt(dx * dx + dy * dy + dz * dz));
  }
  return best;
}

ChemicalProjection project_chemical_space(
    const std::vector<chem::Fingerprint> &fps, int k) {
  const int n = static_cast<int>(fps.size());
  if (n < 2)
    throw std::invalid_argument(
        "project_chemical_space: needs at least two fingerprints");
  if (k < 2) throw std::invalid_argument("project_chemical_space: k < 2");
  const int dim = chem::Fingerprint::kBits;
  k = std::min(k, std::min(n, dim));
  k = std::max(k, 2);

  Eigen::MatrixXd x(n, dim);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < dim; ++j)
      x(i, j) = fps[static_cast<size_t>(i)].test(j) ? 1.0 : 0.0;
  const Eigen::RowVectorXd mean = x.colwise().mean();
  x.rowwise() -= mean;

  ChemicalProjection out;
  out.components = Eigen::MatrixXd::Zero(k, dim);
  out.scores = Eigen::MatrixXd::Zero(n, k);
  Eigen::MatrixXd deflated = x;
  for (int c = 0; c < k; ++c) {
    // Deterministic start: spread over coordinates, then normalized.
    Eigen::VectorXd v = Eigen::VectorXd::Ones(dim);
    for (int j = 0; j < dim; ++j)
      v(j) += 0.01 * static_cast<double>((j + 7 * c) % 13);
    v.normalize();
    for (int iter = 0; iter < 1000; ++iter) {
      Eigen::VectorXd next = deflated.transpose() * (deflated * v);
      const double norm = next.norm();
      if (norm < 1e-14) {  // no variance left in this subspace
        next = v;
        break;
      }
      next /= norm;
      const double delta = (next - v).norm();
      v = next;
      if (delta < 1e-12) break;
    }
    // Sign convention: the largest-magnitude loading is positive.
    Eigen::Index peak = 0;
    v.cwiseAbs().maxCoeff(&peak);
    if (v(peak) < 0.0) v = -v;
    out.components.row(c) = v.transpose();
    out.scores.col(c) = deflated * v;
    deflated -= (deflated * v) * v.transpose();
  }
  out.points.resize(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    out.points[static_cast<size_t>(i)] = {out.scores(i, 0), out.scores(i, 1)};
  return out;
}

}  // namespace covgen::eval
