//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#include "covgen/desc/sa_score.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <stdexcept>

#include "covgen/chem/fingerprint.hpp"
#include "covgen/util/hash.hpp"
#include "covgen/util/io.hpp"

namespace covgen::desc {

namespace {

constexpr int kMaxRadius = chem::Fingerprint::kRadius;

void collect_environments(const chem::MolecularGraph &mol,
                          std::vector<uint64_t> &out) {
  for (int a = 0; a < mol.atom_count(); ++a)
    for (int r = 0; r <= kMaxRadius; ++r)
      out.push_back(chem::environment_id(mol, a, r));
}

}  // namespace

FragmentScoreTable FragmentScoreTable::fit(
    const std::vector<chem::MolecularGraph> &corpus,
    const std::string &corpus_id) {
  std::unordered_map<uint64_t, int64_t> counts;
  std::vector<uint64_t> envs;
  for (const auto &mol : corpus) {
    envs.clear();
    collect_environments(mol, envs);
    for (uint64_t e : envs) ++counts[e];
  }

  FragmentScoreTable table;
  table.corpus_id_ = corpus_id;
  if (counts.empty()) return table;

  std::vector<int64_t> sorted_counts;
  sorted_counts.reserve(counts.size());
  for (const auto &[env, n] : counts) sorted_counts.push_back(n);
  std::sort(sorted_counts.begin(), sorted_counts.end());
  const double median =
      static_cast<double>(sorted_counts[sorted_counts.size() / 2]);

  for (const auto &[env, n] : counts) {
    double c = std::log10(static_cast<double>(n) / median);
    c = std::clamp(c, kMinContribution, kMaxContribution);
    table.contributions_.emplace(env, c);
  }
  return table;
}

double FragmentScoreTable::contribution(uint64_t environment) const {
  auto it = contributions_.find(environment);
  return it == contributions_.end() ? kMinContribution : it->second;
}

void FragmentScoreTable::set(uint64_t environment, double value) {
  contributions_[environment] = value;
}

void FragmentScoreTable::save(const std::string &path) const {
  std::vector<std::pair<uint64_t, double>> rows(contributions_.begin(),
                                                contributions_.end());
  std::sort(rows.begin(), rows.end());

  uint64_t digest = util::fnv1a64(corpus_id_);
  for (const auto &[env, c] : rows) {
    digest = util::hash_combine(digest, env);
    digest = util::hash_combine(
        digest, static_cast<uint64_t>(std::llround(c * 1e9)));
  }

  std::ostringstream out;
  out << "covgen-fragment-table v1\n";
  out << "corpus " << corpus_id_ << "\n";
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(digest));
  out << "digest " << hex << "\n";
  out << "entries " << rows.size() << "\n";
  for (const auto &[env, c] : rows) {
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(env));
    out << hex << " " << util::format_double(c) << "\n";
  }
  util::write_file_atomic(path, out.str());
}

FragmentScoreTable FragmentScoreTable::load(const std::string &path) {
  auto lines = util::read_lines(path);
  auto fail = [&](size_t line, const std::string &what) -> std::runtime_error {
    return std::runtime_error(path + ":" + std::to_string(line + 1) + ": " +
                              what);
  };
  if (lines.empty() || util::strip(lines[0]) != "covgen-fragment-table v1")
    throw fail(0, "not a fragment score table");
  if (lines.size() < 4) throw fail(lines.size(), "truncated header");

  FragmentScoreTable table;
  auto corpus_line = util::strip(lines[1]);
  if (corpus_line.rfind("corpus ", 0) != 0) throw fail(1, "missing corpus id");
  table.corpus_id_ = corpus_line.substr(7);
  if (util::strip(lines[2]).rfind("digest ", 0) != 0)
    throw fail(2, "missing digest");
  auto entries_line = util::strip(lines[3]);
  if (entries_line.rfind("entries ", 0) != 0)
    throw fail(3, "missing entry count");
  size_t expected = std::stoull(entries_line.substr(8));

  for (size_t i = 4; i < lines.size(); ++i) {
    auto s = util::strip(lines[i]);
    if (s.empty()) continue;
    auto sp = s.find(' ');
    if (sp == std::string::npos) throw fail(i, "malformed entry");
    uint64_t env = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + sp, env, 16);
    if (ec != std::errc() || p != s.data() + sp)
      throw fail(i, "malformed environment hash");
    try {
      table.contributions_[env] = std::stod(s.substr(sp + 1));
    } catch (const std::exception &) {
      throw fail(i, "malformed contribution");
    }
  }
  if (table.contributions_.size() != expected)
    throw fail(lines.size(), "entry count mismatch");
  return table;
}

namespace {

// Ring-pair relations over the small-ring set. Sharing exactly one atom makes
// that atom a spiro center; sharing three or more makes the shared-path
// endpoints bridgeheads (two-atom overlaps are ordinary fusions).
void classify_ring_overlaps(const chem::MolecularGraph &mol,
                            std::set<int> &spiro, std::set<int> &bridge) {
  const auto &rings = mol.rings();
  std::vector<std::set<int>> ring_sets;
  ring_sets.reserve(rings.size());
  for (const auto &ring : rings) ring_sets.emplace_back(ring.begin(), ring.end());

  for (size_t i = 0; i < ring_sets.size(); ++i) {
    for (size_t j = i + 1; j < ring_sets.size(); ++j) {
      std::vector<int> shared;
      std::set_intersection(ring_sets[i].begin(), ring_sets[i].end(),
                            ring_sets[j].begin(), ring_sets[j].end(),
                            std::back_inserter(shared));
      if (shared.size() == 1) {
        spiro.insert(shared[0]);
      } else if (shared.size() >= 3) {
        std::set<int> shared_set(shared.begin(), shared.end());
        for (int a : shared) {
          int inside = 0;
          for (int nb : mol.neighbors(a))
            if (shared_set.count(nb)) ++inside;
          if (inside == 1) bridge.insert(a);
        }
      }
    }
  }
}

}  // namespace

int spiro_atom_count(const chem::MolecularGraph &mol) {
  std::set<int> spiro, bridge;
  classify_ring_overlaps(mol, spiro, bridge);
  return static_cast<int>(spiro.size());
}

int bridgehead_atom_count(const chem::MolecularGraph &mol) {
  std::set<int> spiro, bridge;
  classify_ring_overlaps(mol, spiro, bridge);
  return static_cast<int>(bridge.size());
}

bool has_macrocycle(const chem::MolecularGraph &mol) {
  for (const auto &ring : mol.rings())
    if (ring.size() > 8) return true;
  return false;
}

double sa_score(const chem::MolecularGraph &mol,
                const FragmentScoreTable &table) {
  const int n = mol.atom_count();
  if (n == 0) throw std::invalid_argument("sa_score: empty molecule");

  double fragment_sum = 0.0;
  int fragment_count = 0;
  for (int a = 0; a < n; ++a) {
    for (int r = 0; r <= kMaxRadius; ++r) {
      fragment_sum += table.contribution(chem::environment_id(mol, a, r));
      ++fragment_count;
    }
  }
  const double fragment_score = fragment_sum / fragment_count;

  const double size_penalty = std::pow(n, 1.005) - n;
  const double macro_penalty = has_macrocycle(mol) ? std::log10(2.0) : 0.0;
  const double spiro_penalty = std::log10(spiro_atom_count(mol) + 1.0);
  const double bridge_penalty = std::log10(bridgehead_atom_count(mol) + 1.0);
  int stereo_centers = 0;
  for (const auto &atom : mol.atoms())
    if (atom.stereo != chem::Stereo::None) ++stereo_centers;
  const double stereo_penalty = std::log10(stereo_centers + 1.0);

  const double raw = fragment_score - size_penalty - macro_penalty -
                     spiro_penalty - bridge_penalty - stereo_penalty;

  // Affine map onto the inverted 1..10 scale. The raw band was calibrated
  // against tables fitted from the bundled corpus so that small frequent
  // molecules land in the 1-3 "very easy" band.
  constexpr double kRawHard = -4.0;
  constexpr double kRawEasy = 2.8;
  const double sa = 10.0 - (raw - kRawHard) / (kRawEasy - kRawHard) * 9.0;
  return std::clamp(sa, 1.0, 10.0);
}

}  // namespace covgen::desc
