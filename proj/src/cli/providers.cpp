//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#include "covgen/cli/providers.hpp"

#include <cstdio>
#include <filesystem>

#include "covgen/chem/canonical.hpp"
#include "covgen/chem/corpus.hpp"
#include "covgen/chem/smiles.hpp"
#include "covgen/chem/substructure.hpp"
#include "covgen/desc/qed.hpp"

namespace covgen::cli {

namespace {

using score::ScorerKind;

bool has_kind(const score::ScorerRegistry &registry, ScorerKind kind) {
  for (const auto &s : registry.scorers())
    if (s.kind == kind) return true;
  return false;
}

nn::GraphModel load_model(const std::string &path, const char *role) {
  try {
    return nn::GraphModel::load(path);
  } catch (const std::exception &e) {
    throw InputError(std::string(role) + " model '" + path +
                     "': " + e.what());
  }
}

std::unordered_map<std::string, double> load_table(const std::string &path) {
  std::vector<std::string> warnings;
  try {
    auto table = score::ingest_external_scores(path, &warnings);
    for (const auto &w : warnings)
      std::fprintf(stderr, "covgen: warning: %s\n", w.c_str());
    return table;
  } catch (const std::exception &e) {
    throw InputError(e.what());
  }
}

// Parses every record of a corpus file, failing loudly with the line.
std::vector<chem::MolecularGraph> parse_corpus(const std::string &path) {
  std::vector<chem::CorpusRecord> records;
  try {
    records = chem::read_corpus(path);
  } catch (const std::exception &e) {
    throw InputError(e.what());
  }
  std::vector<chem::MolecularGraph> mols;
  mols.reserve(records.size());
  for (const auto &r : records) {
    try {
      mols.push_back(chem::parse_smiles(r.smiles));
    } catch (const chem::SmilesError &e) {
      throw InputError(path + ":" + std::to_string(r.line) + ": '" +
                       r.smiles + "': " + e.what());
    }
  }
  return mols;
}

}  // namespace

score::ScorerRegistry build_registry(const RunConfig &config) {
  score::ScorerRegistry registry;
  if (!config.preset.empty()) {
    try {
      registry = score::ScorerRegistry::preset(config.preset);
    } catch (const std::invalid_argument &e) {
      throw ConfigError(e.what());
    }
  }
  if (!config.motif_smiles.empty()) {
    if (registry.empty())
      registry.add(score::make_scorer(ScorerKind::Validity));
    auto scorer = score::make_scorer(ScorerKind::External, config.motif_name);
    scorer.weight = config.motif_weight;
    if (config.motif_threshold)
      scorer.threshold = score::Threshold{score::ThresholdOp::GreaterEq,
                                          *config.motif_threshold};
    registry.add(std::move(scorer));
  }
  if (registry.empty())
    throw ConfigError(
        "no scorers configured: set scoring.preset or scoring.motif_scorer");
  return registry;
}

ScoreProviders build_providers(const RunConfig &config,
                               const score::ScorerRegistry &registry,
                               const std::string &out_dir,
                               std::vector<std::string> *inputs,
                               std::vector<std::string> *outputs) {
  ScoreProviders prov;
  const auto note_input = [&](const std::string &path) {
    if (inputs) inputs->push_back(path);
  };

  if (has_kind(registry, ScorerKind::Sa)) {
    if (!config.sa_table.empty()) {
      try {
        prov.sa_table = desc::FragmentScoreTable::load(config.sa_table);
      } catch (const std::exception &e) {
        throw InputError(e.what());
      }
      note_input(config.sa_table);
    } else if (!config.sa_corpus.empty()) {
      const auto mols = parse_corpus(config.sa_corpus);
      note_input(config.sa_corpus);
      prov.sa_table = desc::FragmentScoreTable::fit(
          mols, std::filesystem::path(config.sa_corpus).stem().string());
      const std::string table_path =
          (std::filesystem::path(out_dir) / "sa_table.txt").string();
      prov.sa_table->save(table_path);
      if (outputs) outputs->push_back(table_path);
    } else {
      throw ConfigError(
          "sa scorer active: set scoring.sa_table or scoring.sa_corpus");
    }
  }

  if (has_kind(registry, ScorerKind::CovalentActivity)) {
    if (config.covalent_model.empty())
      throw ConfigError(
          "covalent_activity scorer active: set scoring.covalent_model");
    prov.covalent = load_model(config.covalent_model, "covalent activity");
    if (prov.covalent->config().head == nn::GraphHead::Regression)
      throw ConfigError("covalent activity model must be a classifier");
    note_input(config.covalent_model);
  }

  if (has_kind(registry, ScorerKind::ResidueAffinity)) {
    if (config.affinity_model.empty())
      throw ConfigError(
          "residue_affinity scorer active: set scoring.affinity_model");
    prov.affinity = load_model(config.affinity_model, "residue affinity");
    if (prov.affinity->config().head == nn::GraphHead::Regression)
      throw ConfigError("residue affinity model must be a classifier");
    if (config.affinity_class >= prov.affinity->config().output_dim())
      throw ConfigError("scoring.affinity_class " +
                        std::to_string(config.affinity_class) +
                        " out of range for a " +
                        std::to_string(prov.affinity->config().output_dim()) +
                        "-class model");
    prov.affinity_class = config.affinity_class;
    note_input(config.affinity_model);
  }

  if (has_kind(registry, ScorerKind::Docking)) {
    if (!config.docking_model.empty()) {
      prov.docking = load_model(config.docking_model, "docking");
      if (prov.docking->config().head != nn::GraphHead::Regression)
        throw ConfigError("docking model must be a regressor");
      note_input(config.docking_model);
    } else if (!config.docking_scores.empty()) {
      prov.docking_table = load_table(config.docking_scores);
      note_input(config.docking_scores);
    } else {
      throw ConfigError(
          "docking scorer active: set scoring.docking_model or "
          "scoring.docking_scores");
    }
  }

  if (has_kind(registry, ScorerKind::Overlap)) {
    if (config.overlap_scores.empty())
      throw ConfigError(
          "overlap scorer active: set scoring.overlap_scores (external CSV)");
    prov.overlap_table = load_table(config.overlap_scores);
    note_input(config.overlap_scores);
  }

  if (has_kind(registry, ScorerKind::Tanimoto)) {
    if (config.reference.empty())
      throw ConfigError("tanimoto scorer active: set scoring.reference");
    const auto mols = parse_corpus(config.reference);
    if (mols.empty())
      throw InputError("reference corpus '" + config.reference +
                       "' holds no molecules");
    note_input(config.reference);
    prov.reference_fps.reserve(mols.size());
    for (const auto &m : mols)
      prov.reference_fps.push_back(chem::morgan_fingerprint(m));
  }

  if (has_kind(registry, ScorerKind::External)) {
    if (config.motif_smiles.empty())
      throw ConfigError("external scorer active but no motif_scorer defined");
    try {
      prov.motif = chem::parse_smiles(config.motif_smiles);
    } catch (const chem::SmilesError &e) {
      throw ConfigError("scoring.motif_scorer.smiles '" +
                        config.motif_smiles + "': " + e.what());
    }
    prov.motif_name = config.motif_name;
  }

  return prov;
}

std::map<std::string, double> raw_scores(const score::ScorerRegistry &registry,
                                         const ScoreProviders &providers,
                                         const chem::MolecularGraph &mol,
                                         const std::string &canonical,
                                         const std::string &id) {
  std::map<std::string, double> raws;

  // Shared featurization for every graph-model scorer.
  std::optional<nn::GraphInput> features;
  const auto featurized = [&]() -> const nn::GraphInput & {
    if (!features) features = nn::featurize(mol);
    return *features;
  };
  const auto lookup = [&](const std::unordered_map<std::string, double> &table,
                          const score::ClippedScorer &s) {
    if (!id.empty()) {
      auto it = table.find(id);
      if (it != table.end()) return it->second;
    }
    auto it = table.find(canonical);
    if (it != table.end()) return it->second;
    return s.worst_raw();
  };

  for (const auto &s : registry.scorers()) {
    switch (s.kind) {
      case ScorerKind::Validity:
        raws[s.name] = 1.0;  // only parsed molecules reach this point
        break;
      case ScorerKind::Sa:
        raws[s.name] = desc::sa_score(mol, *providers.sa_table);
        break;
      case ScorerKind::Qed:
        raws[s.name] = desc::qed(mol);
        break;
      case ScorerKind::CovalentActivity:
        raws[s.name] = providers.covalent->predict(featurized())[1];
        break;
      case ScorerKind::ResidueAffinity:
        raws[s.name] =
            providers.affinity->predict(featurized())[providers.affinity_class];
        break;
      case ScorerKind::Docking:
        if (providers.docking)
          raws[s.name] = providers.docking->predict(featurized())[0];
        else
          raws[s.name] = lookup(*providers.docking_table, s);
        break;
      case ScorerKind::Overlap:
        raws[s.name] = lookup(*providers.overlap_table, s);
        break;
      case ScorerKind::Tanimoto: {
        const auto fp = chem::morgan_fingerprint(mol);
        double best = 0.0;
        for (const auto &ref : providers.reference_fps)
          best = std::max(best, chem::tanimoto(fp, ref));
        raws[s.name] = best;
        break;
      }
      case ScorerKind::External:
        if (providers.motif && s.name == providers.motif_name) {
          raws[s.name] =
              chem::has_substructure(*providers.motif, mol) ? 1.0 : 0.0;
        } else {
          throw ConfigError("no raw-score provider for scorer '" + s.name +
                            "'");
        }
        break;
    }
  }
  return raws;
}

rl::RawScoreFn make_raw_score_fn(const score::ScorerRegistry &registry,
                                 std::shared_ptr<const ScoreProviders> prov) {
  // The registry is copied so the callable outlives the caller's frame.
  return [registry, prov](const chem::MolecularGraph &mol,
                          const std::string &) {
    const std::string canonical = chem::canonical_smiles(mol);
    return raw_scores(registry, *prov, mol, canonical, "");
  };
}

}  // namespace covgen::cli
