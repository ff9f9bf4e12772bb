//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#include "covgen/cli/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <set>

#include <CLI11.hpp>

#include "covgen/chem/canonical.hpp"
#include "covgen/chem/corpus.hpp"
#include "covgen/chem/fingerprint.hpp"
#include "covgen/chem/smiles.hpp"
#include "covgen/cli/config.hpp"
#include "covgen/cli/manifest.hpp"
#include "covgen/cli/providers.hpp"
#include "covgen/eval/evalkit.hpp"
#include "covgen/nn/generator.hpp"
#include "covgen/nn/graph_model.hpp"
#include "covgen/rl/pareto.hpp"
#include "covgen/rl/train.hpp"
#include "covgen/util/io.hpp"
#include "covgen/util/parallel.hpp"

namespace covgen::cli {

namespace fs = std::filesystem;

namespace {

int guarded(const std::function<void()> &body) {
  try {
    body();
    return kOk;
  } catch (const ConfigError &e) {
    std::fprintf(stderr, "covgen: config error: %s\n", e.what());
    return kConfig;
  } catch (const InputError &e) {
    std::fprintf(stderr, "covgen: input error: %s\n", e.what());
    return kInput;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "covgen: %s\n", e.what());
    return kRuntime;
  }
}

// Accumulates a CSV in memory and lands it atomically: a half-written
// table can never be mistaken for a result.
class CsvFile {
public:
  explicit CsvFile(const std::string &config_hash) {
    buf_ = "# config-hash: " + config_hash + "\n";
  }

  void comment(const std::string &text) { buf_ += "# " + text + "\n"; }

  void row(const std::vector<std::string> &cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].find_first_of(",\"\n") != std::string::npos)
        throw InputError("value '" + cells[i] +
                         "' cannot be written to CSV (reserved character)");
      if (i) buf_ += ',';
      buf_ += cells[i];
    }
    buf_ += '\n';
  }

  void save(const std::string &path) const {
    util::write_file_atomic(path, buf_);
  }

private:
  std::string buf_;
};

std::string out_path(const CommonOptions &common, const std::string &name) {
  return (fs::path(common.out_dir) / name).string();
}

void prepare_out_dir(const CommonOptions &common) {
  std::error_code ec;
  fs::create_directories(common.out_dir, ec);
  if (ec)
    throw InputError("cannot create out-dir '" + common.out_dir +
                     "': " + ec.message());
}

RunConfig config_for(const CommonOptions &common) {
  return load_config(common.config_path);
}

RunManifest manifest_for(const char *command, const CommonOptions &common,
                         const RunConfig &config) {
  RunManifest m;
  m.command = command;
  m.config_hash = config.hash();
  m.seed = common.seed;
  if (!common.config_path.empty()) m.inputs.push_back(common.config_path);
  return m;
}

std::vector<chem::CorpusRecord> load_corpus(const std::string &path) {
  try {
    return chem::read_corpus(path);
  } catch (const std::exception &e) {
    throw InputError(e.what());
  }
}

nn::GeneratorModel load_generator(const std::string &path) {
  try {
    return nn::GeneratorModel::load(path);
  } catch (const std::exception &e) {
    throw InputError("generator checkpoint '" + path + "': " + e.what());
  }
}

nn::GraphModel load_graph_model(const std::string &path) {
  try {
    return nn::GraphModel::load(path);
  } catch (const std::exception &e) {
    throw InputError("graph checkpoint '" + path + "': " + e.what());
  }
}

std::string format_rate(bool applicable, double rate) {
  if (!applicable) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", rate);
  return buf;
}

std::string format_fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// ---------------------------------------------------------------------------
// Score-table round trip: the score command writes it, evaluate and
// motif-search read it back.

struct ScoreTable {
  std::string preset = "custom";
  std::vector<eval::MoleculeRecord> records;
};

ScoreTable read_score_table(const std::string &path) {
  std::vector<std::string> lines;
  try {
    lines = util::read_lines(path);
  } catch (const std::exception &e) {
    throw InputError(e.what());
  }

  ScoreTable table;
  std::optional<std::vector<std::string>> header;
  size_t id_col = 0, smiles_col = 0, canonical_col = 0, valid_col = 0,
         desirable_col = 0;
  for (size_t li = 0; li < lines.size(); ++li) {
    const std::string line = util::strip(lines[li]);
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string tag = "# preset:";
      if (lines[li].rfind(tag, 0) == 0)
        table.preset = util::strip(lines[li].substr(tag.size()));
      continue;
    }
    const auto cells = util::split(line, ',');
    if (!header) {
      header = std::vector<std::string>(cells.begin(), cells.end());
      const auto column = [&](const char *name) -> size_t {
        const auto it = std::find(header->begin(), header->end(), name);
        if (it == header->end())
          throw InputError(path + ": missing column '" + std::string(name) +
                           "'");
        return static_cast<size_t>(it - header->begin());
      };
      id_col = column("id");
      smiles_col = column("smiles");
      canonical_col = column("canonical");
      valid_col = column("valid");
      desirable_col = column("desirable");
      continue;
    }
    if (cells.size() != header->size())
      throw InputError(path + ":" + std::to_string(li + 1) + ": expected " +
                       std::to_string(header->size()) + " cells, got " +
                       std::to_string(cells.size()));
    const auto flag = [&](size_t col) -> bool {
      const std::string &v = cells[col];
      if (v == "1") return true;
      if (v == "0") return false;
      throw InputError(path + ":" + std::to_string(li + 1) +
                       ": flag column must be 0 or 1, got '" + v + "'");
    };
    eval::MoleculeRecord record;
    record.smiles = cells[smiles_col];
    record.canonical = cells[canonical_col];
    record.scores.molecule_id = cells[id_col];
    record.scores.valid = flag(valid_col);
    record.desirable = flag(desirable_col);
    table.records.push_back(std::move(record));
  }
  if (!header) throw InputError(path + ": no header row");
  return table;
}

eval::GenerationRun run_from_table(const std::string &path) {
  ScoreTable table = read_score_table(path);
  try {
    return eval::make_run(fs::path(path).stem().string(), table.preset,
                          std::move(table.records));
  } catch (const std::invalid_argument &e) {
    throw InputError(path + ": " + e.what());
  }
}

// Parses a score-command input record, throwing with its source line.
chem::MolecularGraph parse_record_strict(const std::string &path,
                                         const chem::CorpusRecord &record) {
  try {
    return chem::parse_smiles(record.smiles);
  } catch (const chem::SmilesError &e) {
    throw InputError(path + ":" + std::to_string(record.line) + ": '" +
                     record.smiles + "': " + e.what());
  }
}

std::set<std::string> reference_keys(const std::string &path) {
  const auto records = load_corpus(path);
  std::set<std::string> keys;
  for (const auto &r : records) {
    try {
      keys.insert(chem::canonical_smiles(chem::parse_smiles(r.smiles)));
    } catch (const chem::SmilesError &e) {
      throw InputError(path + ":" + std::to_string(r.line) + ": '" +
                       r.smiles + "': " + e.what());
    }
  }
  return keys;
}

}  // namespace

// ---------------------------------------------------------------------------

int run_pretrain(const PretrainOptions &opts) {
  return guarded([&] {
    if (opts.kind != "generator" && opts.kind != "graph")
      throw ConfigError("--kind must be generator or graph, got '" +
                        opts.kind + "'");
    const RunConfig config = config_for(opts.common);
    prepare_out_dir(opts.common);
    const auto records = load_corpus(opts.corpus);
    if (records.empty())
      throw InputError("corpus '" + opts.corpus + "' holds no molecules");

    RunManifest manifest = manifest_for("pretrain", opts.common, config);
    manifest.inputs.push_back(opts.corpus);

    if (opts.kind == "generator") {
      const std::string model_path = out_path(opts.common, "generator.ckpt");
      const std::string report_path =
          out_path(opts.common, "pretrain_report.csv");
      manifest.outputs = {model_path, model_path + ".json", report_path};
      write_manifest(manifest, opts.common.out_dir);

      std::vector<std::string> smiles;
      smiles.reserve(records.size());
      for (const auto &r : records) smiles.push_back(r.smiles);
      nn::PretrainReport report;
      nn::GeneratorModel model = nn::pretrain_generator(
          smiles, config.generator, opts.common.seed, &report);
      model.save(model_path, config.hash());

      CsvFile csv(config.hash());
      csv.row({"epoch", "train_loss", "holdout_loss"});
      for (size_t e = 0; e < report.train_loss.size(); ++e)
        csv.row({std::to_string(e + 1),
                 util::format_double(report.train_loss[e]),
                 e < report.holdout_loss.size()
                     ? util::format_double(report.holdout_loss[e])
                     : ""});
      csv.save(report_path);
      return;
    }

    // Graph-model training over a labelled corpus.
    std::vector<nn::GraphInput> inputs;
    std::vector<double> targets;
    inputs.reserve(records.size());
    for (const auto &r : records) {
      if (!r.label)
        throw InputError(opts.corpus + ":" + std::to_string(r.line) +
                         ": record '" + r.id + "' has no label");
      inputs.push_back(nn::featurize(parse_record_strict(opts.corpus, r)));
      targets.push_back(*r.label);
    }
    const std::string model_path = out_path(opts.common, "graph.ckpt");
    const std::string report_path = out_path(opts.common, "graph_report.csv");
    manifest.outputs = {model_path, model_path + ".json", report_path};
    write_manifest(manifest, opts.common.out_dir);

    nn::GraphTrainReport report;
    nn::GraphModel model =
        config.graph_balanced
            ? nn::retrain_balanced(inputs, targets, config.graph,
                                   opts.common.seed, &report)
            : nn::train_graph_model(inputs, targets, config.graph,
                                    opts.common.seed, &report);
    model.save(model_path, config.hash());

    CsvFile csv(config.hash());
    csv.row({"epoch", "train_loss"});
    for (size_t e = 0; e < report.train_loss.size(); ++e)
      csv.row({std::to_string(e + 1),
               util::format_double(report.train_loss[e])});
    csv.save(report_path);
  });
}

int run_rltrain(const RlTrainOptions &opts) {
  return guarded([&] {
    const RunConfig config = config_for(opts.common);
    prepare_out_dir(opts.common);
    const score::ScorerRegistry registry = build_registry(config);

    RunManifest manifest = manifest_for("rltrain", opts.common, config);
    manifest.inputs.push_back(opts.model);
    auto providers = std::make_shared<ScoreProviders>(
        build_providers(config, registry, opts.common.out_dir,
                        &manifest.inputs, &manifest.outputs));

    nn::GeneratorModel model = load_generator(opts.model);

    // Checkpoint cadence is known upfront, so the manifest can list every
    // snapshot before training starts.
    std::set<int> checkpoint_iters;
    if (config.rl.checkpoint_every > 0) {
      for (int i = config.rl.checkpoint_every; i <= config.rl.iterations;
           i += config.rl.checkpoint_every)
        checkpoint_iters.insert(i);
      checkpoint_iters.insert(config.rl.iterations);
    }
    const auto checkpoint_path = [&](int iter) {
      return out_path(opts.common,
                      "checkpoint_" + std::to_string(iter) + ".ckpt");
    };
    const std::string model_path = out_path(opts.common, "rl_model.ckpt");
    const std::string report_path = out_path(opts.common, "rl_report.csv");
    for (int iter : checkpoint_iters) {
      manifest.outputs.push_back(checkpoint_path(iter));
      manifest.outputs.push_back(checkpoint_path(iter) + ".json");
    }
    manifest.outputs.push_back(model_path);
    manifest.outputs.push_back(model_path + ".json");
    manifest.outputs.push_back(report_path);
    write_manifest(manifest, opts.common.out_dir);

    const auto reports = rl::rl_train(
        model, registry, make_raw_score_fn(registry, providers), config.rl,
        opts.common.seed, [&](int iter, const nn::GeneratorModel &m) {
          m.save(checkpoint_path(iter), config.hash());
        });
    model.save(model_path, config.hash());

    CsvFile csv(config.hash());
    std::vector<std::string> header{"iteration", "mean_reward",
                                    "fraction_valid", "fraction_desirable",
                                    "selected_count"};
    std::vector<std::string> objectives;
    if (!reports.empty())
      for (const auto &[name, _] : reports.front().objective_means)
        objectives.push_back(name);
    for (const auto &name : objectives) header.push_back("mean_" + name);
    csv.row(header);
    for (const auto &r : reports) {
      std::vector<std::string> cells{std::to_string(r.iteration),
                                     util::format_double(r.mean_reward),
                                     util::format_double(r.fraction_valid),
                                     util::format_double(r.fraction_desirable),
                                     std::to_string(r.selected_count)};
      for (const auto &name : objectives)
        cells.push_back(util::format_double(r.objective_means.at(name)));
      csv.row(cells);
    }
    csv.save(report_path);
  });
}

int run_sample(const SampleOptions &opts) {
  return guarded([&] {
    const RunConfig config = config_for(opts.common);
    prepare_out_dir(opts.common);
    if (opts.count < 1) throw ConfigError("--n must be at least 1");
    const double temperature =
        opts.temperature < 0.0 ? config.sample_temperature : opts.temperature;
    if (temperature < 0.0) throw ConfigError("temperature must be >= 0");

    RunManifest manifest = manifest_for("sample", opts.common, config);
    manifest.inputs.push_back(opts.model);
    const std::string samples_path = out_path(opts.common, "samples.smi");
    manifest.outputs = {samples_path};

    const nn::GeneratorModel model = load_generator(opts.model);
    write_manifest(manifest, opts.common.out_dir);

    const auto sequences =
        model.sample(opts.count, temperature, opts.common.seed);
    std::vector<chem::CorpusRecord> records;
    records.reserve(sequences.size());
    for (size_t i = 0; i < sequences.size(); ++i)
      records.push_back({model.tokenizer().decode(sequences[i].tokens),
                         "s" + std::to_string(i + 1), std::nullopt, 0});
    chem::write_corpus(samples_path, records);
  });
}

int run_score(const ScoreOptions &opts) {
  return guarded([&] {
    RunConfig config = config_for(opts.common);
    if (!opts.preset.empty()) config.preset = opts.preset;
    prepare_out_dir(opts.common);
    const score::ScorerRegistry registry = build_registry(config);

    RunManifest manifest = manifest_for("score", opts.common, config);
    manifest.inputs.push_back(opts.input);
    const ScoreProviders providers =
        build_providers(config, registry, opts.common.out_dir,
                        &manifest.inputs, &manifest.outputs);
    const auto records = load_corpus(opts.input);

    const std::string scores_path = out_path(opts.common, "scores.csv");
    manifest.outputs.push_back(scores_path);
    write_manifest(manifest, opts.common.out_dir);

    // Invalid SMILES are contained per row: flagged invalid, never fatal.
    struct Row {
      std::string canonical;
      score::ScoreVector scores;
    };
    std::vector<Row> rows(records.size());
    std::vector<std::unique_ptr<std::exception_ptr>> failures(records.size());
    util::parallel_for(records.size(), [&](size_t i) {
      Row &row = rows[i];
      row.scores.molecule_id = records[i].id;
      try {
        const auto mol = chem::parse_smiles(records[i].smiles);
        row.canonical = chem::canonical_smiles(mol);
        const auto raws =
            raw_scores(registry, providers, mol, row.canonical, records[i].id);
        for (const auto &[name, raw] : raws) row.scores.values[name].raw = raw;
      } catch (const chem::SmilesError &) {
        row.scores.valid = false;
      } catch (...) {
        failures[i] =
            std::make_unique<std::exception_ptr>(std::current_exception());
      }
    });
    for (const auto &failure : failures)
      if (failure) std::rethrow_exception(*failure);
    for (auto &row : rows) registry.evaluate(row.scores);

    CsvFile csv(config.hash());
    csv.comment("preset: " + (config.preset.empty() ? std::string("custom")
                                                    : config.preset));
    std::vector<std::string> header{"id", "smiles", "canonical", "valid",
                                    "desirable"};
    for (const auto &s : registry.scorers()) {
      header.push_back(s.name + "_raw");
      header.push_back(s.name + "_clipped");
    }
    csv.row(header);
    for (size_t i = 0; i < rows.size(); ++i) {
      const Row &row = rows[i];
      std::vector<std::string> cells{records[i].id, records[i].smiles,
                                     row.canonical,
                                     row.scores.valid ? "1" : "0",
                                     row.scores.desirable ? "1" : "0"};
      for (const auto &s : registry.scorers()) {
        const auto &entry = row.scores.values.at(s.name);
        cells.push_back(row.scores.valid ? util::format_double(entry.raw)
                                         : "");
        cells.push_back(util::format_double(entry.clipped));
      }
      csv.row(cells);
    }
    csv.save(scores_path);
  });
}

int run_evaluate(const EvaluateOptions &opts) {
  return guarded([&] {
    const RunConfig config = config_for(opts.common);
    prepare_out_dir(opts.common);

    RunManifest manifest = manifest_for("evaluate", opts.common, config);
    manifest.inputs = {opts.run, opts.reference};
    if (!opts.common.config_path.empty())
      manifest.inputs.insert(manifest.inputs.begin(),
                             opts.common.config_path);
    const std::string eval_path = out_path(opts.common, "evaluation.csv");
    const std::string sweep_path = out_path(opts.common, "sweep.csv");
    manifest.outputs = {eval_path};
    if (!opts.scales.empty()) manifest.outputs.push_back(sweep_path);

    const eval::GenerationRun run = run_from_table(opts.run);
    const std::set<std::string> reference = reference_keys(opts.reference);
    write_manifest(manifest, opts.common.out_dir);

    const eval::Rediscovery result = eval::rediscovery_rate(run, reference);
    CsvFile csv(config.hash());
    csv.row({"model", "generated", "valid", "desirable_structures",
             "rediscovered", "rate_pct"});
    csv.row({run.run_id, std::to_string(run.generated),
             std::to_string(run.valid), std::to_string(run.desirable),
             std::to_string(result.count),
             format_rate(result.applicable, result.rate)});
    csv.save(eval_path);

    if (!opts.scales.empty()) {
      std::vector<eval::SweepRow> rows;
      try {
        rows = eval::volume_sweep(run, opts.scales, reference);
      } catch (const std::invalid_argument &e) {
        throw InputError(e.what());
      }
      CsvFile sweep(config.hash());
      sweep.row({"generated", "valid", "desirable", "rediscovered",
                 "rate_pct"});
      for (const auto &row : rows)
        sweep.row({std::to_string(row.generated), std::to_string(row.valid),
                   std::to_string(row.desirable),
                   std::to_string(row.rediscovered),
                   format_rate(row.rate_applicable, row.rate)});
      sweep.save(sweep_path);
    }
  });
}

int run_attribute(const AttributeOptions &opts) {
  return guarded([&] {
    const RunConfig config = config_for(opts.common);
    prepare_out_dir(opts.common);

    const nn::GraphModel model = load_graph_model(opts.model);
    if (opts.cls < 0 || opts.cls >= model.config().output_dim())
      throw ConfigError("--class " + std::to_string(opts.cls) +
                        " out of range for this model");

    const auto records = load_corpus(opts.input);
    std::vector<chem::MolecularGraph> mols;
    mols.reserve(records.size());
    for (const auto &r : records)
      mols.push_back(parse_record_strict(opts.input, r));

    RunManifest manifest = manifest_for("attribute", opts.common, config);
    manifest.inputs.push_back(opts.model);
    manifest.inputs.push_back(opts.input);
    for (const auto &p : opts.poses) manifest.inputs.push_back(p);
    const std::string attribution_path =
        out_path(opts.common, "attribution.csv");
    const std::string distances_path = out_path(opts.common, "distances.csv");
    manifest.outputs = {attribution_path};
    if (!opts.poses.empty()) manifest.outputs.push_back(distances_path);
    write_manifest(manifest, opts.common.out_dir);

    std::vector<nn::AttributionMap> maps(records.size());
    util::parallel_for(records.size(), [&](size_t i) {
      maps[i] = model.gradcam(nn::featurize(mols[i]), opts.cls);
    });

    CsvFile csv(config.hash());
    csv.row({"id", "atom", "raw", "normalized", "tagged"});
    for (size_t i = 0; i < records.size(); ++i) {
      const auto &map = maps[i];
      for (size_t a = 0; a < map.raw.size(); ++a) {
        const bool tagged = std::find(map.tagged.begin(), map.tagged.end(),
                                      static_cast<int>(a)) != map.tagged.end();
        csv.row({records[i].id, std::to_string(a),
                 util::format_double(map.raw[a]),
                 util::format_double(map.normalized[a]), tagged ? "1" : "0"});
      }
    }
    csv.save(attribution_path);

    if (opts.poses.empty()) return;
    CsvFile distances(config.hash());
    distances.row({"id", "residue", "distance_angstrom"});
    for (const auto &pose_path : opts.poses) {
      eval::PoseFile pose;
      try {
        pose = eval::load_pose(pose_path);
      } catch (const std::exception &e) {
        throw InputError(e.what());
      }
      size_t index = records.size();
      for (size_t i = 0; i < records.size(); ++i)
        if (records[i].id == pose.molecule_id) {
          index = i;
          break;
        }
      if (index == records.size())
        throw InputError(pose_path + ": pose molecule '" + pose.molecule_id +
                         "' not present in " + opts.input);
      if (pose.coords.size() !=
          static_cast<size_t>(mols[index].atom_count()))
        throw InputError(pose_path + ": " +
                         std::to_string(pose.coords.size()) +
                         " coordinates for a " +
                         std::to_string(mols[index].atom_count()) +
                         "-atom molecule");
      // An empty tagged set is an analysis failure (no warhead found), not
      // an input defect: the invalid_argument surfaces as a runtime error.
      const double d = eval::warhead_distance(mols[index], maps[index], pose);
      distances.row({pose.molecule_id, pose.residue_label,
                     format_fixed(d, 3)});
    }
    distances.save(distances_path);
  });
}

int run_motif_search(const MotifSearchOptions &opts) {
  return guarded([&] {
    const RunConfig config = config_for(opts.common);
    prepare_out_dir(opts.common);

    std::vector<eval::MotifQuery> motifs = eval::builtin_motifs();
    for (const auto &spec : opts.extra_motifs) {
      const auto eq = spec.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size())
        throw ConfigError("--motif expects name=SMILES, got '" + spec + "'");
      eval::MotifQuery query;
      query.name = spec.substr(0, eq);
      query.smiles = spec.substr(eq + 1);
      try {
        query.graph = chem::parse_smiles(query.smiles);
      } catch (const chem::SmilesError &e) {
        throw ConfigError("--motif '" + spec + "': " + e.what());
      }
      motifs.push_back(std::move(query));
    }

    RunManifest manifest = manifest_for("motif-search", opts.common, config);
    manifest.inputs.push_back(opts.run);
    const std::string motifs_path = out_path(opts.common, "motifs.csv");
    manifest.outputs = {motifs_path};

    const eval::GenerationRun run = run_from_table(opts.run);
    write_manifest(manifest, opts.common.out_dir);

    const auto hits = eval::motif_search(run, motifs);
    CsvFile csv(config.hash());
    csv.row({"motif", "smiles", "hits", "ids"});
    for (size_t m = 0; m < motifs.size(); ++m) {
      std::string ids;
      for (int index : hits[m].record_indices) {
        if (!ids.empty()) ids += ';';
        ids += run.records[static_cast<size_t>(index)].scores.molecule_id;
      }
      csv.row({motifs[m].name, motifs[m].smiles,
               std::to_string(hits[m].record_indices.size()), ids});
    }
    csv.save(motifs_path);
  });
}

int run_project(const ProjectOptions &opts) {
  return guarded([&] {
    const RunConfig config = config_for(opts.common);
    prepare_out_dir(opts.common);
    if (!opts.cohorts.empty() && opts.cohorts.size() != opts.inputs.size())
      throw ConfigError("--cohort count must match --in count");

    RunManifest manifest = manifest_for("project", opts.common, config);
    for (const auto &p : opts.inputs) manifest.inputs.push_back(p);
    const std::string csv_path = out_path(opts.common, "projection.csv");
    const std::string svg_path = out_path(opts.common, "projection.svg");
    manifest.outputs = {csv_path};
    if (opts.svg) manifest.outputs.push_back(svg_path);

    struct Point {
      std::string id;
      std::string cohort;
    };
    std::vector<Point> points;
    std::vector<chem::Fingerprint> fps;
    for (size_t f = 0; f < opts.inputs.size(); ++f) {
      const std::string cohort =
          opts.cohorts.empty() ? fs::path(opts.inputs[f]).stem().string()
                               : opts.cohorts[f];
      for (const auto &r : load_corpus(opts.inputs[f])) {
        fps.push_back(chem::morgan_fingerprint(
            parse_record_strict(opts.inputs[f], r)));
        points.push_back({r.id, cohort});
      }
    }
    if (fps.size() < 2)
      throw InputError("projection needs at least two molecules");
    write_manifest(manifest, opts.common.out_dir);

    const eval::ChemicalProjection projection =
        eval::project_chemical_space(fps);

    CsvFile csv(config.hash());
    csv.row({"id", "pc1", "pc2", "cohort"});
    for (size_t i = 0; i < points.size(); ++i)
      csv.row({points[i].id, format_fixed(projection.points[i][0], 6),
               format_fixed(projection.points[i][1], 6), points[i].cohort});
    csv.save(csv_path);

    if (!opts.svg) return;
    // Minimal deterministic scatter: fixed palette, fixed viewport.
    const char *palette[] = {"#4477aa", "#ee6677", "#228833", "#ccbb44",
                             "#66ccee", "#aa3377", "#bbbbbb"};
    std::vector<std::string> cohort_order;
    for (const auto &p : points)
      if (std::find(cohort_order.begin(), cohort_order.end(), p.cohort) ==
          cohort_order.end())
        cohort_order.push_back(p.cohort);
    double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
    for (size_t i = 0; i < points.size(); ++i) {
      lo_x = std::min(lo_x, projection.points[i][0]);
      hi_x = std::max(hi_x, projection.points[i][0]);
      lo_y = std::min(lo_y, projection.points[i][1]);
      hi_y = std::max(hi_y, projection.points[i][1]);
    }
    const double span_x = hi_x - lo_x > 1e-12 ? hi_x - lo_x : 1.0;
    const double span_y = hi_y - lo_y > 1e-12 ? hi_y - lo_y : 1.0;
    const double size = 640.0, margin = 40.0;
    std::string svg =
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
        "height=\"640\" viewBox=\"0 0 640 640\">\n"
        "<rect width=\"640\" height=\"640\" fill=\"white\"/>\n";
    for (size_t i = 0; i < points.size(); ++i) {
      const double x = margin + (projection.points[i][0] - lo_x) / span_x *
                                    (size - 2 * margin);
      const double y = size - margin -
                       (projection.points[i][1] - lo_y) / span_y *
                           (size - 2 * margin);
      const size_t c =
          std::find(cohort_order.begin(), cohort_order.end(),
                    points[i].cohort) -
          cohort_order.begin();
      svg += "<circle cx=\"" + format_fixed(x, 2) + "\" cy=\"" +
             format_fixed(y, 2) + "\" r=\"4\" fill=\"" +
             palette[c % 7] + "\" fill-opacity=\"0.7\"/>\n";
    }
    for (size_t c = 0; c < cohort_order.size(); ++c) {
      const std::string y = std::to_string(24 + 18 * c);
      svg += "<circle cx=\"16\" cy=\"" + y + "\" r=\"5\" fill=\"" +
             palette[c % 7] + "\"/>\n<text x=\"26\" y=\"" + y +
             "\" dominant-baseline=\"middle\" font-family=\"sans-serif\" "
             "font-size=\"13\">" +
             cohort_order[c] + "</text>\n";
    }
    svg += "</svg>\n";
    util::write_file_atomic(svg_path, svg);
  });
}

// ---------------------------------------------------------------------------

int dispatch(const std::vector<std::string> &args) {
  CLI::App app{"covalent-inhibitor generation pipeline", "covgen"};
  app.require_subcommand(1);

  PretrainOptions pretrain;
  RlTrainOptions rltrain;
  SampleOptions sample;
  ScoreOptions score;
  EvaluateOptions evaluate;
  AttributeOptions attribute;
  MotifSearchOptions motif_search;
  ProjectOptions project;

  const auto add_common = [](CLI::App *sub, CommonOptions &common) {
    sub->add_option("--config", common.config_path,
                    "JSON config file (documented keys only)");
    sub->add_option("--seed", common.seed, "64-bit run seed")
        ->default_val(uint64_t{0});
    sub->add_option("--out-dir", common.out_dir,
                    "directory for the manifest and all outputs")
        ->required();
  };

  CLI::App *p = app.add_subcommand(
      "pretrain", "train a generator or graph model on a corpus");
  add_common(p, pretrain.common);
  p->add_option("--kind", pretrain.kind, "generator | graph")
      ->default_val("generator");
  p->add_option("--corpus", pretrain.corpus, "training corpus (.smi)")
      ->required();

  CLI::App *r = app.add_subcommand(
      "rltrain", "fine-tune a generator against the active scorers");
  add_common(r, rltrain.common);
  r->add_option("--model", rltrain.model, "pretrained generator checkpoint")
      ->required();

  CLI::App *s =
      app.add_subcommand("sample", "draw SMILES from a generator checkpoint");
  add_common(s, sample.common);
  s->add_option("--model", sample.model, "generator checkpoint")->required();
  s->add_option("--n", sample.count, "number of samples")->required();
  s->add_option("--temperature", sample.temperature,
                "softmax temperature (default from config)");

  CLI::App *sc =
      app.add_subcommand("score", "score molecules with the active scorers");
  add_common(sc, score.common);
  sc->add_option("--in", score.input, "molecules to score (.smi)")
      ->required();
  sc->add_option("--preset", score.preset,
                 "scorer preset (egfr-1..4, ache-1..4)");

  CLI::App *e = app.add_subcommand(
      "evaluate", "rediscovery accounting for a scored run");
  add_common(e, evaluate.common);
  e->add_option("--run", evaluate.run, "scores.csv from the score command")
      ->required();
  e->add_option("--reference", evaluate.reference,
                "known-inhibitor corpus (.smi)")
      ->required();
  e->add_option("--scales", evaluate.scales,
                "comma-separated prefix sizes for a volume sweep")
      ->delimiter(',');

  CLI::App *a = app.add_subcommand(
      "attribute", "map atom-level evidence with GradCAM");
  add_common(a, attribute.common);
  a->add_option("--model", attribute.model, "graph-model checkpoint")
      ->required();
  a->add_option("--in", attribute.input, "molecules to explain (.smi)")
      ->required();
  a->add_option("--class", attribute.cls, "class index to explain")
      ->default_val(1);
  a->add_option("--pose", attribute.poses,
                "pose file(s) for warhead-to-residue distances");

  CLI::App *m = app.add_subcommand(
      "motif-search", "scan desirable structures for warhead motifs");
  add_common(m, motif_search.common);
  m->add_option("--run", motif_search.run,
                "scores.csv from the score command")
      ->required();
  m->add_option("--motif", motif_search.extra_motifs,
                "extra motif as name=SMILES");

  CLI::App *pr = app.add_subcommand(
      "project", "2D principal-component map of fingerprint space");
  add_common(pr, project.common);
  pr->add_option("--in", project.inputs, "molecule corpus, one per cohort")
      ->required();
  pr->add_option("--cohort", project.cohorts,
                 "cohort label per --in (default: file stem)");
  pr->add_flag("--svg", project.svg, "also draw projection.svg");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp &help) {
    (void)app.exit(help);
    return kOk;
  } catch (const CLI::ParseError &error) {
    (void)app.exit(error);
    return kUsage;
  }

  if (p->parsed()) return run_pretrain(pretrain);
  if (r->parsed()) return run_rltrain(rltrain);
  if (s->parsed()) return run_sample(sample);
  if (sc->parsed()) return run_score(score);
  if (e->parsed()) return run_evaluate(evaluate);
  if (a->parsed()) return run_attribute(attribute);
  if (m->parsed()) return run_motif_search(motif_search);
  if (pr->parsed()) return run_project(project);
  return kUsage;
}

}  // namespace covgen::cli
