//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#include "covgen/cli/config.hpp"

#include <cstdint>
#include <cstdio>
#include <functional>
#include <set>

#include <json.hpp>

#include "covgen/util/io.hpp"

namespace covgen::cli {

namespace {

using nlohmann::json;

uint64_t fnv1a(const std::string &s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

const char *layer_kind_name(nn::GraphLayerKind kind) {
  switch (kind) {
    case nn::GraphLayerKind::Conv: return "conv";
    case nn::GraphLayerKind::Attention: return "attention";
    case nn::GraphLayerKind::DeepResidual: return "deep_residual";
  }
  return "conv";
}

nn::GraphLayerKind parse_layer_kind(const std::string &name) {
  if (name == "conv") return nn::GraphLayerKind::Conv;
  if (name == "attention") return nn::GraphLayerKind::Attention;
  if (name == "deep_residual") return nn::GraphLayerKind::DeepResidual;
  throw ConfigError("graph.kind must be conv, attention or deep_residual, "
                    "got '" + name + "'");
}

const char *head_name(nn::GraphHead head) {
  switch (head) {
    case nn::GraphHead::Binary: return "binary";
    case nn::GraphHead::Multiclass: return "multiclass";
    case nn::GraphHead::Regression: return "regression";
  }
  return "binary";
}

nn::GraphHead parse_head(const std::string &name) {
  if (name == "binary") return nn::GraphHead::Binary;
  if (name == "multiclass") return nn::GraphHead::Multiclass;
  if (name == "regression") return nn::GraphHead::Regression;
  throw ConfigError("graph.head must be binary, multiclass or regression, "
                    "got '" + name + "'");
}

// Key-by-key reader over one config section; every key not consumed by a
// getter is reported as unknown.
class Section {
public:
  Section(const json &j, std::string name) : j_(j), name_(std::move(name)) {
    if (!j_.is_object())
      throw ConfigError("config section '" + name_ + "' must be an object");
  }

  ~Section() = default;

  void number(const char *key, double *out, double lo, double hi) {
    read(key, [&](const json &v) {
      if (!v.is_number())
        throw ConfigError(path(key) + " must be a number");
      const double value = v.get<double>();
      if (value < lo || value > hi)
        throw ConfigError(path(key) + " out of range");
      *out = value;
    });
  }

  void integer(const char *key, int *out, int lo, int hi) {
    read(key, [&](const json &v) {
      if (!v.is_number_integer())
        throw ConfigError(path(key) + " must be an integer");
      const int value = v.get<int>();
      if (value < lo || value > hi)
        throw ConfigError(path(key) + " out of range");
      *out = value;
    });
  }

  void boolean(const char *key, bool *out) {
    read(key, [&](const json &v) {
      if (!v.is_boolean())
        throw ConfigError(path(key) + " must be a boolean");
      *out = v.get<bool>();
    });
  }

  void text(const char *key, std::string *out) {
    read(key, [&](const json &v) {
      if (!v.is_string())
        throw ConfigError(path(key) + " must be a string");
      *out = v.get<std::string>();
    });
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key()))
        throw ConfigError("unknown config key '" + name_ + "." + it.key() +
                          "'");
  }

  const json *child(const char *key) {
    auto it = j_.find(key);
    if (it == j_.end()) return nullptr;
    seen_.insert(key);
    return &*it;
  }

private:
  std::string path(const char *key) const { return name_ + "." + key; }

  void read(const char *key, const std::function<void(const json &)> &fn) {
    auto it = j_.find(key);
    if (it == j_.end()) return;
    seen_.insert(key);
    fn(*it);
  }

  const json &j_;
  std::string name_;
  std::set<std::string> seen_;
};

void apply_generator(const json &j, nn::GeneratorConfig *g) {
  Section s(j, "generator");
  s.integer("embedding", &g->embedding, 1, 4096);
  s.integer("hidden", &g->hidden, 1, 8192);
  s.integer("max_len", &g->max_len, 2, 4096);
  s.number("lr", &g->lr, 1e-9, 100.0);
  s.number("momentum", &g->momentum, 0.0, 0.999999);
  s.number("clip_norm", &g->clip_norm, 1e-9, 1e9);
  s.integer("batch", &g->batch, 1, 1 << 20);
  s.integer("epochs", &g->epochs, 1, 1 << 20);
  s.number("holdout_fraction", &g->holdout_fraction, 0.0, 0.9);
  s.finish();
}

void apply_graph(const json &j, nn::GraphConfig *g, bool *balanced) {
  Section s(j, "graph");
  std::string kind = layer_kind_name(g->kind);
  std::string head = head_name(g->head);
  s.text("kind", &kind);
  s.integer("layers", &g->layers, 1, 64);
  s.integer("hidden", &g->hidden, 1, 8192);
  s.text("head", &head);
  s.integer("classes", &g->classes, 1, 4096);
  s.number("lr", &g->lr, 1e-9, 100.0);
  s.number("momentum", &g->momentum, 0.0, 0.999999);
  s.number("clip_norm", &g->clip_norm, 1e-9, 1e9);
  s.integer("epochs", &g->epochs, 1, 1 << 20);
  s.integer("batch", &g->batch, 1, 1 << 20);
  s.boolean("balanced", balanced);
  s.finish();
  g->kind = parse_layer_kind(kind);
  g->head = parse_head(head);
}

void apply_rl(const json &j, rl::RlConfig *r) {
  Section s(j, "rl");
  s.integer("iterations", &r->iterations, 1, 1 << 20);
  s.integer("batch", &r->batch, 1, 1 << 20);
  s.number("lr", &r->lr, 1e-12, 100.0);
  s.number("temperature", &r->temperature, 0.0, 100.0);
  s.number("selection_fraction", &r->selection_fraction, 1e-9, 1.0);
  s.integer("checkpoint_every", &r->checkpoint_every, 0, 1 << 20);
  s.finish();
}

void apply_scoring(const json &j, RunConfig *c) {
  Section s(j, "scoring");
  s.text("preset", &c->preset);
  s.text("covalent_model", &c->covalent_model);
  s.text("affinity_model", &c->affinity_model);
  s.integer("affinity_class", &c->affinity_class, 0, 4095);
  s.text("docking_model", &c->docking_model);
  s.text("docking_scores", &c->docking_scores);
  s.text("overlap_scores", &c->overlap_scores);
  s.text("reference", &c->reference);
  s.text("sa_table", &c->sa_table);
  s.text("sa_corpus", &c->sa_corpus);
  if (const json *m = s.child("motif_scorer")) {
    Section ms(*m, "scoring.motif_scorer");
    ms.text("name", &c->motif_name);
    ms.text("smiles", &c->motif_smiles);
    ms.number("weight", &c->motif_weight, 0.0, 1e6);
    double threshold = 0.0;
    bool have = false;
    if (m->contains("threshold")) have = true;
    ms.number("threshold", &threshold, -1e12, 1e12);
    if (have) c->motif_threshold = threshold;
    ms.finish();
    if (c->motif_smiles.empty())
      throw ConfigError("scoring.motif_scorer.smiles is required");
    if (c->motif_name.empty()) c->motif_name = "motif";
  }
  s.finish();
}

}  // namespace

std::string RunConfig::canonical_text() const {
  json j;
  j["generator"] = {{"embedding", generator.embedding},
                    {"hidden", generator.hidden},
                    {"max_len", generator.max_len},
                    {"lr", generator.lr},
                    {"momentum", generator.momentum},
                    {"clip_norm", generator.clip_norm},
                    {"batch", generator.batch},
                    {"epochs", generator.epochs},
                    {"holdout_fraction", generator.holdout_fraction}};
  j["graph"] = {{"kind", layer_kind_name(graph.kind)},
                {"layers", graph.layers},
                {"hidden", graph.hidden},
                {"head", head_name(graph.head)},
                {"classes", graph.classes},
                {"lr", graph.lr},
                {"momentum", graph.momentum},
                {"clip_norm", graph.clip_norm},
                {"epochs", graph.epochs},
                {"batch", graph.batch},
                {"balanced", graph_balanced}};
  j["rl"] = {{"iterations", rl.iterations},
             {"batch", rl.batch},
             {"lr", rl.lr},
             {"temperature", rl.temperature},
             {"selection_fraction", rl.selection_fraction},
             {"checkpoint_every", rl.checkpoint_every}};
  j["sample"] = {{"temperature", sample_temperature}};
  json scoring = {{"preset", preset},
                  {"covalent_model", covalent_model},
                  {"affinity_model", affinity_model},
                  {"affinity_class", affinity_class},
                  {"docking_model", docking_model},
                  {"docking_scores", docking_scores},
                  {"overlap_scores", overlap_scores},
                  {"reference", reference},
                  {"sa_table", sa_table},
                  {"sa_corpus", sa_corpus}};
  if (!motif_smiles.empty()) {
    json motif = {{"name", motif_name},
                  {"smiles", motif_smiles},
                  {"weight", motif_weight}};
    if (motif_threshold) motif["threshold"] = *motif_threshold;
    scoring["motif_scorer"] = motif;
  }
  j["scoring"] = scoring;
  return j.dump();
}

std::string RunConfig::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(canonical_text())));
  return buf;
}

RunConfig load_config(const std::string &path) {
  RunConfig config;
  if (path.empty()) return config;

  std::string text;
  try {
    text = util::read_file(path);
  } catch (const std::exception &e) {
    throw InputError(e.what());
  }

  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ConfigError(path + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError(path + ": top level must be an object");

  Section top(j, "config");
  if (const json *g = top.child("generator")) apply_generator(*g, &config.generator);
  if (const json *g = top.child("graph"))
    apply_graph(*g, &config.graph, &config.graph_balanced);
  if (const json *r = top.child("rl")) apply_rl(*r, &config.rl);
  if (const json *s = top.child("sample")) {
    Section sample(*s, "sample");
    sample.number("temperature", &config.sample_temperature, 0.0, 100.0);
    sample.finish();
  }
  if (const json *s = top.child("scoring")) apply_scoring(*s, &config);
  top.finish();
  return config;
}

}  // namespace covgen::cli
