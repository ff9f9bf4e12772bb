//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#include "covgen/nn/graph_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "covgen/nn/checkpoint.hpp"
#include "covgen/util/io.hpp"
#include "json.hpp"

namespace covgen::nn {

namespace {

constexpr double kLeakySlope = 0.2;
constexpr double kResidualMix = 0.1;  // weight of the first layer's output

int element_slot(int z) {
  switch (z) {
    case 6: return 0;   // C
    case 7: return 1;   // N
    case 8: return 2;   // O
    case 16: return 3;  // S
    case 15: return 4;  // P
    case 9: return 5;   // F
    case 17: return 6;  // Cl
    case 35: return 7;  // Br
    case 53: return 8;  // I
    case 5: return 9;   // B
    case 14: return 10; // Si
    case 34: return 11; // Se
    default: return 12; // other
  }
}

Eigen::RowVectorXd softmax_row(const Eigen::RowVectorXd &logits) {
  const double m = logits.maxCoeff();
  Eigen::RowVectorXd e = (logits.array() - m).exp();
  return e / e.sum();
}

double global_norm(const std::map<std::string, Eigen::MatrixXd> &grads) {
  double sq = 0.0;
  for (const auto &[name, g] : grads) sq += g.squaredNorm();
  return std::sqrt(sq);
}

}  // namespace

int GraphConfig::output_dim() const {
  switch (head) {
    case GraphHead::Binary: return 2;
    case GraphHead::Multiclass: return classes;
    case GraphHead::Regression: return 1;
  }
  return 2;
}

GraphInput featurize(const chem::MolecularGraph &mol) {
  const int n = mol.atom_count();
  if (n == 0) throw std::invalid_argument("featurize: empty molecule");
  GraphInput g;
  g.features = Eigen::MatrixXd::Zero(n, kNodeFeatures);
  for (int i = 0; i < n; ++i) {
    const chem::Atom &a = mol.atom(i);
    g.features(i, element_slot(a.atomic_number)) = 1.0;
    const int deg = std::min<int>(a.degree, 5);
    g.features(i, 13 + deg) = 1.0;
    g.features(i, 19) = static_cast<double>(a.formal_charge);
    g.features(i, 20) = a.aromatic ? 1.0 : 0.0;
    g.features(i, 21) = a.in_ring ? 1.0 : 0.0;
  }
  Eigen::MatrixXd adj = Eigen::MatrixXd::Identity(n, n);
  for (const chem::Bond &b : mol.bonds()) {
    adj(b.a, b.b) = 1.0;
    adj(b.b, b.a) = 1.0;
  }
  for (int i = 0; i < n; ++i) adj.row(i) /= adj.row(i).sum();
  g.adj_norm = std::move(adj);
  return g;
}

GraphModel::GraphModel(GraphConfig config, util::Rng &rng) : config_(config) {
  if (config_.layers < 1 || config_.hidden < 1)
    throw std::invalid_argument("graph model: non-positive dimension");
  if (config_.head == GraphHead::Multiclass && config_.classes < 2)
    throw std::invalid_argument("graph model: needs at least two classes");
  const int h = config_.hidden;
  auto init = [&rng](Eigen::MatrixXd &m, int rows, int cols, double scale) {
    m.resize(rows, cols);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        m(i, j) = scale * rng.normal();
  };
  w_.resize(config_.layers);
  b_.resize(config_.layers);
  a_src_.resize(config_.layers);
  a_dst_.resize(config_.layers);
  for (int l = 0; l < config_.layers; ++l) {
    const int fan_in = l == 0 ? kNodeFeatures : h;
    init(w_[l], fan_in, h, 1.0 / std::sqrt(static_cast<double>(fan_in)));
    b_[l] = Eigen::MatrixXd::Zero(1, h);
    if (l > 0 && config_.kind == GraphLayerKind::Attention) {
      init(a_src_[l], h, 1, 0.1);
      init(a_dst_[l], h, 1, 0.1);
    }
  }
  init(head_w_, h, config_.output_dim(), 1.0 / std::sqrt(static_cast<double>(h)));
  head_b_ = Eigen::MatrixXd::Zero(1, config_.output_dim());
}

std::vector<std::pair<std::string, Eigen::MatrixXd *>>
GraphModel::named_params() {
  std::vector<std::pair<std::string, Eigen::MatrixXd *>> out;
  for (int l = 0; l < config_.layers; ++l) {
    const std::string i = std::to_string(l);
    out.emplace_back("w" + i, &w_[l]);
    out.emplace_back("b" + i, &b_[l]);
    if (a_src_[l].size() > 0) {
      out.emplace_back("a" + i + "src", &a_src_[l]);
      out.emplace_back("a" + i + "dst", &a_dst_[l]);
    }
  }
  out.emplace_back("head_w", &head_w_);
  out.emplace_back("head_b", &head_b_);
  return out;
}

std::vector<std::pair<std::string, const Eigen::MatrixXd *>>
GraphModel::named_params() const {
  std::vector<std::pair<std::string, const Eigen::MatrixXd *>> out;
  for (const auto &[name, p] : const_cast<GraphModel *>(this)->named_params())
    out.emplace_back(name, p);
  return out;
}

namespace {

// One attention layer's forward intermediates, recomputed on demand during
// the backward pass.
struct AttentionCtx {
  Eigen::MatrixXd s;      // n x h, projected inputs
  Eigen::MatrixXd alpha;  // n x n row-stochastic over the self-looped mask
  Eigen::MatrixXd pre;    // raw additive scores before the leaky ReLU
};

AttentionCtx attention_forward(const Eigen::MatrixXd &f_in,
                               const Eigen::MatrixXd &adj_norm,
                               const Eigen::MatrixXd &w,
                               const Eigen::MatrixXd &a_src,
                               const Eigen::MatrixXd &a_dst) {
  const Eigen::Index n = f_in.rows();
  AttentionCtx ctx;
  ctx.s = f_in * w;
  Eigen::VectorXd q = ctx.s * a_src;
  Eigen::VectorXd k = ctx.s * a_dst;
  ctx.pre = Eigen::MatrixXd::Zero(n, n);
  ctx.alpha = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double m = -std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < n; ++j) {
      if (adj_norm(i, j) == 0.0) continue;
      const double raw = q(i) + k(j);
      ctx.pre(i, j) = raw;
      m = std::max(m, raw > 0.0 ? raw : kLeakySlope * raw);
    }
    double total = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (adj_norm(i, j) == 0.0) continue;
      const double raw = ctx.pre(i, j);
      const double act = raw > 0.0 ? raw : kLeakySlope * raw;
      ctx.alpha(i, j) = std::exp(act - m);
      total += ctx.alpha(i, j);
    }
    for (Eigen::Index j = 0; j < n; ++j) ctx.alpha(i, j) /= total;
  }
  return ctx;
}

}  // namespace

GraphModel::Forward GraphModel::forward(const GraphInput &input) const {
  Forward fwd;
  fwd.acts.resize(static_cast<size_t>(config_.layers));
  Eigen::MatrixXd cur;
  for (int l = 0; l < config_.layers; ++l) {
    const Eigen::MatrixXd &f_in = l == 0 ? input.features : cur;
    Eigen::MatrixXd pre;
    if (l == 0 || config_.kind == GraphLayerKind::Conv) {
      pre = (input.adj_norm * f_in * w_[l]).rowwise() + b_[l].row(0);
    } else if (config_.kind == GraphLayerKind::Attention) {
      AttentionCtx ctx =
          attention_forward(f_in, input.adj_norm, w_[l], a_src_[l], a_dst_[l]);
      pre = (ctx.alpha * ctx.s).rowwise() + b_[l].row(0);
    } else {
      pre = ((1.0 - kResidualMix) * (input.adj_norm * f_in * w_[l]) +
             kResidualMix * fwd.acts[0])
                .rowwise() +
            b_[l].row(0);
    }
    cur = pre.cwiseMax(0.0);
    fwd.acts[static_cast<size_t>(l)] = cur;
  }
  fwd.pooled = cur.colwise().mean();
  fwd.logits = fwd.pooled * head_w_;
  fwd.logits += head_b_.row(0);
  return fwd;
}

std::vector<double> GraphModel::predict(const GraphInput &input) const {
  const Forward fwd = forward(input);
  if (config_.head == GraphHead::Regression)
    return {fwd.logits(0)};
  Eigen::RowVectorXd p = softmax_row(fwd.logits);
  return std::vector<double>(p.data(), p.data() + p.size());
}

void GraphModel::backward(const GraphInput &input, const Forward &fwd,
                          const Eigen::RowVectorXd &dlogits,
                          std::map<std::string, Eigen::MatrixXd> *grads,
                          std::vector<Eigen::MatrixXd> *dacts_out) const {
  const Eigen::Index n = input.features.rows();
  const int layers = config_.layers;
  if (grads) {
    (*grads)["head_w"] += fwd.pooled.transpose() * dlogits;
    (*grads)["head_b"] += dlogits;
  }
  Eigen::RowVectorXd dpooled = dlogits * head_w_.transpose();

  std::vector<Eigen::MatrixXd> dacts(static_cast<size_t>(layers));
  for (int l = 0; l < layers; ++l)
    dacts[static_cast<size_t>(l)] =
        Eigen::MatrixXd::Zero(n, config_.hidden);
  dacts[static_cast<size_t>(layers - 1)] =
      Eigen::MatrixXd::Ones(n, 1) * (dpooled / static_cast<double>(n));

  if (dacts_out) dacts_out->resize(static_cast<size_t>(layers));
  for (int l = layers - 1; l >= 0; --l) {
    const Eigen::MatrixXd &df = dacts[static_cast<size_t>(l)];
    if (dacts_out) (*dacts_out)[static_cast<size_t>(l)] = df;
    const Eigen::MatrixXd &act = fwd.acts[static_cast<size_t>(l)];
    // Post-ReLU output is positive exactly where the pre-activation was.
    Eigen::MatrixXd dp =
        (df.array() * (act.array() > 0.0).cast<double>()).matrix();
    const Eigen::MatrixXd &f_in =
        l == 0 ? input.features : fwd.acts[static_cast<size_t>(l - 1)];
    const std::string idx = std::to_string(l);

    if (l == 0 || config_.kind == GraphLayerKind::Conv) {
      if (grads) {
        (*grads)["w" + idx] += (input.adj_norm * f_in).transpose() * dp;
        (*grads)["b" + idx] += dp.colwise().sum();
      }
      if (l > 0)
        dacts[static_cast<size_t>(l - 1)] +=
            input.adj_norm.transpose() * dp * w_[l].transpose();
    } else if (config_.kind == GraphLayerKind::DeepResidual) {
      if (grads) {
        (*grads)["w" + idx] +=
            (1.0 - kResidualMix) * (input.adj_norm * f_in).transpose() * dp;
        (*grads)["b" + idx] += dp.colwise().sum();
      }
      dacts[static_cast<size_t>(l - 1)] +=
          (1.0 - kResidualMix) * input.adj_norm.transpose() * dp *
          w_[l].transpose();
      dacts[0] += kResidualMix * dp;
    } else {
      AttentionCtx ctx = attention_forward(f_in, input.adj_norm, w_[l],
                                           a_src_[l], a_dst_[l]);
      Eigen::MatrixXd dalpha = dp * ctx.s.transpose();
      Eigen::MatrixXd ds = ctx.alpha.transpose() * dp;
      // Row softmax backward, then the leaky ReLU on the additive scores.
      Eigen::MatrixXd dpre = Eigen::MatrixXd::Zero(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        double dot = 0.0;
        for (Eigen::Index j = 0; j < n; ++j)
          dot += ctx.alpha(i, j) * dalpha(i, j);
        for (Eigen::Index j = 0; j < n; ++j) {
          if (input.adj_norm(i, j) == 0.0) continue;
          const double de = ctx.alpha(i, j) * (dalpha(i, j) - dot);
          dpre(i, j) = de * (ctx.pre(i, j) > 0.0 ? 1.0 : kLeakySlope);
        }
      }
      Eigen::VectorXd dq = dpre.rowwise().sum();
      Eigen::VectorXd dk = dpre.colwise().sum().transpose();
      ds += dq * a_src_[l].transpose() + dk * a_dst_[l].transpose();
      if (grads) {
        (*grads)["a" + idx + "src"] += ctx.s.transpose() * dq;
        (*grads)["a" + idx + "dst"] += ctx.s.transpose() * dk;
        (*grads)["w" + idx] += f_in.transpose() * ds;
        (*grads)["b" + idx] += dp.colwise().sum();
      }
      dacts[static_cast<size_t>(l - 1)] += ds * w_[l].transpose();
    }
  }
}

double GraphModel::evaluate_loss(const std::vector<GraphInput> &inputs,
                                 const std::vector<double> &targets) const {
  if (inputs.empty() || inputs.size() != targets.size())
    throw std::invalid_argument("graph model: bad batch");
  double loss = 0.0;
  for (size_t i = 0; i < inputs.size(); ++i) {
    const Forward fwd = forward(inputs[i]);
    if (config_.head == GraphHead::Regression) {
      const double d = fwd.logits(0) - targets[i];
      loss += 0.5 * d * d;
    } else {
      const int cls = static_cast<int>(targets[i]);
      if (cls < 0 || cls >= config_.output_dim())
        throw std::invalid_argument("graph model: class target out of range");
      const double m = fwd.logits.maxCoeff();
      const double lse =
          m + std::log((fwd.logits.array() - m).exp().sum());
      loss -= fwd.logits(cls) - lse;
    }
  }
  return loss / static_cast<double>(inputs.size());
}

std::map<std::string, Eigen::MatrixXd> GraphModel::loss_gradient(
    const std::vector<GraphInput> &inputs,
    const std::vector<double> &targets) const {
  if (inputs.empty() || inputs.size() != targets.size())
    throw std::invalid_argument("graph model: bad batch");
  std::map<std::string, Eigen::MatrixXd> grads;
  for (const auto &[name, p] : named_params())
    grads[name] = Eigen::MatrixXd::Zero(p->rows(), p->cols());
  const double scale = 1.0 / static_cast<double>(inputs.size());
  for (size_t i = 0; i < inputs.size(); ++i) {
    const Forward fwd = forward(inputs[i]);
    Eigen::RowVectorXd dlogits;
    if (config_.head == GraphHead::Regression) {
      dlogits = Eigen::RowVectorXd::Constant(1, fwd.logits(0) - targets[i]);
    } else {
      const int cls = static_cast<int>(targets[i]);
      if (cls < 0 || cls >= config_.output_dim())
        throw std::invalid_argument("graph model: class target out of range");
      dlogits = softmax_row(fwd.logits);
      dlogits(cls) -= 1.0;
    }
    dlogits *= scale;
    backward(inputs[i], fwd, dlogits, &grads, nullptr);
  }
  return grads;
}

double GraphModel::train_batch(const std::vector<GraphInput> &inputs,
                               const std::vector<double> &targets) {
  const double loss = evaluate_loss(inputs, targets);
  auto grads = loss_gradient(inputs, targets);
  const double norm = global_norm(grads);
  if (config_.clip_norm > 0.0 && norm > config_.clip_norm) {
    const double s = config_.clip_norm / norm;
    for (auto &[name, g] : grads) g *= s;
  }
  for (auto &[name, p] : named_params()) {
    auto it = velocity_.find(name);
    if (it == velocity_.end())
      it = velocity_.emplace(name, Eigen::MatrixXd::Zero(p->rows(), p->cols()))
               .first;
    it->second = config_.momentum * it->second - config_.lr * grads.at(name);
    *p += it->second;
  }
  return loss;
}

std::vector<Eigen::MatrixXd> GraphModel::activation_gradients(
    const GraphInput &input, int cls) const {
  if (cls < 0 || cls >= config_.output_dim())
    throw std::invalid_argument("graph model: class index out of range");
  const Forward fwd = forward(input);
  Eigen::RowVectorXd dlogits =
      Eigen::RowVectorXd::Zero(config_.output_dim());
  dlogits(cls) = 1.0;
  std::vector<Eigen::MatrixXd> dacts;
  backward(input, fwd, dlogits, nullptr, &dacts);
  return dacts;
}

double GraphModel::logit_from_layer(const GraphInput &input, int layer,
                                    const Eigen::MatrixXd &acts,
                                    int cls) const {
  if (layer < 0 || layer >= config_.layers)
    throw std::invalid_argument("graph model: layer index out of range");
  if (cls < 0 || cls >= config_.output_dim())
    throw std::invalid_argument("graph model: class index out of range");
  Forward fwd = forward(input);
  fwd.acts[static_cast<size_t>(layer)] = acts;
  Eigen::MatrixXd cur = acts;
  for (int l = layer + 1; l < config_.layers; ++l) {
    Eigen::MatrixXd pre;
    if (config_.kind == GraphLayerKind::Conv) {
      pre = (input.adj_norm * cur * w_[l]).rowwise() + b_[l].row(0);
    } else if (config_.kind == GraphLayerKind::Attention) {
      AttentionCtx ctx =
          attention_forward(cur, input.adj_norm, w_[l], a_src_[l], a_dst_[l]);
      pre = (ctx.alpha * ctx.s).rowwise() + b_[l].row(0);
    } else {
      pre = ((1.0 - kResidualMix) * (input.adj_norm * cur * w_[l]) +
             kResidualMix * fwd.acts[0])
                .rowwise() +
            b_[l].row(0);
    }
    cur = pre.cwiseMax(0.0);
  }
  Eigen::RowVectorXd pooled = cur.colwise().mean();
  Eigen::RowVectorXd logits = pooled * head_w_;
  logits += head_b_.row(0);
  return logits(cls);
}

AttributionMap GraphModel::gradcam(const GraphInput &input, int cls) const {
  const Forward fwd = forward(input);
  const std::vector<Eigen::MatrixXd> dacts = activation_gradients(input, cls);
  const Eigen::Index n = input.features.rows();
  AttributionMap map;
  map.raw.assign(static_cast<size_t>(n), 0.0);
  for (int l = 0; l < config_.layers; ++l) {
    const Eigen::MatrixXd &act = fwd.acts[static_cast<size_t>(l)];
    const Eigen::RowVectorXd alpha =
        dacts[static_cast<size_t>(l)].colwise().mean();
    for (Eigen::Index i = 0; i < n; ++i) {
      const double heat = std::max(0.0, act.row(i).dot(alpha));
      map.raw[static_cast<size_t>(i)] += heat;
    }
  }
  for (double &v : map.raw) v /= static_cast<double>(config_.layers);
  const double maxv = *std::max_element(map.raw.begin(), map.raw.end());
  map.normalized.assign(static_cast<size_t>(n), 0.0);
  if (maxv > 0.0) {
    for (size_t i = 0; i < map.raw.size(); ++i) {
      map.normalized[i] = map.raw[i] / maxv;
      if (map.normalized[i] > kTagThreshold)
        map.tagged.push_back(static_cast<int>(i));
    }
  }
  return map;
}

namespace {

std::string kind_name(GraphLayerKind k) {
  switch (k) {
    case GraphLayerKind::Conv: return "conv";
    case GraphLayerKind::Attention: return "attention";
    case GraphLayerKind::DeepResidual: return "deep_residual";
  }
  return "conv";
}

GraphLayerKind kind_from_name(const std::string &s) {
  if (s == "conv") return GraphLayerKind::Conv;
  if (s == "attention") return GraphLayerKind::Attention;
  if (s == "deep_residual") return GraphLayerKind::DeepResidual;
  throw std::runtime_error("graph checkpoint: unknown layer kind '" + s + "'");
}

std::string head_name(GraphHead h) {
  switch (h) {
    case GraphHead::Binary: return "binary";
    case GraphHead::Multiclass: return "multiclass";
    case GraphHead::Regression: return "regression";
  }
  return "binary";
}

GraphHead head_from_name(const std::string &s) {
  if (s == "binary") return GraphHead::Binary;
  if (s == "multiclass") return GraphHead::Multiclass;
  if (s == "regression") return GraphHead::Regression;
  throw std::runtime_error("graph checkpoint: unknown head '" + s + "'");
}

}  // namespace

void GraphModel::save(const std::string &path,
                      const std::string &config_hash) const {
  TensorStore store;
  for (const auto &[name, p] : named_params()) store.put(name, *p);
  store.save(path);
  nlohmann::json meta;
  meta["kind"] = "graph";
  meta["config_hash"] = config_hash;
  meta["config"] = {{"layer_kind", kind_name(config_.kind)},
                    {"layers", config_.layers},
                    {"hidden", config_.hidden},
                    {"head", head_name(config_.head)},
                    {"classes", config_.classes},
                    {"lr", config_.lr},
                    {"momentum", config_.momentum},
                    {"clip_norm", config_.clip_norm},
                    {"epochs", config_.epochs},
                    {"batch", config_.batch}};
  util::write_file_atomic(path + ".json", meta.dump(2) + "\n");
}

GraphModel GraphModel::load(const std::string &path) {
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(util::read_file(path + ".json"));
  } catch (const nlohmann::json::exception &e) {
    throw std::runtime_error(path + ".json: " + e.what());
  }
  if (meta.value("kind", "") != "graph")
    throw std::runtime_error(path + ".json: not a graph checkpoint");
  const auto &c = meta.at("config");
  GraphConfig config;
  config.kind = kind_from_name(c.at("layer_kind").get<std::string>());
  config.layers = c.at("layers").get<int>();
  config.hidden = c.at("hidden").get<int>();
  config.head = head_from_name(c.at("head").get<std::string>());
  config.classes = c.at("classes").get<int>();
  config.lr = c.at("lr").get<double>();
  config.momentum = c.at("momentum").get<double>();
  config.clip_norm = c.at("clip_norm").get<double>();
  config.epochs = c.at("epochs").get<int>();
  config.batch = c.at("batch").get<int>();

  util::Rng rng(0);
  GraphModel model(config, rng);
  TensorStore store = TensorStore::load(path);
  for (auto &[name, p] : model.named_params()) {
    const Eigen::MatrixXd &t = store.get(name);
    if (t.rows() != p->rows() || t.cols() != p->cols())
      throw std::runtime_error(path + ": tensor '" + name +
                               "' has the wrong shape");
    *p = t;
  }
  return model;
}

GraphModel train_graph_model(const std::vector<GraphInput> &inputs,
                             const std::vector<double> &targets,
                             const GraphConfig &config, uint64_t seed,
                             GraphTrainReport *report) {
  if (inputs.empty() || inputs.size() != targets.size())
    throw std::invalid_argument("train_graph_model: bad training set");
  util::Rng rng(seed);
  GraphModel model(config, rng);
  std::vector<size_t> order(inputs.size());
  std::iota(order.begin(), order.end(), size_t{0});
  const size_t batch = std::max<size_t>(1, static_cast<size_t>(config.batch));
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(order);
    double loss_sum = 0.0;
    size_t batches = 0;
    for (size_t start = 0; start < order.size(); start += batch) {
      std::vector<GraphInput> bi;
      std::vector<double> bt;
      for (size_t i = start; i < std::min(start + batch, order.size()); ++i) {
        bi.push_back(inputs[order[i]]);
        bt.push_back(targets[order[i]]);
      }
      loss_sum += model.train_batch(bi, bt);
      ++batches;
    }
    if (report)
      report->train_loss.push_back(
          loss_sum / static_cast<double>(std::max<size_t>(1, batches)));
  }
  return model;
}

std::vector<size_t> balanced_subsample(const std::vector<double> &targets,
                                       util::Rng &rng) {
  std::map<int, std::vector<size_t>> by_class;
  for (size_t i = 0; i < targets.size(); ++i)
    by_class[static_cast<int>(targets[i])].push_back(i);
  if (by_class.empty()) return {};
  size_t floor = std::numeric_limits<size_t>::max();
  for (const auto &[cls, idx] : by_class)
    floor = std::min(floor, idx.size());
  std::vector<size_t> out;
  for (auto &[cls, idx] : by_class) {
    rng.shuffle(idx);
    out.insert(out.end(), idx.begin(), idx.begin() + static_cast<long>(floor));
  }
  rng.shuffle(out);
  return out;
}

GraphModel retrain_balanced(const std::vector<GraphInput> &inputs,
                            const std::vector<double> &targets,
                            const GraphConfig &config, uint64_t seed,
                            GraphTrainReport *report) {
  if (config.head == GraphHead::Regression)
    throw std::invalid_argument("retrain_balanced: classifier heads only");
  util::Rng rng(seed);
  const std::vector<size_t> keep = balanced_subsample(targets, rng);
  std::vector<GraphInput> bi;
  std::vector<double> bt;
  bi.reserve(keep.size());
  bt.reserve(keep.size());
  for (size_t i : keep) {
    bi.push_back(inputs[i]);
    bt.push_back(targets[i]);
  }
  return train_graph_model(bi, bt, config, rng.next(), report);
}

}  // namespace covgen::nn
