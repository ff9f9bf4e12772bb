//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#include "covgen/nn/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "covgen/nn/checkpoint.hpp"
#include "covgen/util/io.hpp"
#include "covgen/util/parallel.hpp"
#include "json.hpp"

namespace covgen::nn {

namespace {

Eigen::MatrixXd sigmoid(const Eigen::MatrixXd &m) {
  return 1.0 / (1.0 + (-m.array()).exp());
}

// Row-wise log softmax, max-shifted for stability.
Eigen::MatrixXd log_softmax(const Eigen::MatrixXd &logits) {
  Eigen::MatrixXd out(logits.rows(), logits.cols());
  for (Eigen::Index r = 0; r < logits.rows(); ++r) {
    const double m = logits.row(r).maxCoeff();
    const double lse =
        m + std::log((logits.row(r).array() - m).exp().sum());
    out.row(r) = logits.row(r).array() - lse;
  }
  return out;
}

double global_norm(const std::map<std::string, Eigen::MatrixXd> &grads) {
  double sq = 0.0;
  for (const auto &[name, g] : grads) sq += g.squaredNorm();
  return std::sqrt(sq);
}

void clip_by_norm(std::map<std::string, Eigen::MatrixXd> &grads,
                  double clip) {
  const double norm = global_norm(grads);
  if (clip > 0.0 && norm > clip) {
    const double scale = clip / norm;
    for (auto &[name, g] : grads) g *= scale;
  }
}

void check_sequences(const std::vector<std::vector<int>> &seqs, int vocab) {
  if (seqs.empty())
    throw std::invalid_argument("generator: empty sequence batch");
  for (const auto &s : seqs) {
    if (s.size() < 2)
      throw std::invalid_argument(
          "generator: sequence needs a start token and at least one target");
    for (int id : s)
      if (id < 0 || id >= vocab)
        throw std::invalid_argument("generator: token id outside vocabulary");
  }
}

}  // namespace

double TokenSequence::total_log_prob() const {
  return std::accumulate(log_probs.begin(), log_probs.end(), 0.0);
}

GeneratorModel::GeneratorModel(Tokenizer tokenizer, GeneratorConfig config,
                               util::Rng &rng)
    : tokenizer_(std::move(tokenizer)), config_(config) {
  if (config_.embedding <= 0 || config_.hidden <= 0 || config_.max_len <= 0)
    throw std::invalid_argument("generator: non-positive dimension");
  const int v = tokenizer_.size();
  const int e = config_.embedding;
  const int h = config_.hidden;
  auto init = [&rng](Eigen::MatrixXd &m, int rows, int cols, double scale) {
    m.resize(rows, cols);
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j)
        m(i, j) = scale * rng.normal();
  };
  init(emb_, v, e, 0.1);
  const double se = 1.0 / std::sqrt(static_cast<double>(e));
  const double sh = 1.0 / std::sqrt(static_cast<double>(h));
  init(wz_, e, h, se);
  init(wr_, e, h, se);
  init(wh_, e, h, se);
  init(uz_, h, h, sh);
  init(ur_, h, h, sh);
  init(uh_, h, h, sh);
  init(wo_, h, v, sh);
  bz_ = Eigen::MatrixXd::Zero(1, h);
  br_ = Eigen::MatrixXd::Zero(1, h);
  bh_ = Eigen::MatrixXd::Zero(1, h);
  bo_ = Eigen::MatrixXd::Zero(1, v);
}

std::vector<std::pair<std::string, Eigen::MatrixXd *>>
GeneratorModel::named_params() {
  return {{"emb", &emb_}, {"wz", &wz_}, {"wr", &wr_}, {"wh", &wh_},
          {"uz", &uz_},   {"ur", &ur_}, {"uh", &uh_}, {"bz", &bz_},
          {"br", &br_},   {"bh", &bh_}, {"wo", &wo_}, {"bo", &bo_}};
}

std::vector<std::pair<std::string, const Eigen::MatrixXd *>>
GeneratorModel::named_params() const {
  return {{"emb", &emb_}, {"wz", &wz_}, {"wr", &wr_}, {"wh", &wh_},
          {"uz", &uz_},   {"ur", &ur_}, {"uh", &uh_}, {"bz", &bz_},
          {"br", &br_},   {"bh", &bh_}, {"wo", &wo_}, {"bo", &bo_}};
}

// One teacher-forced pass. step_weights[b][t] scales the negative
// log-likelihood of target t of sequence b; the return value is
// sum of w * (-log p(target)) and grads (when non-null) receives its exact
// parameter gradient. Rows whose weight is zero contribute nothing, so
// padded tail positions stay inert all the way through the recurrence.
double GeneratorModel::backward(
    const std::vector<std::vector<int>> &seqs,
    const std::vector<std::vector<double>> &step_weights,
    std::map<std::string, Eigen::MatrixXd> &grads) const {
  const int v = tokenizer_.size();
  check_sequences(seqs, v);
  const int b = static_cast<int>(seqs.size());
  int t_max = 0;
  for (const auto &s : seqs)
    t_max = std::max(t_max, static_cast<int>(s.size()) - 1);

  const int h = config_.hidden;
  const bool want_grads = !grads.empty();

  std::vector<Eigen::MatrixXd> xs(t_max), zs(t_max), rs(t_max), cs(t_max);
  std::vector<Eigen::MatrixXd> hs(t_max + 1);
  std::vector<Eigen::MatrixXd> dlogits(t_max);
  std::vector<std::vector<int>> inputs(t_max, std::vector<int>(b, 0));
  hs[0] = Eigen::MatrixXd::Zero(b, h);

  double objective = 0.0;
  for (int t = 0; t < t_max; ++t) {
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(b, config_.embedding);
    for (int i = 0; i < b; ++i) {
      if (t + 1 < static_cast<int>(seqs[i].size())) {
        inputs[t][i] = seqs[i][t];
        x.row(i) = emb_.row(seqs[i][t]);
      }
    }
    const Eigen::MatrixXd &hp = hs[t];
    Eigen::MatrixXd z = sigmoid((x * wz_ + hp * uz_).rowwise() + bz_.row(0));
    Eigen::MatrixXd r = sigmoid((x * wr_ + hp * ur_).rowwise() + br_.row(0));
    Eigen::MatrixXd c =
        ((x * wh_ + (r.array() * hp.array()).matrix() * uh_).rowwise() +
         bh_.row(0))
            .array()
            .tanh();
    Eigen::MatrixXd hn =
        ((1.0 - z.array()) * hp.array() + z.array() * c.array()).matrix();
    Eigen::MatrixXd logits = (hn * wo_).rowwise() + bo_.row(0);
    Eigen::MatrixXd logp = log_softmax(logits);

    Eigen::MatrixXd dl = Eigen::MatrixXd::Zero(b, v);
    for (int i = 0; i < b; ++i) {
      if (t + 1 >= static_cast<int>(seqs[i].size())) continue;
      const int target = seqs[i][t + 1];
      const double w = step_weights[i][t];
      objective -= w * logp(i, target);
      if (want_grads && w != 0.0) {
        dl.row(i) = w * logp.row(i).array().exp().matrix();
        dl(i, target) -= w;
      }
    }
    if (want_grads) {
      xs[t] = std::move(x);
      zs[t] = std::move(z);
      rs[t] = std::move(r);
      cs[t] = std::move(c);
      dlogits[t] = std::move(dl);
    }
    hs[t + 1] = std::move(hn);
  }
  if (!want_grads) return objective;

  for (auto &[name, g] : grads) g.setZero();
  Eigen::MatrixXd dh_next = Eigen::MatrixXd::Zero(b, h);
  for (int t = t_max - 1; t >= 0; --t) {
    const Eigen::MatrixXd &hp = hs[t];
    Eigen::MatrixXd dh = dh_next + dlogits[t] * wo_.transpose();
    grads["wo"] += hs[t + 1].transpose() * dlogits[t];
    grads["bo"] += dlogits[t].colwise().sum();

    Eigen::MatrixXd dzpre = (dh.array() * (cs[t].array() - hp.array()) *
                             zs[t].array() * (1.0 - zs[t].array()))
                                .matrix();
    Eigen::MatrixXd dcpre =
        (dh.array() * zs[t].array() * (1.0 - cs[t].array().square())).matrix();
    Eigen::MatrixXd drh = dcpre * uh_.transpose();
    Eigen::MatrixXd drpre =
        (drh.array() * hp.array() * rs[t].array() * (1.0 - rs[t].array()))
            .matrix();

    grads["wh"] += xs[t].transpose() * dcpre;
    grads["uh"] += (rs[t].array() * hp.array()).matrix().transpose() * dcpre;
    grads["bh"] += dcpre.colwise().sum();
    grads["wz"] += xs[t].transpose() * dzpre;
    grads["uz"] += hp.transpose() * dzpre;
    grads["bz"] += dzpre.colwise().sum();
    grads["wr"] += xs[t].transpose() * drpre;
    grads["ur"] += hp.transpose() * drpre;
    grads["br"] += drpre.colwise().sum();

    dh_next = (dh.array() * (1.0 - zs[t].array()) +
               drh.array() * rs[t].array())
                  .matrix() +
              dzpre * uz_.transpose() + drpre * ur_.transpose();
    Eigen::MatrixXd dx =
        dzpre * wz_.transpose() + drpre * wr_.transpose() +
        dcpre * wh_.transpose();
    auto &gemb = grads["emb"];
    for (int i = 0; i < b; ++i) gemb.row(inputs[t][i]) += dx.row(i);
  }
  return objective;
}

double GeneratorModel::evaluate_loss(
    const std::vector<std::vector<int>> &seqs) const {
  check_sequences(seqs, tokenizer_.size());
  size_t total = 0;
  for (const auto &s : seqs) total += s.size() - 1;
  const double w = 1.0 / static_cast<double>(total);
  std::vector<std::vector<double>> weights;
  weights.reserve(seqs.size());
  for (const auto &s : seqs)
    weights.emplace_back(s.size() - 1, w);
  std::map<std::string, Eigen::MatrixXd> no_grads;
  return backward(seqs, weights, no_grads);
}

double GeneratorModel::train_batch(const std::vector<std::vector<int>> &seqs) {
  check_sequences(seqs, tokenizer_.size());
  size_t total = 0;
  for (const auto &s : seqs) total += s.size() - 1;
  const double w = 1.0 / static_cast<double>(total);
  std::vector<std::vector<double>> weights;
  weights.reserve(seqs.size());
  for (const auto &s : seqs)
    weights.emplace_back(s.size() - 1, w);

  std::map<std::string, Eigen::MatrixXd> grads;
  for (const auto &[name, p] : named_params())
    grads[name] = Eigen::MatrixXd::Zero(p->rows(), p->cols());
  const double loss = backward(seqs, weights, grads);
  clip_by_norm(grads, config_.clip_norm);
  apply_update(grads, config_.lr, config_.momentum);
  return loss;
}

double GeneratorModel::sequence_log_prob(const std::vector<int> &ids) const {
  std::vector<std::vector<double>> weights{
      std::vector<double>(ids.size() - 1, 1.0)};
  std::map<std::string, Eigen::MatrixXd> no_grads;
  return -backward({ids}, weights, no_grads);
}

double GeneratorModel::reinforce_objective(
    const std::vector<std::vector<int>> &seqs,
    const std::vector<double> &rewards) const {
  if (seqs.size() != rewards.size())
    throw std::invalid_argument("generator: reward count mismatch");
  std::vector<std::vector<double>> weights;
  weights.reserve(seqs.size());
  for (size_t i = 0; i < seqs.size(); ++i)
    weights.emplace_back(seqs[i].size() - 1, rewards[i]);
  std::map<std::string, Eigen::MatrixXd> no_grads;
  // backward returns sum of w * (-log p); the episode return objective is
  // its negation.
  return -backward(seqs, weights, no_grads);
}

std::map<std::string, Eigen::MatrixXd> GeneratorModel::reinforce_gradient(
    const std::vector<std::vector<int>> &seqs,
    const std::vector<double> &rewards) const {
  if (seqs.size() != rewards.size())
    throw std::invalid_argument("generator: reward count mismatch");
  std::vector<std::vector<double>> weights;
  weights.reserve(seqs.size());
  for (size_t i = 0; i < seqs.size(); ++i)
    weights.emplace_back(seqs[i].size() - 1, rewards[i]);
  std::map<std::string, Eigen::MatrixXd> grads;
  for (const auto &[name, p] : named_params())
    grads[name] = Eigen::MatrixXd::Zero(p->rows(), p->cols());
  backward(seqs, weights, grads);
  for (auto &[name, g] : grads) g = -g;  // ascent on the return objective
  return grads;
}

void GeneratorModel::policy_gradient_update(
    const std::vector<std::vector<int>> &seqs,
    const std::vector<double> &rewards, double lr) {
  auto grads = reinforce_gradient(seqs, rewards);
  clip_by_norm(grads, config_.clip_norm);
  // Plain ascent without momentum so a zero gradient is a strict no-op.
  for (auto &[name, p] : named_params()) *p += lr * grads.at(name);
}

void GeneratorModel::apply_update(
    const std::map<std::string, Eigen::MatrixXd> &grads, double lr,
    double momentum_coef) {
  for (auto &[name, p] : named_params()) {
    auto it = velocity_.find(name);
    if (it == velocity_.end())
      it = velocity_.emplace(name, Eigen::MatrixXd::Zero(p->rows(), p->cols()))
               .first;
    it->second = momentum_coef * it->second - lr * grads.at(name);
    *p += it->second;
  }
}

TokenSequence GeneratorModel::sample_one(util::Rng &rng,
                                         double temperature) const {
  if (temperature < 0.0)
    throw std::invalid_argument("generator: negative temperature");
  const int v = tokenizer_.size();
  TokenSequence out;
  Eigen::MatrixXd hp = Eigen::MatrixXd::Zero(1, config_.hidden);
  int x_id = Tokenizer::kBos;
  for (int t = 0; t < config_.max_len; ++t) {
    Eigen::MatrixXd x = emb_.row(x_id);
    Eigen::MatrixXd z = sigmoid((x * wz_ + hp * uz_).rowwise() + bz_.row(0));
    Eigen::MatrixXd r = sigmoid((x * wr_ + hp * ur_).rowwise() + br_.row(0));
    Eigen::MatrixXd c =
        ((x * wh_ + (r.array() * hp.array()).matrix() * uh_).rowwise() +
         bh_.row(0))
            .array()
            .tanh();
    hp = ((1.0 - z.array()) * hp.array() + z.array() * c.array()).matrix();
    Eigen::MatrixXd logits = (hp * wo_).rowwise() + bo_.row(0);
    Eigen::MatrixXd logp1 = log_softmax(logits);

    // Sampling distribution is tempered and never emits padding or the
    // start marker; stored log-probs stay at temperature 1 over the full
    // vocabulary so a teacher-forced recompute reproduces them exactly.
    int pick;
    if (temperature < 1e-6) {
      pick = Tokenizer::kEos;
      double best = -std::numeric_limits<double>::infinity();
      for (int i = 0; i < v; ++i) {
        if (i == Tokenizer::kPad || i == Tokenizer::kBos) continue;
        if (logits(0, i) > best) {
          best = logits(0, i);
          pick = i;
        }
      }
    } else {
      std::vector<int> allowed;
      allowed.reserve(static_cast<size_t>(v));
      double m = -std::numeric_limits<double>::infinity();
      for (int i = 0; i < v; ++i) {
        if (i == Tokenizer::kPad || i == Tokenizer::kBos) continue;
        allowed.push_back(i);
        m = std::max(m, logits(0, i) / temperature);
      }
      std::vector<double> w(allowed.size());
      double total = 0.0;
      for (size_t k = 0; k < allowed.size(); ++k) {
        w[k] = std::exp(logits(0, allowed[k]) / temperature - m);
        total += w[k];
      }
      pick = allowed[static_cast<size_t>(rng.categorical(w, total))];
    }
    out.tokens.push_back(pick);
    out.log_probs.push_back(logp1(0, pick));
    if (pick == Tokenizer::kEos) {
      out.terminated = true;
      break;
    }
    x_id = pick;
  }
  return out;
}

std::vector<TokenSequence> GeneratorModel::sample(int n, double temperature,
                                                  uint64_t seed) const {
  if (n < 0) throw std::invalid_argument("generator: negative sample count");
  util::Rng root(seed);
  std::vector<util::Rng> streams;
  streams.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    streams.push_back(root.fork(static_cast<uint64_t>(i)));
  std::vector<TokenSequence> out(static_cast<size_t>(n));
  util::parallel_for(static_cast<size_t>(n), [&](size_t i) {
    out[i] = sample_one(streams[i], temperature);
  });
  return out;
}

void GeneratorModel::save(const std::string &path,
                          const std::string &config_hash) const {
  TensorStore store;
  for (const auto &[name, p] : named_params()) store.put(name, *p);
  store.save(path);

  nlohmann::json meta;
  meta["kind"] = "generator";
  meta["vocabulary"] = tokenizer_.tokens();
  meta["config_hash"] = config_hash;
  meta["config"] = {{"embedding", config_.embedding},
                    {"hidden", config_.hidden},
                    {"max_len", config_.max_len},
                    {"lr", config_.lr},
                    {"momentum", config_.momentum},
                    {"clip_norm", config_.clip_norm},
                    {"batch", config_.batch},
                    {"epochs", config_.epochs},
                    {"holdout_fraction", config_.holdout_fraction}};
  util::write_file_atomic(path + ".json", meta.dump(2) + "\n");
}

GeneratorModel load_generator_checked(const std::string &path) {
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(util::read_file(path + ".json"));
  } catch (const nlohmann::json::exception &e) {
    throw std::runtime_error(path + ".json: " + e.what());
  }
  if (meta.value("kind", "") != "generator")
    throw std::runtime_error(path + ".json: not a generator checkpoint");
  GeneratorConfig config;
  const auto &c = meta.at("config");
  config.embedding = c.at("embedding").get<int>();
  config.hidden = c.at("hidden").get<int>();
  config.max_len = c.at("max_len").get<int>();
  config.lr = c.at("lr").get<double>();
  config.momentum = c.at("momentum").get<double>();
  config.clip_norm = c.at("clip_norm").get<double>();
  config.batch = c.at("batch").get<int>();
  config.epochs = c.at("epochs").get<int>();
  config.holdout_fraction = c.at("holdout_fraction").get<double>();
  Tokenizer tok = Tokenizer::from_tokens(
      meta.at("vocabulary").get<std::vector<std::string>>());

  util::Rng rng(0);
  GeneratorModel model(std::move(tok), config, rng);
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

GeneratorModel GeneratorModel::load(const std::string &path) {
  return load_generator_checked(path);
}

GeneratorModel pretrain_generator(const std::vector<std::string> &corpus,
                                  const GeneratorConfig &config, uint64_t seed,
                                  PretrainReport *report) {
  if (corpus.empty())
    throw std::invalid_argument("pretrain_generator: empty corpus");
  Tokenizer tok = Tokenizer::fit(corpus);
  util::Rng rng(seed);
  GeneratorModel model(std::move(tok), config, rng);

  std::vector<std::vector<int>> encoded;
  encoded.reserve(corpus.size());
  for (const auto &s : corpus)
    encoded.push_back(model.tokenizer().encode(s));

  std::vector<size_t> order(encoded.size());
  std::iota(order.begin(), order.end(), size_t{0});
  rng.shuffle(order);
  size_t holdout = 0;
  if (config.holdout_fraction > 0.0 && encoded.size() > 1) {
    holdout = static_cast<size_t>(
        std::ceil(config.holdout_fraction * static_cast<double>(order.size())));
    holdout = std::min(holdout, order.size() - 1);
  }
  std::vector<std::vector<int>> holdout_seqs;
  for (size_t i = order.size() - holdout; i < order.size(); ++i)
    holdout_seqs.push_back(encoded[order[i]]);
  std::vector<size_t> train(order.begin(), order.end() - holdout);

  const size_t batch =
      std::max<size_t>(1, static_cast<size_t>(config.batch));
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(train);
    double loss_sum = 0.0;
    size_t batches = 0;
    for (size_t start = 0; start < train.size(); start += batch) {
      std::vector<std::vector<int>> seqs;
      for (size_t i = start; i < std::min(start + batch, train.size()); ++i)
        seqs.push_back(encoded[train[i]]);
      loss_sum += model.train_batch(seqs);
      ++batches;
    }
    if (report) {
      report->train_loss.push_back(loss_sum /
                                   static_cast<double>(std::max<size_t>(
                                       1, batches)));
      if (!holdout_seqs.empty())
        report->holdout_loss.push_back(model.evaluate_loss(holdout_seqs));
    }
  }
  return model;
}

}  // namespace covgen::nn
