//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#include "covgen/rl/train.hpp"

#include <algorithm>
#include <stdexcept>

#include "covgen/chem/smiles.hpp"
#include "covgen/rl/pareto.hpp"
#include "covgen/util/parallel.hpp"
#include "covgen/util/rng.hpp"

namespace covgen::rl {

std::vector<RlIterationReport> rl_train(nn::GeneratorModel &model,
                                        const score::ScorerRegistry &registry,
                                        const RawScoreFn &raw_scores,
                                        const RlConfig &config, uint64_t seed,
                                        const CheckpointFn &checkpoint) {
  if (config.batch < 1 || config.iterations < 0)
    throw std::invalid_argument("rl_train: bad batch or iteration count");
  if (config.selection_fraction <= 0.0 || config.selection_fraction > 1.0)
    throw std::invalid_argument("rl_train: selection fraction outside (0,1]");
  if (registry.empty())
    throw std::invalid_argument("rl_train: empty scorer registry");
  if (!raw_scores)
    throw std::invalid_argument("rl_train: missing raw score callback");

  // Only positively weighted scorers shape the dominance ranking, so adding
  // a zero-weight scorer cannot change the training trajectory.
  std::vector<std::string> ranked;
  for (const auto &s : registry.scorers())
    if (s.weight > 0.0) ranked.push_back(s.name);
  if (ranked.empty())
    throw std::invalid_argument("rl_train: no positively weighted scorer");

  util::Rng root(seed);
  std::vector<RlIterationReport> reports;
  reports.reserve(static_cast<size_t>(config.iterations));

  for (int iter = 1; iter <= config.iterations; ++iter) {
    const uint64_t sample_seed = root.next();
    const std::vector<nn::TokenSequence> batch = model.sample(
        config.batch, config.temperature, sample_seed);
    const size_t n = batch.size();

    std::vector<std::string> smiles(n);
    std::vector<score::ScoreVector> scored(n);
    std::vector<std::string> failures(n);
    util::parallel_for(n, [&](size_t i) {
      smiles[i] = model.tokenizer().decode(batch[i].tokens);
      score::ScoreVector v;
      v.molecule_id = "it" + std::to_string(iter) + "-" + std::to_string(i);
      try {
        const chem::MolecularGraph mol = chem::parse_smiles(smiles[i]);
        std::map<std::string, double> raws = raw_scores(mol, smiles[i]);
        for (const auto &s : registry.scorers())
          if (s.kind == score::ScorerKind::Validity)
            raws[s.name] = 1.0;
        for (const auto &[name, raw] : raws) v.values[name] = {raw, 0.0};
        registry.evaluate(v);
      } catch (const chem::SmilesError &) {
        v.valid = false;
        registry.evaluate(v);
      } catch (const std::exception &e) {
        failures[i] = e.what();
      }
      scored[i] = std::move(v);
    });
    for (size_t i = 0; i < n; ++i)
      if (!failures[i].empty())
        throw std::runtime_error(
            "rl_train: iteration " + std::to_string(iter) + ", molecule '" +
            smiles[i] + "': " + failures[i]);

    std::vector<std::vector<double>> objectives(n);
    for (size_t i = 0; i < n; ++i) {
      objectives[i].reserve(ranked.size());
      for (const auto &name : ranked)
        objectives[i].push_back(scored[i].values.at(name).clipped);
    }
    const ParetoRanking ranking = non_dominated_sort(objectives);
    const std::vector<int> selected =
        select_episodes(ranking, config.selection_fraction);

    std::vector<std::vector<int>> episode_ids;
    std::vector<double> episode_rewards;
    episode_ids.reserve(selected.size());
    episode_rewards.reserve(selected.size());
    RlIterationReport report;
    report.iteration = iter;
    report.selected_count = static_cast<int>(selected.size());
    for (const auto &name : ranked) report.objective_means[name] = 0.0;

    double reward_sum = 0.0;
    int valid_count = 0;
    int desirable_count = 0;
    std::vector<double> rewards(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
      rewards[i] = score::reward(scored[i], registry);
      reward_sum += rewards[i];
      if (scored[i].valid) ++valid_count;
      if (scored[i].desirable) ++desirable_count;
      for (size_t k = 0; k < ranked.size(); ++k)
        report.objective_means[ranked[k]] += objectives[i][k];
    }
    for (int idx : selected) {
      std::vector<int> ids{nn::Tokenizer::kBos};
      const auto &tk = batch[static_cast<size_t>(idx)].tokens;
      ids.insert(ids.end(), tk.begin(), tk.end());
      episode_ids.push_back(std::move(ids));
      episode_rewards.push_back(rewards[static_cast<size_t>(idx)]);
    }
    model.policy_gradient_update(episode_ids, episode_rewards, config.lr);

    const double dn = static_cast<double>(n);
    report.mean_reward = reward_sum / dn;
    report.fraction_valid = static_cast<double>(valid_count) / dn;
    report.fraction_desirable = static_cast<double>(desirable_count) / dn;
    for (auto &[name, total] : report.objective_means) total /= dn;
    reports.push_back(std::move(report));

    if (checkpoint && config.checkpoint_every > 0 &&
        (iter % config.checkpoint_every == 0 || iter == config.iterations))
      checkpoint(iter, model);
  }
  return reports;
}

}  // namespace covgen::rl
