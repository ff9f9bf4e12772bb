//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef COVGEN_RL_PARETO_HPP
#define COVGEN_RL_PARETO_HPP

#include <vector>

namespace covgen::rl {

// Ranking of a population over maximized objective rows.
struct ParetoRanking {
  std::vector<std::vector<int>> fronts;  // front 0 = non-dominated
  std::vector<int> front_of;             // per solution
  std::vector<double> crowding;          // +inf sentinel at front boundaries
};

// Fast non-dominated sorting. Dominance: no objective worse, at least one
// strictly better. Rows must be rectangular; throws on an empty population.
ParetoRanking non_dominated_sort(
    const std::vector<std::vector<double>> &objectives);

// Crowding distance of one front: per objective, boundary solutions of the
// value-sorted order get +inf, interior ones accumulate the neighbor gap
// normalized by the objective's range, and a zero-range objective
// contributes nothing.
std::vector<double> crowding_distance(
    const std::vector<std::vector<double>> &objectives,
    const std::vector<int> &front);

// Indices of the top ceil(fraction * n) solutions ordered by front rank
// ascending, crowding descending, stable id ascending. Ties break on the
// solutions' own ids when given (making the choice independent of list
// order), otherwise on list position.
std::vector<int> select_episodes(const ParetoRanking &ranking, double fraction,
                                 const std::vector<int> *ids = nullptr);

}  // namespace covgen::rl

#endif  // COVGEN_RL_PARETO_HPP
