//
// Project covgen - Copyright 2026 covgen developers.
// SPDX-License-Identifier: Apache-2.0
//

#include "covgen/rl/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace covgen::rl {

namespace {

// True when a dominates b: never worse, strictly better at least once.
bool dominates(const std::vector<double> &a, const std::vector<double> &b) {
  bool strict = false;
  for (size_t m = 0; m < a.size(); ++m) {
    if (a[m] < b[m]) return false;
    if (a[m] > b[m]) strict = true;
  }
  return strict;
}

}  // namespace

ParetoRanking non_dominated_sort(
    const std::vector<std::vector<double>> &objectives) {
  const int n = static_cast<int>(objectives.size());
  if (n == 0)
    throw std::invalid_argument("non_dominated_sort: empty population");
  const size_t m = objectives.front().size();
  for (const auto &row : objectives)
    if (row.size() != m)
      throw std::invalid_argument("non_dominated_sort: ragged objective rows");

  std::vector<int> domination_count(static_cast<size_t>(n), 0);
  std::vector<std::vector<int>> dominated(static_cast<size_t>(n));
  ParetoRanking ranking;
  ranking.front_of.assign(static_cast<size_t>(n), -1);

  std::vector<int> current;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (dominates(objectives[i], objectives[j])) {
        dominated[i].push_back(j);
        ++domination_count[j];
      } else if (dominates(objectives[j], objectives[i])) {
        dominated[j].push_back(i);
        ++domination_count[i];
      }
    }
  }
  for (int i = 0; i < n; ++i)
    if (domination_count[i] == 0) current.push_back(i);

  int front_index = 0;
  while (!current.empty()) {
    std::vector<int> next;
    for (int i : current) {
      ranking.front_of[i] = front_index;
      for (int j : dominated[i])
        if (--domination_count[j] == 0) next.push_back(j);
    }
    std::sort(next.begin(), next.end());
    ranking.fronts.push_back(std::move(current));
    current = std::move(next);
    ++front_index;
  }

  ranking.crowding.assign(static_cast<size_t>(n), 0.0);
  for (const auto &front : ranking.fronts) {
    const std::vector<double> cd = crowding_distance(objectives, front);
    for (size_t k = 0; k < front.size(); ++k)
      ranking.crowding[static_cast<size_t>(front[k])] = cd[k];
  }
  return ranking;
}

std::vector<double> crowding_distance(
    const std::vector<std::vector<double>> &objectives,
    const std::vector<int> &front) {
  const size_t f = front.size();
  std::vector<double> cd(f, 0.0);
  if (f == 0) return cd;
  const double inf = std::numeric_limits<double>::infinity();
  if (f <= 2) {  // every member is a boundary of the front
    std::fill(cd.begin(), cd.end(), inf);
    return cd;
  }
  const size_t m = objectives[static_cast<size_t>(front[0])].size();

  std::vector<size_t> order(f);
  for (size_t obj = 0; obj < m; ++obj) {
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return objectives[static_cast<size_t>(front[a])][obj] <
             objectives[static_cast<size_t>(front[b])][obj];
    });
    const double lo = objectives[static_cast<size_t>(front[order.front()])][obj];
    const double hi = objectives[static_cast<size_t>(front[order.back()])][obj];
    if (hi == lo) continue;  // degenerate objective carries no signal
    cd[order.front()] = inf;
    cd[order.back()] = inf;
    for (size_t k = 1; k + 1 < f; ++k) {
      if (std::isinf(cd[order[k]])) continue;
      const double above = objectives[static_cast<size_t>(front[order[k + 1]])][obj];
      const double below = objectives[static_cast<size_t>(front[order[k - 1]])][obj];
      cd[order[k]] += (above - below) / (hi - lo);
    }
  }
  return cd;
}

std::vector<int> select_episodes(const ParetoRanking &ranking,
                                 double fraction,
                                 const std::vector<int> *ids) {
  const int n = static_cast<int>(ranking.front_of.size());
  if (ids && static_cast<int>(ids->size()) != n)
    throw std::invalid_argument("select_episodes: id count mismatch");
  const int k = std::min(
      n, static_cast<int>(std::ceil(fraction * static_cast<double>(n))));
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto sa = static_cast<size_t>(a);
    const auto sb = static_cast<size_t>(b);
    if (ranking.front_of[sa] != ranking.front_of[sb])
      return ranking.front_of[sa] < ranking.front_of[sb];
    if (ranking.crowding[sa] != ranking.crowding[sb])
      return ranking.crowding[sa] > ranking.crowding[sb];
    return ids ? (*ids)[sa] < (*ids)[sb] : a < b;
  });
  order.resize(static_cast<size_t>(std::max(0, k)));
  return order;
}

}  // namespace covgen::rl
