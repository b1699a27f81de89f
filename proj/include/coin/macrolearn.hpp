#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "coin/leader_follower.hpp"

namespace coin {

// Attended night indices, one row per observed week.
struct AttendanceHistory {
  int num_agents = 0;
  std::vector<std::vector<int>> weeks;  // weeks_observed x num_agents

  void record(const WeekState& attended) {
    if (num_agents == 0) num_agents = attended.num_nodes();
    std::vector<int> row(static_cast<std::size_t>(num_agents));
    for (int a = 0; a < num_agents; ++a)
      row[static_cast<std::size_t>(a)] = attended.choice(a);
    weeks.push_back(std::move(row));
  }
};

using CorrelationMatrix = std::vector<std::vector<double>>;

// Pearson correlation of the agents' attended-night series. Zero-variance
// series correlate 0 with everything; the diagonal is 1 by convention.
inline CorrelationMatrix estimate_correlations(const AttendanceHistory& h) {
  const int n = h.num_agents;
  const int t = static_cast<int>(h.weeks.size());
  if (t < 2) throw std::domain_error("estimate_correlations: need at least 2 weeks");

  std::vector<double> mean(static_cast<std::size_t>(n), 0.0);
  for (const auto& row : h.weeks)
    for (int a = 0; a < n; ++a) mean[static_cast<std::size_t>(a)] += row[static_cast<std::size_t>(a)];
  for (double& m : mean) m /= t;

  std::vector<double> var(static_cast<std::size_t>(n), 0.0);
  for (const auto& row : h.weeks)
    for (int a = 0; a < n; ++a) {
      const double d = row[static_cast<std::size_t>(a)] - mean[static_cast<std::size_t>(a)];
      var[static_cast<std::size_t>(a)] += d * d;
    }

  CorrelationMatrix corr(static_cast<std::size_t>(n),
                         std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i) {
    corr[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1.0;
    for (int j = i + 1; j < n; ++j) {
      double cov = 0.0;
      for (const auto& row : h.weeks)
        cov += (row[static_cast<std::size_t>(i)] - mean[static_cast<std::size_t>(i)]) *
               (row[static_cast<std::size_t>(j)] - mean[static_cast<std::size_t>(j)]);
      double r = 0.0;
      const double denom = var[static_cast<std::size_t>(i)] * var[static_cast<std::size_t>(j)];
      if (denom > 0.0) r = cov / std::sqrt(denom);
      corr[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = r;
      corr[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = r;
    }
  }
  return corr;
}

// New guessed effect set for every agent: itself plus its two most
// correlated peers. Ties break toward the lowest agent index.
inline GuessedEffectSetMap reassign_effect_sets(const CorrelationMatrix& corr) {
  const int n = static_cast<int>(corr.size());
  if (n < 3) throw std::domain_error("reassign_effect_sets: need at least 3 agents");
  GuessedEffectSetMap gset(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    int best1 = -1, best2 = -1;
    for (int j = 0; j < n; ++j) {
      if (j == a) continue;
      const double c = corr[static_cast<std::size_t>(a)][static_cast<std::size_t>(j)];
      if (best1 < 0 || c > corr[static_cast<std::size_t>(a)][static_cast<std::size_t>(best1)]) {
        best2 = best1;
        best1 = j;
      } else if (best2 < 0 ||
                 c > corr[static_cast<std::size_t>(a)][static_cast<std::size_t>(best2)]) {
        best2 = j;
      }
    }
    gset[static_cast<std::size_t>(a)] = {a, best1, best2};
  }
  return gset;
}

}  // namespace coin
