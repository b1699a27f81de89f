#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <optional>
#include <vector>

#include "coin/agent.hpp"
#include "coin/bar.hpp"
#include "coin/core.hpp"
#include "coin/leader_follower.hpp"
#include "coin/macrolearn.hpp"
#include "coin/rng.hpp"
#include "coin/sim/config.hpp"

namespace coin::sim {

struct RunResult {
  std::vector<double> world_reward_series;        // one entry per week
  std::vector<int> final_attendance;              // bar only
  GuessedEffectSetMap final_effect_sets;          // leader-follower only
  double optimal_world_reward = 0.0;              // for this run's environment

  friend bool operator==(const RunResult&, const RunResult&) = default;
};

struct AggregateStats {
  std::vector<double> mean;
  std::vector<double> stddev;
  std::vector<double> min;
  std::vector<double> max;
  std::optional<int> convergence_week;
};

namespace detail {

inline RunResult run_bar(const ExperimentConfig& cfg, Rng& rng) {
  const BarConfig bar = cfg.bar_config();
  std::vector<ValueTable> values(static_cast<std::size_t>(bar.num_agents),
                                 ValueTable::zeros(bar.num_nights));
  RunResult result;
  result.world_reward_series.reserve(static_cast<std::size_t>(cfg.weeks));
  result.optimal_world_reward = optimal_world_reward(bar);

  WeekState state(bar.num_agents, bar.num_nights);
  for (int week = 0; week < cfg.weeks; ++week) {
    const double temp = temperature(week, cfg.learner);
    std::vector<int> picks(static_cast<std::size_t>(bar.num_agents));
    for (int a = 0; a < bar.num_agents; ++a)
      picks[static_cast<std::size_t>(a)] =
          select_night(values[static_cast<std::size_t>(a)], temp, rng).index;
    state = WeekState::from_choices(picks, bar.num_nights);

    result.world_reward_series.push_back(world_reward(state, bar));

    for (int a = 0; a < bar.num_agents; ++a) {
      double reward = 0.0;
      switch (cfg.reward) {
        case RewardKind::ud: reward = reward_ud(a, state, bar); break;
        case RewardKind::g: reward = reward_g(a, state, bar); break;
        case RewardKind::wl: reward = reward_wl(a, state, bar); break;
      }
      // Team game sanity: with the G reward every agent sees the same value.
      assert(cfg.reward != RewardKind::g ||
             reward == result.world_reward_series.back());
      values[static_cast<std::size_t>(a)] =
          update(std::move(values[static_cast<std::size_t>(a)]),
                 NightChoice{picks[static_cast<std::size_t>(a)]}, reward,
                 cfg.learner.learning_rate);
    }
  }
  result.final_attendance =
      cfg.weeks > 0 ? attendance(state, bar.num_nights) : std::vector<int>();
  return result;
}

inline RunResult run_leader_follower(const ExperimentConfig& cfg, Rng& rng) {
  const LFConfig lf = cfg.lf_config();
  const RewardTensor tensor = cfg.tensor_kind == TensorKind::worst_case
                                  ? worst_case_tensor(lf.num_nights, lf.worst_case_penalty)
                                  : random_tensor(lf.num_nights, rng);
  GuessedEffectSetMap gset = init_effect_sets(cfg.effect_set_init, lf, rng);

  std::vector<ValueTable> values(static_cast<std::size_t>(lf.num_agents()),
                                 ValueTable::zeros(lf.num_nights));
  RunResult result;
  result.world_reward_series.reserve(static_cast<std::size_t>(cfg.weeks));
  result.optimal_world_reward = optimal_world_reward_lf(tensor, lf);
  AttendanceHistory history;

  for (int week = 0; week < cfg.weeks; ++week) {
    const double temp = temperature(week, cfg.learner);
    std::vector<int> picks(static_cast<std::size_t>(lf.num_agents()));
    for (int a = 0; a < lf.num_agents(); ++a)
      picks[static_cast<std::size_t>(a)] =
          select_night(values[static_cast<std::size_t>(a)], temp, rng).index;
    const WeekState attended =
        apply_dynamics(WeekState::from_choices(picks, lf.num_nights), lf);

    history.record(attended);
    const double week_reward = world_reward_lf(attended, tensor, lf);
    result.world_reward_series.push_back(week_reward);

    for (int a = 0; a < lf.num_agents(); ++a) {
      const double reward = cfg.reward == RewardKind::g
                                ? week_reward
                                : reward_wl_lf(a, attended, gset, tensor, lf);
      // Agents learn on their picked night; for followers the pick is
      // dynamically inert but the learner stays well-defined.
      values[static_cast<std::size_t>(a)] =
          update(std::move(values[static_cast<std::size_t>(a)]),
                 NightChoice{picks[static_cast<std::size_t>(a)]}, reward,
                 cfg.learner.learning_rate);
    }

    if (cfg.macrolearning_week && week == *cfg.macrolearning_week) {
      gset = reassign_effect_sets(estimate_correlations(history));
      // The private utilities just changed, so the old reward estimates no
      // longer describe anything the agents will observe; restart learning.
      for (ValueTable& v : values) v = ValueTable::zeros(lf.num_nights);
    }
  }
  result.final_effect_sets = std::move(gset);
  return result;
}

}  // namespace detail

// One seeded simulation run. The run RNG derives from (seed, run_index), so
// identical inputs give bit-identical results and runs are independent of
// scheduling order.
inline RunResult run_simulation(const ExperimentConfig& cfg, int run_index) {
  cfg.validate();
  Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(run_index)));
  return cfg.environment == Environment::bar ? detail::run_bar(cfg, rng)
                                             : detail::run_leader_follower(cfg, rng);
}

// Per-week statistics across runs plus the convergence week: the first week
// from which the run-mean world reward stays at or above
// threshold_fraction * optimum for the rest of the series.
inline AggregateStats aggregate(const std::vector<RunResult>& results, double optimum,
                                double threshold_fraction) {
  if (results.empty()) throw std::domain_error("aggregate: no runs");
  const std::size_t weeks = results.front().world_reward_series.size();
  for (const RunResult& r : results)
    if (r.world_reward_series.size() != weeks)
      throw std::domain_error("aggregate: unequal series lengths");

  AggregateStats stats;
  stats.mean.resize(weeks);
  stats.stddev.resize(weeks);
  stats.min.resize(weeks);
  stats.max.resize(weeks);
  std::vector<double> values(results.size());
  for (std::size_t w = 0; w < weeks; ++w) {
    for (std::size_t i = 0; i < results.size(); ++i)
      values[i] = results[i].world_reward_series[w];
    // Sum in sorted order so aggregates are independent of run scheduling.
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / static_cast<double>(results.size());
    double sq = 0.0;
    for (double v : values) {
      const double d = v - mean;
      sq += d * d;
    }
    stats.mean[w] = mean;
    stats.stddev[w] = std::sqrt(sq / static_cast<double>(results.size()));
    stats.min[w] = values.front();
    stats.max[w] = values.back();
  }

  const double threshold = threshold_fraction * optimum;
  std::optional<int> conv;
  for (std::size_t w = weeks; w-- > 0;) {
    if (stats.mean[w] >= threshold)
      conv = static_cast<int>(w);
    else
      break;
  }
  stats.convergence_week = conv;
  return stats;
}

// Exact optimum of the configured environment. For random tensors the
// optimum varies per run; the mean of the per-run optima is reported.
inline double known_optimum(const ExperimentConfig& cfg,
                            const std::vector<RunResult>& results) {
  if (cfg.environment == Environment::bar) return optimal_world_reward(cfg.bar_config());
  if (cfg.tensor_kind == TensorKind::worst_case)
    return optimal_world_reward_lf(worst_case_tensor(cfg.num_nights, cfg.worst_case_penalty),
                                   cfg.lf_config());
  double sum = 0.0;
  for (const RunResult& r : results) sum += r.optimal_world_reward;
  return results.empty() ? 0.0 : sum / static_cast<double>(results.size());
}

}  // namespace coin::sim
