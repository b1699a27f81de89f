#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "coin/core.hpp"

namespace coin {

// Modified El Farol bar problem: K nights per week, attendance-shaped
// per-night reward gamma_k(y) = alpha_k * y * exp(-y/c).
struct BarConfig {
  int num_agents = 168;
  int num_nights = 7;
  double capacity = 6.0;            // c
  std::vector<double> alpha;        // per-night weights, size num_nights

  // alpha = [1, 1, ..., 1]
  static std::vector<double> alpha_uniform(int num_nights) {
    return std::vector<double>(static_cast<std::size_t>(num_nights), 1.0);
  }

  // All weight on the middle night; [0 0 0 7 0 0 0] for K = 7.
  static std::vector<double> alpha_single_night(int num_nights) {
    std::vector<double> a(static_cast<std::size_t>(num_nights), 0.0);
    a[static_cast<std::size_t>(num_nights / 2)] = static_cast<double>(num_nights);
    return a;
  }

  static BarConfig defaults() {
    BarConfig cfg;
    cfg.alpha = alpha_uniform(cfg.num_nights);
    return cfg;
  }
};

inline double gamma_curve(double y, double alpha_k, double c) {
  if (c <= 0.0) throw std::domain_error("gamma_curve: capacity must be positive");
  return alpha_k * y * std::exp(-y / c);
}

// Per-night attendance; clamped nodes attend nothing.
inline std::vector<int> attendance(const WeekState& s, int num_nights) {
  std::vector<int> x(static_cast<std::size_t>(num_nights), 0);
  for (int node = 0; node < s.num_nodes(); ++node) {
    if (!s.clamped(node)) ++x[static_cast<std::size_t>(s.choice(node))];
  }
  return x;
}

// World reward R = sum over nights of gamma_k(x_k).
inline double world_reward(const WeekState& s, const BarConfig& cfg) {
  const std::vector<int> x = attendance(s, cfg.num_nights);
  double r = 0.0;
  for (int k = 0; k < cfg.num_nights; ++k)
    r += gamma_curve(x[static_cast<std::size_t>(k)],
                     cfg.alpha[static_cast<std::size_t>(k)], cfg.capacity);
  return r;
}

// Uniform Division: the night's reward split evenly among its attendees.
inline double reward_ud(int node, const WeekState& s, const BarConfig& cfg) {
  if (s.clamped(node)) throw std::domain_error("reward_ud: node is clamped");
  const int d = s.choice(node);
  const int x_d = attendance(s, cfg.num_nights)[static_cast<std::size_t>(d)];
  return gamma_curve(x_d, cfg.alpha[static_cast<std::size_t>(d)], cfg.capacity) / x_d;
}

// Global (team game): every node receives the world reward.
inline double reward_g(int /*node*/, const WeekState& s, const BarConfig& cfg) {
  return world_reward(s, cfg);
}

// Wonderful Life: R(s) - R(s with this node clamped). Evaluated through the
// clamping operator; algebraically equal to gamma_d(x_d) - gamma_d(x_d - 1).
inline double reward_wl(int node, const WeekState& s, const BarConfig& cfg) {
  if (s.clamped(node)) throw std::domain_error("reward_wl: node is clamped");
  return world_reward(s, cfg) - world_reward(clamp_week(s, {node}), cfg);
}

// Exact maximum of R over all assignments of num_agents to nights, by
// dynamic programming over (night, agents remaining).
inline double optimal_world_reward(const BarConfig& cfg) {
  const int n = cfg.num_agents;
  const int k = cfg.num_nights;
  // best[m] = highest total reward when m agents are spread over the nights
  // considered so far; every agent must attend some night, so only m = 0 is
  // feasible before the first night.
  std::vector<double> best(static_cast<std::size_t>(n) + 1,
                           -std::numeric_limits<double>::infinity());
  best[0] = 0.0;
  for (int night = 0; night < k; ++night) {
    std::vector<double> next(static_cast<std::size_t>(n) + 1,
                             -std::numeric_limits<double>::infinity());
    for (int used = 0; used <= n; ++used) {
      for (int here = 0; here <= used; ++here) {
        const double v = best[static_cast<std::size_t>(used - here)] +
                         gamma_curve(here, cfg.alpha[static_cast<std::size_t>(night)],
                                     cfg.capacity);
        if (v > next[static_cast<std::size_t>(used)])
          next[static_cast<std::size_t>(used)] = v;
      }
    }
    best = std::move(next);
  }
  return best[static_cast<std::size_t>(n)];
}

}  // namespace coin
