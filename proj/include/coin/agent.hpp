#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "coin/core.hpp"
#include "coin/rng.hpp"

namespace coin {

// One estimated reward per night.
struct ValueTable {
  std::vector<double> estimates;

  static ValueTable zeros(int num_nights) {
    return ValueTable{std::vector<double>(static_cast<std::size_t>(num_nights), 0.0)};
  }
};

struct LearnerParams {
  double learning_rate = 0.1;
  double temp_initial = 5.0;
  double temp_decay_time = 500.0;  // weeks
  double temp_floor = 0.01;
};

// Exponentially decaying Boltzmann temperature. The schedule anneals from
// temp_initial down to temp_floor over exactly temp_decay_time weeks and
// stays at the floor afterwards.
inline double temperature(int week, const LearnerParams& p) {
  if (p.temp_initial <= p.temp_floor) return p.temp_floor;
  const double rate = std::log(p.temp_initial / p.temp_floor) / p.temp_decay_time;
  const double t = p.temp_initial * std::exp(-rate * static_cast<double>(week));
  return std::max(p.temp_floor, t);
}

// Boltzmann pick over the value table. Max-shifted for overflow safety;
// identical to exp(v_k/T)/sum_m exp(v_m/T).
inline NightChoice select_night(const ValueTable& v, double temp, Rng& rng) {
  if (temp <= 0.0) throw std::domain_error("select_night: temperature must be positive");
  double vmax = -std::numeric_limits<double>::infinity();
  for (double e : v.estimates) {
    if (!std::isfinite(e)) throw std::domain_error("select_night: non-finite estimate");
    vmax = std::max(vmax, e);
  }
  std::vector<double> w(v.estimates.size());
  double total = 0.0;
  for (std::size_t k = 0; k < v.estimates.size(); ++k) {
    w[k] = std::exp((v.estimates[k] - vmax) / temp);
    total += w[k];
  }
  const double u = uniform01(rng) * total;
  double acc = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    acc += w[k];
    if (u < acc) return NightChoice{static_cast<int>(k)};
  }
  return NightChoice{static_cast<int>(w.size()) - 1};  // rounding fallback
}

// Move the picked night's estimate a fraction lr toward the observed reward.
inline ValueTable update(ValueTable v, NightChoice night, double reward, double lr) {
  if (!std::isfinite(reward)) throw std::domain_error("update: non-finite reward");
  if (lr <= 0.0 || lr > 1.0) throw std::domain_error("update: learning rate out of (0,1]");
  double& e = v.estimates.at(static_cast<std::size_t>(night.index));
  e += lr * (reward - e);
  return v;
}

}  // namespace coin
