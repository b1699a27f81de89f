#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "coin/bar.hpp"
#include "coin/core.hpp"
#include "coin/rng.hpp"

namespace coin {

// How single-node counterfactuals are drawn: either every one of the node's
// K actions exactly once, or a fixed number of uniform random draws.
struct CounterfactualMeasure {
  enum class Kind { exhaustive, random_sample };
  Kind kind = Kind::exhaustive;
  int sample_count = 0;  // random_sample only

  static CounterfactualMeasure exhaustive() { return {}; }
  static CounterfactualMeasure random(int samples) {
    return {Kind::random_sample, samples};
  }
};

// Single-week utility, either the world reward R or a personal reward.
using UtilityEvaluator = std::function<double(const WeekState&)>;

// Personal utility that may differ per node (e.g. per-node WL rewards).
using NodeUtility = std::function<double(int node, const WeekState&)>;

namespace detail {

inline int measure_size(const CounterfactualMeasure& mu, int num_nights) {
  if (mu.kind == CounterfactualMeasure::Kind::exhaustive) return num_nights;
  if (mu.sample_count <= 0)
    throw std::domain_error("CounterfactualMeasure: empty measure");
  return mu.sample_count;
}

inline int draw_action(const CounterfactualMeasure& mu, int i, int num_nights,
                       Rng* rng) {
  if (mu.kind == CounterfactualMeasure::Kind::exhaustive) return i;
  if (rng == nullptr)
    throw std::invalid_argument("random counterfactual measure needs an rng");
  return uniform_int(*rng, num_nights);
}

template <typename T>
inline int sign(T x) {
  return (x > T{0}) - (x < T{0});
}

}  // namespace detail

// Eq.-1-style intelligence: the fraction of the node's alternative actions
// that would not improve u. Theta(0) = 1, so ties and the actual action
// itself count as "not better"; the result lies in [1/M, 1].
inline double intelligence(const UtilityEvaluator& u, const WeekState& s, int node,
                           const CounterfactualMeasure& mu, Rng* rng = nullptr) {
  if (node < 0 || node >= s.num_nodes())
    throw std::out_of_range("intelligence: node out of range");
  if (s.num_nodes() > 0)
    for (int n = 0; n < s.num_nodes(); ++n)
      if (s.clamped(n)) throw std::domain_error("intelligence: clamped state");
  const int m = detail::measure_size(mu, s.num_nights());
  const double base = u(s);
  int not_better = 0;
  for (int i = 0; i < m; ++i) {
    const int a = detail::draw_action(mu, i, s.num_nights(), rng);
    if (u(s.with_choice(node, a)) <= base) ++not_better;
  }
  return static_cast<double>(not_better) / m;
}

// Empirical degree of factoredness: the fraction of (state, node,
// counterfactual-action) triples on which sgn(delta g) = sgn(delta G),
// with three-valued sgn. The actual action is excluded (both deltas are
// trivially zero there).
inline double factoredness_degree(const UtilityEvaluator& world, const NodeUtility& g,
                                  std::span<const WeekState> states,
                                  const CounterfactualMeasure& mu, Rng* rng = nullptr) {
  if (states.empty()) throw std::domain_error("factoredness_degree: empty sample");
  long long agree = 0, total = 0;
  for (const WeekState& s : states) {
    const double g_world = world(s);
    const int k = s.num_nights();
    for (int node = 0; node < s.num_nodes(); ++node) {
      const double g_here = g(node, s);
      const int actual = s.choice(node);
      const int m = detail::measure_size(mu, k);
      for (int i = 0; i < m; ++i) {
        int a;
        if (mu.kind == CounterfactualMeasure::Kind::exhaustive) {
          a = i;
          if (a == actual) continue;
        } else {
          if (rng == nullptr)
            throw std::invalid_argument("random counterfactual measure needs an rng");
          a = uniform_int(*rng, k - 1);
          if (a >= actual) ++a;
        }
        const WeekState cf = s.with_choice(node, a);
        const int sg = detail::sign(g_here - g(node, cf));
        const int sw = detail::sign(g_world - world(cf));
        ++total;
        if (sg == sw) ++agree;
      }
    }
  }
  if (total == 0) throw std::domain_error("factoredness_degree: empty sample");
  return static_cast<double>(agree) / static_cast<double>(total);
}

inline double factoredness_degree(const UtilityEvaluator& world,
                                  const UtilityEvaluator& g,
                                  std::span<const WeekState> states,
                                  const CounterfactualMeasure& mu, Rng* rng = nullptr) {
  return factoredness_degree(
      world, [&g](int, const WeekState& s) { return g(s); }, states, mu, rng);
}

// Eq.-2-style learnability: mean |change in u| when only the probe node's
// choice is resampled, divided by mean |change in u| when only the other
// nodes' choices are resampled. Zero denominator reports +infinity
// (perfectly learnable).
inline double learnability(const UtilityEvaluator& u, const WeekState& s, int node,
                           const CounterfactualMeasure& mu, Rng* rng = nullptr) {
  const int n = s.num_nodes();
  if (n < 2) throw std::domain_error("learnability: need at least 2 nodes");
  const int k = s.num_nights();
  const double base = u(s);

  double signal = 0.0;
  const int m = detail::measure_size(mu, k);
  for (int i = 0; i < m; ++i) {
    const int a = detail::draw_action(mu, i, k, rng);
    signal += std::abs(u(s.with_choice(node, a)) - base);
  }
  signal /= m;

  double noise = 0.0;
  if (mu.kind == CounterfactualMeasure::Kind::exhaustive) {
    // Enumerate every joint assignment of the other nodes (K^(N-1) states);
    // only feasible for small instances.
    long long count = 0;
    std::vector<int> odo(static_cast<std::size_t>(n - 1), 0);
    for (;;) {
      WeekState cf = s;
      int slot = 0;
      for (int other = 0; other < n; ++other) {
        if (other == node) continue;
        cf = cf.with_choice(other, odo[static_cast<std::size_t>(slot++)]);
      }
      noise += std::abs(u(cf) - base);
      ++count;
      int pos = 0;
      while (pos < n - 1 && ++odo[static_cast<std::size_t>(pos)] == k) {
        odo[static_cast<std::size_t>(pos)] = 0;
        ++pos;
      }
      if (pos == n - 1) break;
    }
    noise /= static_cast<double>(count);
  } else {
    if (rng == nullptr)
      throw std::invalid_argument("random counterfactual measure needs an rng");
    for (int i = 0; i < mu.sample_count; ++i) {
      WeekState cf = s;
      for (int other = 0; other < n; ++other) {
        if (other == node) continue;
        cf = cf.with_choice(other, uniform_int(*rng, k));
      }
      noise += std::abs(u(cf) - base);
    }
    noise /= mu.sample_count;
  }

  if (noise == 0.0) return std::numeric_limits<double>::infinity();
  return signal / noise;
}

// Real-valued N x K unary-embedding matrix; the domain on which utilities
// are extended off the hypercube vertices for differential diagnostics.
using Embedding = std::vector<std::vector<double>>;

using EmbeddingEvaluator = std::function<double(const Embedding&)>;

inline Embedding to_embedding(const WeekState& s) {
  Embedding e(static_cast<std::size_t>(s.num_nodes()));
  for (int node = 0; node < s.num_nodes(); ++node)
    e[static_cast<std::size_t>(node)] = s.unary(node);
  return e;
}

// Bar world reward extended to real embeddings: x_k = sum of column k.
inline EmbeddingEvaluator bar_world_reward_embedding(const BarConfig& cfg) {
  return [cfg](const Embedding& e) {
    double r = 0.0;
    for (int k = 0; k < cfg.num_nights; ++k) {
      double x = 0.0;
      for (const auto& row : e) x += row[static_cast<std::size_t>(k)];
      r += gamma_curve(x, cfg.alpha[static_cast<std::size_t>(k)], cfg.capacity);
    }
    return r;
  };
}

// Bar WL reward for one node on embeddings: G(e) - G(e with the node's row
// clamped to zero).
inline EmbeddingEvaluator bar_wl_embedding(const BarConfig& cfg, int node) {
  EmbeddingEvaluator g = bar_world_reward_embedding(cfg);
  return [g, node](const Embedding& e) {
    Embedding clamped = e;
    for (double& v : clamped.at(static_cast<std::size_t>(node))) v = 0.0;
    return g(e) - g(clamped);
  };
}

// Eq.-3-style differential learnability: ratio of gradient norms, with
// partials taken by central finite differences of step h on the embedding.
inline double differential_learnability(const EmbeddingEvaluator& u,
                                        const WeekState& s, int node,
                                        double h = 1e-4) {
  if (h <= 0.0) throw std::domain_error("differential_learnability: step must be positive");
  Embedding e = to_embedding(s);
  double own_sq = 0.0, other_sq = 0.0;
  for (int n = 0; n < s.num_nodes(); ++n) {
    for (int k = 0; k < s.num_nights(); ++k) {
      double& cell = e[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
      const double saved = cell;
      cell = saved + h;
      const double up = u(e);
      cell = saved - h;
      const double down = u(e);
      cell = saved;
      const double partial = (up - down) / (2.0 * h);
      (n == node ? own_sq : other_sq) += partial * partial;
    }
  }
  if (other_sq == 0.0) return std::numeric_limits<double>::infinity();
  return std::sqrt(own_sq) / std::sqrt(other_sq);
}

// Closed-form WL/G differential-learnability ratio for the seven-night bar
// at uniform attendance N/7:
//   | sqrt(7) (N - 7c) / ((N - 7c)(1 - e^(1/c)) + 7 e^(1/c)) |
inline double bar_closed_form_ratio(int num_agents, double c) {
  if (num_agents < 2) throw std::domain_error("bar_closed_form_ratio: need N >= 2");
  if (static_cast<double>(num_agents) <= 7.0 * c)
    throw std::domain_error("bar_closed_form_ratio: requires N > 7c");
  const double n7c = static_cast<double>(num_agents) - 7.0 * c;
  const double e1c = std::exp(1.0 / c);
  const double denom = n7c * (1.0 - e1c) + 7.0 * e1c;
  if (denom == 0.0) throw std::domain_error("bar_closed_form_ratio: zero denominator");
  return std::abs(std::sqrt(7.0) * n7c / denom);
}

}  // namespace coin
