#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "coin/core.hpp"
#include "coin/rng.hpp"

namespace coin {

// Leader-follower environment: each leader has two followers whose attended
// nights are forced to the leader's pick. World reward sums a shared
// triply-indexed tensor over leader triples.
//
// Agent layout: leaders are agents [0, num_leaders); the followers of
// leader i are agents num_leaders + 2i and num_leaders + 2i + 1.
struct LFConfig {
  int num_leaders = 56;
  int num_nights = 7;
  double worst_case_penalty = 2.0;  // B

  int num_agents() const { return 3 * num_leaders; }
  int leader(int i) const { return i; }
  int follower(int i, int which) const { return num_leaders + 2 * i + which; }
};

// R[l, f1, f2], defined for all K^3 triples including dynamically
// unrealizable ones (clamping can produce those).
class RewardTensor {
 public:
  explicit RewardTensor(int num_nights)
      : k_(num_nights),
        entries_(static_cast<std::size_t>(num_nights) * num_nights * num_nights, 0.0) {
    if (num_nights < 2) throw std::domain_error("RewardTensor: need at least 2 nights");
  }

  int num_nights() const { return k_; }

  double& at(int l, int f1, int f2) {
    return entries_[static_cast<std::size_t>((l * k_ + f1) * k_ + f2)];
  }
  double at(int l, int f1, int f2) const {
    return entries_[static_cast<std::size_t>((l * k_ + f1) * k_ + f2)];
  }

  friend bool operator==(const RewardTensor&, const RewardTensor&) = default;

 private:
  int k_;
  std::vector<double> entries_;
};

// Per-agent guessed effect set (agent indices); always contains the agent.
using GuessedEffectSetMap = std::vector<std::vector<int>>;

// Dynamics: followers attend their leader's picked night; leaders attend
// their own pick. Follower picks are discarded.
inline WeekState apply_dynamics(const WeekState& picks, const LFConfig& cfg) {
  if (picks.num_nodes() != cfg.num_agents())
    throw std::invalid_argument("apply_dynamics: wrong agent count");
  WeekState attended = picks;
  for (int i = 0; i < cfg.num_leaders; ++i) {
    const int night = picks.choice(cfg.leader(i));
    attended = attended.with_choice(cfg.follower(i, 0), night);
    attended = attended.with_choice(cfg.follower(i, 1), night);
  }
  return attended;
}

// A clamped agent contributes index 0 to its tensor slot.
inline int tensor_index(const WeekState& attended, int agent) {
  return attended.clamped(agent) ? 0 : attended.choice(agent);
}

// Per-week world reward: sum over leaders of R[l_i, f1_i, f2_i].
inline double world_reward_lf(const WeekState& attended, const RewardTensor& r,
                              const LFConfig& cfg) {
  double total = 0.0;
  for (int i = 0; i < cfg.num_leaders; ++i) {
    total += r.at(tensor_index(attended, cfg.leader(i)),
                  tensor_index(attended, cfg.follower(i, 0)),
                  tensor_index(attended, cfg.follower(i, 1)));
  }
  return total;
}

// Guessed-effect-set WL reward for one agent: world reward minus the world
// reward with the agent's guessed set clamped, without re-running dynamics.
inline double reward_wl_lf(int agent, const WeekState& attended,
                           const GuessedEffectSetMap& gset, const RewardTensor& r,
                           const LFConfig& cfg) {
  const std::vector<int>& members = gset.at(static_cast<std::size_t>(agent));
  return world_reward_lf(attended, r, cfg) -
         world_reward_lf(clamp_week(attended, members), r, cfg);
}

// Tensor family generalizing the paper-style two-night example: with a
// guessed set containing no followers the per-leader WL argmax is night 0
// (world-minimal), with the correct set it is night K-1 (world-maximal).
// For K = 2, B = 2 the entries are R_000 = 0, R_111 = 1, R_011 = 2.
inline RewardTensor worst_case_tensor(int num_nights, double b) {
  if (b <= 1.0) throw std::domain_error("worst_case_tensor: penalty must exceed 1");
  RewardTensor r(num_nights);
  for (int l = 1; l < num_nights; ++l)
    r.at(l, l, l) = static_cast<double>(l) / (num_nights - 1);
  for (int m = 1; m < num_nights; ++m) r.at(0, m, m) = m * b;
  return r;
}

inline RewardTensor random_tensor(int num_nights, Rng& rng) {
  RewardTensor r(num_nights);
  for (int l = 0; l < num_nights; ++l)
    for (int f1 = 0; f1 < num_nights; ++f1)
      for (int f2 = 0; f2 < num_nights; ++f2) r.at(l, f1, f2) = uniform01(rng);
  return r;
}

// Maximum achievable world reward under the dynamics: every realizable
// triple is (l, l, l), so each leader independently maximizes R[l, l, l].
inline double optimal_world_reward_lf(const RewardTensor& r, const LFConfig& cfg) {
  double best = r.at(0, 0, 0);
  for (int l = 1; l < r.num_nights(); ++l) best = std::max(best, r.at(l, l, l));
  return best * cfg.num_leaders;
}

enum class EffectSetInit { correct, none_followers, random };

// Initial guessed effect sets. "correct" gives each leader its own two
// followers; "none_followers" gives it the next leader's followers (the
// paper-style wrong guess); "random" draws two other agents uniformly.
// Followers always get sets of the same shape built from other agents.
inline GuessedEffectSetMap init_effect_sets(EffectSetInit kind, const LFConfig& cfg,
                                            Rng& rng) {
  GuessedEffectSetMap gset(static_cast<std::size_t>(cfg.num_agents()));
  auto random_pair = [&](int self) {
    std::vector<int> s{self};
    while (s.size() < 3) {
      const int pick = uniform_int(rng, cfg.num_agents());
      if (std::find(s.begin(), s.end(), pick) == s.end()) s.push_back(pick);
    }
    return s;
  };
  for (int a = 0; a < cfg.num_agents(); ++a) {
    switch (kind) {
      case EffectSetInit::correct:
        if (a < cfg.num_leaders)
          gset[static_cast<std::size_t>(a)] = {a, cfg.follower(a, 0), cfg.follower(a, 1)};
        else
          gset[static_cast<std::size_t>(a)] = {a};
        break;
      case EffectSetInit::none_followers: {
        if (a < cfg.num_leaders) {
          const int next = (a + 1) % cfg.num_leaders;
          gset[static_cast<std::size_t>(a)] = {a, cfg.follower(next, 0),
                                               cfg.follower(next, 1)};
        } else {
          gset[static_cast<std::size_t>(a)] = {a};
        }
        break;
      }
      case EffectSetInit::random:
        gset[static_cast<std::size_t>(a)] = random_pair(a);
        break;
    }
  }
  return gset;
}

}  // namespace coin
