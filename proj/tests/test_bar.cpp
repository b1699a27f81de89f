#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "coin/bar.hpp"
#include "helpers.hpp"

using namespace coin;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("attendance counts choices and skips clamped nodes") {
  {
    std::vector<int> all_zero(168, 0);
    const WeekState s = WeekState::from_choices(all_zero, 7);
    const auto x = attendance(s, 7);
    CHECK(x == std::vector<int>{168, 0, 0, 0, 0, 0, 0});
  }
  {
    WeekState s = WeekState::from_choices({1, 1, 1}, 7);
    s = s.with_clamped(0);
    CHECK(attendance(s, 7) == std::vector<int>{0, 2, 0, 0, 0, 0, 0});
  }
}

TEST_CASE("attendance partitions the agents when nothing is clamped") {
  Rng rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const WeekState s = testing::random_state(20, 7, rng);
    const auto x = attendance(s, 7);
    int total = 0;
    for (int v : x) total += v;
    CHECK(total == 20);
  }
}

TEST_CASE("gamma curve") {
  CHECK(gamma_curve(0.0, 1.0, 6.0) == 0.0);
  CHECK(gamma_curve(17.0, 0.0, 6.0) == 0.0);
  CHECK_THAT(gamma_curve(6.0, 1.0, 6.0), WithinAbs(6.0 * std::exp(-1.0), 1e-14));
  // y = c is the unique maximizer.
  for (double y : {1.0, 3.0, 5.9, 6.1, 10.0, 30.0})
    CHECK(gamma_curve(y, 1.0, 6.0) < gamma_curve(6.0, 1.0, 6.0));
}

TEST_CASE("world reward examples") {
  BarConfig cfg = BarConfig::defaults();

  SECTION("empty attendance gives zero") {
    cfg.num_agents = 0;
    CHECK(world_reward(WeekState(0, 7), cfg) == 0.0);
  }

  SECTION("single-night optimum is 42/e") {
    cfg.alpha = BarConfig::alpha_single_night(7);
    cfg.num_agents = 6;
    const WeekState s = WeekState::from_choices(std::vector<int>(6, 3), 7);
    CHECK_THAT(world_reward(s, cfg), WithinAbs(42.0 / std::exp(1.0), 1e-12));
  }

  SECTION("uniform-alpha profile (6,6,6,6,6,6,132)") {
    cfg.num_agents = 168;
    std::vector<int> choices;
    for (int k = 0; k < 6; ++k)
      for (int i = 0; i < 6; ++i) choices.push_back(k);
    for (int i = 0; i < 132; ++i) choices.push_back(6);
    const WeekState s = WeekState::from_choices(choices, 7);
    const double expected = 36.0 / std::exp(1.0) + 132.0 * std::exp(-22.0);
    CHECK_THAT(world_reward(s, cfg), WithinAbs(expected, 1e-12));
  }
}

TEST_CASE("UD reward") {
  BarConfig cfg = BarConfig::defaults();
  cfg.num_agents = 6;
  const WeekState s = WeekState::from_choices(std::vector<int>(6, 2), 7);
  CHECK_THAT(reward_ud(0, s, cfg), WithinAbs(std::exp(-1.0), 1e-14));

  cfg.alpha = std::vector<double>(7, 0.0);
  CHECK(reward_ud(0, s, cfg) == 0.0);

  cfg.alpha = BarConfig::alpha_uniform(7);
  CHECK_THROWS_AS(reward_ud(0, s.with_clamped(0), cfg), std::domain_error);
}

TEST_CASE("UD rewards sum to the world reward") {
  Rng rng(37);
  BarConfig cfg = BarConfig::defaults();
  cfg.num_agents = 40;
  for (const auto& alpha :
       {BarConfig::alpha_uniform(7), BarConfig::alpha_single_night(7)}) {
    cfg.alpha = alpha;
    for (int trial = 0; trial < 100; ++trial) {
      const WeekState s = testing::random_state(cfg.num_agents, 7, rng);
      double sum = 0.0;
      for (int node = 0; node < cfg.num_agents; ++node) sum += reward_ud(node, s, cfg);
      CHECK_THAT(sum, WithinAbs(world_reward(s, cfg), 1e-12));
    }
  }
}

TEST_CASE("G reward is identical across nodes") {
  Rng rng(41);
  BarConfig cfg = BarConfig::defaults();
  cfg.num_agents = 12;
  const WeekState s = testing::random_state(12, 7, rng);
  for (int node = 0; node < 12; ++node)
    CHECK(reward_g(node, s, cfg) == world_reward(s, cfg));
}

TEST_CASE("WL reward equals the attendance marginal") {
  Rng rng(43);
  BarConfig cfg = BarConfig::defaults();
  cfg.num_agents = 30;
  for (int trial = 0; trial < 200; ++trial) {
    const WeekState s = testing::random_state(cfg.num_agents, 7, rng);
    const int node = uniform_int(rng, cfg.num_agents);
    const int d = s.choice(node);
    const int x_d = attendance(s, 7)[static_cast<std::size_t>(d)];
    const double expected =
        gamma_curve(x_d, cfg.alpha[static_cast<std::size_t>(d)], cfg.capacity) -
        gamma_curve(x_d - 1, cfg.alpha[static_cast<std::size_t>(d)], cfg.capacity);
    CHECK_THAT(reward_wl(node, s, cfg), WithinAbs(expected, 1e-12));
  }
}

TEST_CASE("WL reward worked values") {
  BarConfig cfg = BarConfig::defaults();
  cfg.num_agents = 7;
  {
    // Lone attendee on night 0.
    std::vector<int> choices{0, 1, 1, 1, 1, 1, 1};
    const WeekState s = WeekState::from_choices(choices, 7);
    CHECK_THAT(reward_wl(0, s, cfg), WithinAbs(std::exp(-1.0 / 6.0), 1e-12));
  }
  {
    // Seven attendees: above capacity, marginal harm is negative.
    const WeekState s = WeekState::from_choices(std::vector<int>(7, 4), 7);
    const double expected = 7.0 * std::exp(-7.0 / 6.0) - 6.0 * std::exp(-1.0);
    CHECK_THAT(reward_wl(0, s, cfg), WithinAbs(expected, 1e-12));
    CHECK(reward_wl(0, s, cfg) < 0.0);
  }
  {
    cfg.alpha = std::vector<double>(7, 0.0);
    const WeekState s = WeekState::from_choices(std::vector<int>(7, 4), 7);
    CHECK(reward_wl(0, s, cfg) == 0.0);
  }
}

TEST_CASE("WL reward depends only on the node's own night's attendance") {
  BarConfig cfg = BarConfig::defaults();
  cfg.num_agents = 10;
  const WeekState s = WeekState::from_choices({0, 0, 0, 1, 1, 2, 2, 2, 2, 3}, 7);
  const double base = reward_wl(0, s, cfg);
  // Shuffle everyone not on night 0 among other nights.
  const WeekState moved = WeekState::from_choices({0, 0, 0, 5, 6, 6, 6, 4, 4, 4}, 7);
  CHECK_THAT(reward_wl(0, moved, cfg), WithinAbs(base, 1e-14));
}

TEST_CASE("world reward is permutation-invariant over agents") {
  Rng rng(47);
  BarConfig cfg = BarConfig::defaults();
  cfg.num_agents = 15;
  std::vector<int> choices(15);
  for (int& c : choices) c = uniform_int(rng, 7);
  const double base = world_reward(WeekState::from_choices(choices, 7), cfg);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(choices.begin(), choices.end(), rng);
    CHECK(world_reward(WeekState::from_choices(choices, 7), cfg) == base);
  }
}

TEST_CASE("DP optimum matches brute force on enumerable instances") {
  for (const int nights : {2, 3}) {
    for (const int nodes : {2, 3, 5}) {
      for (const bool single : {false, true}) {
        BarConfig cfg;
        cfg.num_agents = nodes;
        cfg.num_nights = nights;
        cfg.alpha = single ? BarConfig::alpha_single_night(nights)
                           : BarConfig::alpha_uniform(nights);
        double best = -1.0;
        for (const WeekState& s : testing::all_states(nodes, nights))
          best = std::max(best, world_reward(s, cfg));
        CHECK_THAT(optimal_world_reward(cfg), WithinAbs(best, 1e-12));
      }
    }
  }
}
