// coinlab: seeded batch simulations of the bar and leader-follower
// environments plus small-instance reward diagnostics.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coin/diagnostics.hpp"
#include "coin/sim/config.hpp"
#include "coin/sim/output.hpp"
#include "coin/sim/runner.hpp"

namespace {

constexpr const char* kVersion = "coinlab 1.0.0";

struct SimulateOptions {
  std::string config_path;
  std::optional<std::string> environment;
  std::optional<std::string> reward;
  std::optional<int> weeks;
  std::optional<int> runs;
  std::optional<std::uint64_t> seed;
  std::optional<int> macrolearning_week;
  std::vector<std::string> overrides;  // key=value
  std::string out_dir = "out";
};

int run_simulate(const SimulateOptions& opt) {
  coin::sim::ExperimentConfig cfg;
  if (!opt.config_path.empty()) cfg = coin::sim::load_config_file(opt.config_path);
  if (opt.environment) cfg.environment = coin::sim::parse_environment(*opt.environment);
  if (opt.reward) cfg.reward = coin::sim::parse_reward(*opt.reward);
  if (opt.weeks) cfg.weeks = *opt.weeks;
  if (opt.runs) cfg.runs = *opt.runs;
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.macrolearning_week) cfg.macrolearning_week = *opt.macrolearning_week;
  for (const std::string& kv : opt.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw coin::sim::ConfigError("set", "expected key=value, got '" + kv + "'");
    coin::sim::apply_key_value(cfg, coin::sim::trim(kv.substr(0, eq)),
                               coin::sim::trim(kv.substr(eq + 1)));
  }
  cfg.validate();

  std::vector<coin::sim::RunResult> results;
  results.reserve(static_cast<std::size_t>(cfg.runs));
  for (int run = 0; run < cfg.runs; ++run)
    results.push_back(coin::sim::run_simulation(cfg, run));

  const double optimum = coin::sim::known_optimum(cfg, results);
  const coin::sim::AggregateStats stats =
      coin::sim::aggregate(results, optimum, cfg.convergence_fraction);
  coin::sim::emit_outputs(stats, cfg, results, optimum, opt.out_dir);

  std::cout << "environment: " << coin::sim::to_string(cfg.environment)
            << "  reward: " << coin::sim::to_string(cfg.reward) << "  runs: " << cfg.runs
            << "  weeks: " << cfg.weeks << '\n';
  std::cout << "optimal world reward: " << optimum << '\n';
  if (!stats.mean.empty())
    std::cout << "final mean world reward: " << stats.mean.back() << '\n';
  if (stats.convergence_week)
    std::cout << "convergence week (" << cfg.convergence_fraction
              << " of optimum): " << *stats.convergence_week << '\n';
  else
    std::cout << "convergence week: never\n";
  std::cout << "wrote " << opt.out_dir << "/results.csv and " << opt.out_dir
            << "/summary.json\n";
  return 0;
}

struct DiagnoseOptions {
  int num_agents = 4;
  int num_nights = 3;
  double capacity = 6.0;
  std::string alpha_preset = "uniform";
  int samples = 200;
  std::uint64_t seed = 1;
};

int run_diagnose(const DiagnoseOptions& opt) {
  if (opt.num_agents < 2)
    throw coin::sim::ConfigError("num_agents", "diagnose needs at least 2 agents");
  coin::BarConfig bar;
  bar.num_agents = opt.num_agents;
  bar.num_nights = opt.num_nights;
  bar.capacity = opt.capacity;
  bar.alpha = opt.alpha_preset == "single_night"
                  ? coin::BarConfig::alpha_single_night(opt.num_nights)
                  : coin::BarConfig::alpha_uniform(opt.num_nights);

  coin::Rng rng(coin::derive_seed(opt.seed, 0));
  std::vector<coin::WeekState> states;
  for (int i = 0; i < opt.samples; ++i) {
    std::vector<int> choices(static_cast<std::size_t>(opt.num_agents));
    for (int& c : choices) c = coin::uniform_int(rng, opt.num_nights);
    states.push_back(coin::WeekState::from_choices(choices, opt.num_nights));
  }

  const coin::UtilityEvaluator world = [&](const coin::WeekState& s) {
    return coin::world_reward(s, bar);
  };
  const coin::NodeUtility wl = [&](int node, const coin::WeekState& s) {
    return coin::reward_wl(node, s, bar);
  };
  const coin::NodeUtility ud = [&](int node, const coin::WeekState& s) {
    return coin::reward_ud(node, s, bar);
  };
  const auto mu = coin::CounterfactualMeasure::exhaustive();

  std::printf("bar instance: N=%d K=%d c=%g alpha=%s, %d sampled states\n",
              opt.num_agents, opt.num_nights, opt.capacity, opt.alpha_preset.c_str(),
              opt.samples);
  std::printf("factoredness degree  G : %.6f\n",
              coin::factoredness_degree(world, world, states, mu));
  std::printf("factoredness degree  WL: %.6f\n",
              coin::factoredness_degree(world, wl, states, mu));
  std::printf("factoredness degree  UD: %.6f\n",
              coin::factoredness_degree(world, ud, states, mu));

  double intel_g = 0.0, intel_wl = 0.0;
  for (const coin::WeekState& s : states) {
    intel_g += coin::intelligence(world, s, 0, mu);
    intel_wl += coin::intelligence([&](const coin::WeekState& t) { return wl(0, t); }, s,
                                   0, mu);
  }
  std::printf("mean intelligence of node 0, G : %.6f\n", intel_g / opt.samples);
  std::printf("mean intelligence of node 0, WL: %.6f\n", intel_wl / opt.samples);

  const auto mu_rand = coin::CounterfactualMeasure::random(2000);
  double learn_g = 0.0, learn_wl = 0.0;
  int finite = 0;
  for (const coin::WeekState& s : states) {
    const double lg = coin::learnability(world, s, 0, mu_rand, &rng);
    const double lw = coin::learnability(
        [&](const coin::WeekState& t) { return wl(0, t); }, s, 0, mu_rand, &rng);
    if (std::isfinite(lg) && std::isfinite(lw)) {
      learn_g += lg;
      learn_wl += lw;
      ++finite;
    }
  }
  if (finite > 0) {
    std::printf("mean learnability of node 0, G : %.6f\n", learn_g / finite);
    std::printf("mean learnability of node 0, WL: %.6f\n", learn_wl / finite);
  }

  // Differential learnability at an (approximately) uniform-attendance state.
  std::vector<int> uniform_choices(static_cast<std::size_t>(opt.num_agents));
  for (int a = 0; a < opt.num_agents; ++a)
    uniform_choices[static_cast<std::size_t>(a)] = a % opt.num_nights;
  const coin::WeekState uniform_state =
      coin::WeekState::from_choices(uniform_choices, opt.num_nights);
  const double dl_g = coin::differential_learnability(
      coin::bar_world_reward_embedding(bar), uniform_state, 0);
  const double dl_wl = coin::differential_learnability(
      coin::bar_wl_embedding(bar, 0), uniform_state, 0);
  std::printf("differential learnability at uniform attendance, G : %.6f\n", dl_g);
  std::printf("differential learnability at uniform attendance, WL: %.6f\n", dl_wl);
  if (dl_g > 0.0 && std::isfinite(dl_wl))
    std::printf("WL/G differential learnability ratio: %.6f\n", dl_wl / dl_g);
  if (opt.num_nights == 7 && opt.num_agents > 7 * opt.capacity)
    std::printf("closed-form WL/G ratio at uniform attendance: %.6f\n",
                coin::bar_closed_form_ratio(opt.num_agents, opt.capacity));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"COIN design laboratory: bar and leader-follower experiments"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(0, 1);

  SimulateOptions sim;
  CLI::App* simulate = app.add_subcommand("simulate", "run a seeded batch experiment");
  simulate->add_option("--config", sim.config_path, "key=value configuration file");
  simulate->add_option("--experiment", sim.environment, "bar | leader_follower");
  simulate->add_option("--reward", sim.reward, "UD | G | WL");
  simulate->add_option("--weeks", sim.weeks, "weeks per run");
  simulate->add_option("--runs", sim.runs, "number of runs");
  simulate->add_option("--seed", sim.seed, "master seed");
  simulate->add_option("--macrolearning-week", sim.macrolearning_week,
                       "week at which effect sets are reassigned");
  simulate->add_option("--set", sim.overrides,
                       "extra key=value override (repeatable); same keys as the file");
  simulate->add_option("--out", sim.out_dir, "output directory");

  DiagnoseOptions diag;
  CLI::App* diagnose =
      app.add_subcommand("diagnose", "reward diagnostics on a small bar instance");
  diagnose->add_option("--num-agents", diag.num_agents, "agent count");
  diagnose->add_option("--num-nights", diag.num_nights, "nights per week");
  diagnose->add_option("--capacity", diag.capacity, "capacity parameter c");
  diagnose->add_option("--alpha-preset", diag.alpha_preset, "uniform | single_night");
  diagnose->add_option("--samples", diag.samples, "number of sampled states");
  diagnose->add_option("--seed", diag.seed, "sampling seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return run_simulate(sim);
    if (diagnose->parsed()) return run_diagnose(diag);
    std::cout << app.help();
    return 0;
  } catch (const coin::sim::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
