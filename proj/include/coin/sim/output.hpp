#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "coin/sim/config.hpp"
#include "coin/sim/runner.hpp"

namespace coin::sim {

// Plain decimal notation with at least 12 significant digits.
inline std::string format_value(double v) {
  if (v == 0.0) return "0.000000000000";
  const int exponent = static_cast<int>(std::floor(std::log10(std::fabs(v))));
  const int precision = std::max(0, 12 - 1 - exponent);
  char buf[512];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  return buf;
}

inline std::string csv_text(const AggregateStats& stats) {
  std::string out = "week,mean_world_reward,std_world_reward,min_world_reward,max_world_reward\n";
  for (std::size_t w = 0; w < stats.mean.size(); ++w) {
    out += std::to_string(w);
    out += ',';
    out += format_value(stats.mean[w]);
    out += ',';
    out += format_value(stats.stddev[w]);
    out += ',';
    out += format_value(stats.min[w]);
    out += ',';
    out += format_value(stats.max[w]);
    out += '\n';
  }
  return out;
}

inline nlohmann::json config_json(const ExperimentConfig& cfg) {
  nlohmann::json j{
      {"environment", to_string(cfg.environment)},
      {"reward", to_string(cfg.reward)},
      {"weeks", cfg.weeks},
      {"runs", cfg.runs},
      {"seed", cfg.seed},
      {"num_nights", cfg.num_nights},
      {"learner",
       {{"learning_rate", cfg.learner.learning_rate},
        {"temp_initial", cfg.learner.temp_initial},
        {"temp_decay_time", cfg.learner.temp_decay_time},
        {"temp_floor", cfg.learner.temp_floor}}},
      {"convergence_fraction", cfg.convergence_fraction},
  };
  if (cfg.macrolearning_week) j["macrolearning_week"] = *cfg.macrolearning_week;
  if (cfg.environment == Environment::bar) {
    j["num_agents"] = cfg.num_agents;
    j["capacity"] = cfg.capacity;
    j["alpha"] = cfg.resolved_alpha();
    j["alpha_preset"] = cfg.alpha.empty() ? cfg.alpha_preset : "explicit";
  } else {
    j["num_leaders"] = cfg.num_leaders;
    j["tensor_kind"] = to_string(cfg.tensor_kind);
    j["worst_case_penalty"] = cfg.worst_case_penalty;
    j["effect_set_init"] = to_string(cfg.effect_set_init);
  }
  return j;
}

inline nlohmann::json summary_json(const AggregateStats& stats,
                                   const ExperimentConfig& cfg,
                                   const std::vector<RunResult>& results,
                                   double optimum) {
  nlohmann::json j;
  j["config"] = config_json(cfg);
  j["seed"] = cfg.seed;
  j["optimal_world_reward"] = optimum;
  if (stats.convergence_week)
    j["convergence_week"] = *stats.convergence_week;
  else
    j["convergence_week"] = nullptr;
  if (!stats.mean.empty()) {
    const std::size_t last = stats.mean.size() - 1;
    j["final_week"] = {{"week", last},
                       {"mean_world_reward", stats.mean[last]},
                       {"std_world_reward", stats.stddev[last]},
                       {"min_world_reward", stats.min[last]},
                       {"max_world_reward", stats.max[last]}};
  }
  if (cfg.environment == Environment::bar) {
    nlohmann::json att = nlohmann::json::array();
    for (const RunResult& r : results) att.push_back(r.final_attendance);
    j["final_attendance_per_run"] = att;
  } else {
    nlohmann::json runs = nlohmann::json::array();
    for (const RunResult& r : results) {
      nlohmann::json leaders = nlohmann::json::array();
      for (int i = 0; i < cfg.num_leaders; ++i)
        leaders.push_back(r.final_effect_sets[static_cast<std::size_t>(i)]);
      runs.push_back(leaders);
    }
    j["final_leader_effect_sets_per_run"] = runs;
  }
  return j;
}

// Writes <dir>/results.csv and <dir>/summary.json.
inline void emit_outputs(const AggregateStats& stats, const ExperimentConfig& cfg,
                         const std::vector<RunResult>& results, double optimum,
                         const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw std::runtime_error("emit_outputs: cannot create '" + dir.string() +
                             "': " + ec.message());
  const auto csv_path = dir / "results.csv";
  {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_outputs: cannot open '" + csv_path.string() + "'");
    out << csv_text(stats);
    if (!out) throw std::runtime_error("emit_outputs: write failed for '" + csv_path.string() + "'");
  }
  const auto json_path = dir / "summary.json";
  {
    std::ofstream out(json_path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_outputs: cannot open '" + json_path.string() + "'");
    out << summary_json(stats, cfg, results, optimum).dump(2) << '\n';
    if (!out) throw std::runtime_error("emit_outputs: write failed for '" + json_path.string() + "'");
  }
}

}  // namespace coin::sim
