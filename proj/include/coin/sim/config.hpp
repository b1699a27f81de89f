#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "coin/agent.hpp"
#include "coin/bar.hpp"
#include "coin/leader_follower.hpp"

namespace coin::sim {

enum class Environment { bar, leader_follower };
enum class RewardKind { ud, g, wl };
enum class TensorKind { worst_case, random };

// Invalid configuration; carries the offending field name.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& field, const std::string& what)
      : std::runtime_error(field + ": " + what), field(field) {}
  std::string field;
};

struct ExperimentConfig {
  Environment environment = Environment::bar;
  RewardKind reward = RewardKind::wl;

  // bar
  int num_agents = 168;
  int num_nights = 7;
  double capacity = 6.0;
  std::string alpha_preset = "uniform";  // uniform | single_night
  std::vector<double> alpha;             // explicit list overrides the preset

  // leader-follower
  int num_leaders = 56;
  TensorKind tensor_kind = TensorKind::worst_case;
  double worst_case_penalty = 2.0;
  EffectSetInit effect_set_init = EffectSetInit::random;

  // run control
  int weeks = 2000;
  int runs = 20;
  std::uint64_t seed = 1;
  LearnerParams learner;
  std::optional<int> macrolearning_week;
  double convergence_fraction = 0.95;

  std::vector<double> resolved_alpha() const {
    if (!alpha.empty()) return alpha;
    if (alpha_preset == "uniform") return BarConfig::alpha_uniform(num_nights);
    if (alpha_preset == "single_night") return BarConfig::alpha_single_night(num_nights);
    throw ConfigError("alpha_preset", "unknown preset '" + alpha_preset + "'");
  }

  BarConfig bar_config() const {
    BarConfig cfg;
    cfg.num_agents = num_agents;
    cfg.num_nights = num_nights;
    cfg.capacity = capacity;
    cfg.alpha = resolved_alpha();
    return cfg;
  }

  LFConfig lf_config() const {
    LFConfig cfg;
    cfg.num_leaders = num_leaders;
    cfg.num_nights = num_nights;
    cfg.worst_case_penalty = worst_case_penalty;
    return cfg;
  }

  void validate() const {
    if (environment == Environment::leader_follower && reward == RewardKind::ud)
      throw ConfigError("reward", "UD is not defined for the leader_follower environment");
    if (weeks < 0) throw ConfigError("weeks", "must be non-negative");
    if (runs < 1) throw ConfigError("runs", "must be positive");
    if (num_nights < 1) throw ConfigError("num_nights", "must be positive");
    if (environment == Environment::bar) {
      if (num_agents < 1) throw ConfigError("num_agents", "must be positive");
      if (capacity <= 0.0) throw ConfigError("capacity", "must be positive");
      const auto a = resolved_alpha();
      if (static_cast<int>(a.size()) != num_nights)
        throw ConfigError("alpha", "needs exactly one weight per night");
      for (double w : a)
        if (w < 0.0) throw ConfigError("alpha", "weights must be non-negative");
    } else {
      if (num_leaders < 1) throw ConfigError("num_leaders", "must be positive");
      if (num_nights < 2) throw ConfigError("num_nights", "leader_follower needs >= 2");
      if (tensor_kind == TensorKind::worst_case && worst_case_penalty <= 1.0)
        throw ConfigError("worst_case_penalty", "must exceed 1");
    }
    if (learner.learning_rate <= 0.0 || learner.learning_rate > 1.0)
      throw ConfigError("learning_rate", "must lie in (0, 1]");
    if (learner.temp_initial <= 0.0) throw ConfigError("temp_initial", "must be positive");
    if (learner.temp_decay_time <= 0.0)
      throw ConfigError("temp_decay_time", "must be positive");
    if (learner.temp_floor <= 0.0 || learner.temp_floor > learner.temp_initial)
      throw ConfigError("temp_floor", "must lie in (0, temp_initial]");
    if (macrolearning_week && *macrolearning_week < 1)
      throw ConfigError("macrolearning_week", "must be positive");
    if (convergence_fraction <= 0.0 || convergence_fraction > 1.0)
      throw ConfigError("convergence_fraction", "must lie in (0, 1]");
  }
};

inline std::string to_string(Environment e) {
  return e == Environment::bar ? "bar" : "leader_follower";
}
inline std::string to_string(RewardKind r) {
  switch (r) {
    case RewardKind::ud: return "UD";
    case RewardKind::g: return "G";
    default: return "WL";
  }
}
inline std::string to_string(TensorKind t) {
  return t == TensorKind::worst_case ? "worst_case" : "random";
}
inline std::string to_string(EffectSetInit i) {
  switch (i) {
    case EffectSetInit::correct: return "correct";
    case EffectSetInit::none_followers: return "none_followers";
    default: return "random";
  }
}

inline Environment parse_environment(const std::string& s) {
  if (s == "bar") return Environment::bar;
  if (s == "leader_follower") return Environment::leader_follower;
  throw ConfigError("environment", "expected bar or leader_follower, got '" + s + "'");
}
inline RewardKind parse_reward(const std::string& s) {
  if (s == "UD" || s == "ud") return RewardKind::ud;
  if (s == "G" || s == "g") return RewardKind::g;
  if (s == "WL" || s == "wl") return RewardKind::wl;
  throw ConfigError("reward", "expected UD, G or WL, got '" + s + "'");
}
inline TensorKind parse_tensor_kind(const std::string& s) {
  if (s == "worst_case") return TensorKind::worst_case;
  if (s == "random") return TensorKind::random;
  throw ConfigError("tensor_kind", "expected worst_case or random, got '" + s + "'");
}
inline EffectSetInit parse_effect_set_init(const std::string& s) {
  if (s == "correct") return EffectSetInit::correct;
  if (s == "none_followers") return EffectSetInit::none_followers;
  if (s == "random") return EffectSetInit::random;
  throw ConfigError("effect_set_init",
                    "expected correct, none_followers or random, got '" + s + "'");
}

// Applies one `key = value` assignment. Shared by the file parser and the
// CLI override path so both accept exactly the same keys.
inline void apply_key_value(ExperimentConfig& cfg, const std::string& key,
                            const std::string& value) {
  auto as_int = [&](const std::string& k) {
    try {
      std::size_t pos = 0;
      const int v = std::stoi(value, &pos);
      if (pos != value.size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw ConfigError(k, "expected an integer, got '" + value + "'");
    }
  };
  auto as_double = [&](const std::string& k) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(value, &pos);
      if (pos != value.size()) throw std::invalid_argument("trailing characters");
      return v;
    } catch (const std::exception&) {
      throw ConfigError(k, "expected a number, got '" + value + "'");
    }
  };

  if (key == "environment") cfg.environment = parse_environment(value);
  else if (key == "reward") cfg.reward = parse_reward(value);
  else if (key == "num_agents") cfg.num_agents = as_int(key);
  else if (key == "num_nights") cfg.num_nights = as_int(key);
  else if (key == "capacity") cfg.capacity = as_double(key);
  else if (key == "alpha_preset") { cfg.alpha_preset = value; cfg.alpha.clear(); }
  else if (key == "alpha") {
    cfg.alpha.clear();
    std::istringstream in(value);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      try {
        cfg.alpha.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw ConfigError("alpha", "expected comma-separated numbers, got '" + value + "'");
      }
    }
    if (cfg.alpha.empty()) throw ConfigError("alpha", "empty list");
  }
  else if (key == "num_leaders") cfg.num_leaders = as_int(key);
  else if (key == "tensor_kind") cfg.tensor_kind = parse_tensor_kind(value);
  else if (key == "worst_case_penalty") cfg.worst_case_penalty = as_double(key);
  else if (key == "effect_set_init") cfg.effect_set_init = parse_effect_set_init(value);
  else if (key == "weeks") cfg.weeks = as_int(key);
  else if (key == "runs") cfg.runs = as_int(key);
  else if (key == "seed") {
    try {
      cfg.seed = std::stoull(value);
    } catch (const std::exception&) {
      throw ConfigError("seed", "expected an unsigned integer, got '" + value + "'");
    }
  }
  else if (key == "learning_rate") cfg.learner.learning_rate = as_double(key);
  else if (key == "temp_initial") cfg.learner.temp_initial = as_double(key);
  else if (key == "temp_decay_time") cfg.learner.temp_decay_time = as_double(key);
  else if (key == "temp_floor") cfg.learner.temp_floor = as_double(key);
  else if (key == "macrolearning_week") cfg.macrolearning_week = as_int(key);
  else if (key == "convergence_fraction") cfg.convergence_fraction = as_double(key);
  else throw ConfigError(key, "unknown configuration key");
}

inline std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Flat `key = value` file; '#' starts a comment.
inline ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config", path + ":" + std::to_string(lineno) +
                                      ": expected key = value");
    apply_key_value(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

}  // namespace coin::sim
