#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace coin {

// A node's pick for one week: a night index in [0, K).
struct NightChoice {
  int index = 0;
  friend bool operator==(const NightChoice&, const NightChoice&) = default;
};

// Joint state of all nodes for a single week. A clamped node has been
// counterfactually overwritten with the null night; it attends nothing and
// its unary embedding is the all-zero vector.
class WeekState {
 public:
  WeekState(int num_nodes, int num_nights)
      : choices_(static_cast<std::size_t>(num_nodes), 0),
        clamped_(static_cast<std::size_t>(num_nodes), 0),
        num_nights_(num_nights) {
    if (num_nodes < 0 || num_nights < 1)
      throw std::invalid_argument("WeekState: bad dimensions");
  }

  static WeekState from_choices(const std::vector<int>& choices, int num_nights) {
    WeekState s(static_cast<int>(choices.size()), num_nights);
    for (std::size_t i = 0; i < choices.size(); ++i) {
      if (choices[i] < 0 || choices[i] >= num_nights)
        throw std::domain_error("WeekState: choice out of range");
      s.choices_[i] = choices[i];
    }
    return s;
  }

  int num_nodes() const { return static_cast<int>(choices_.size()); }
  int num_nights() const { return num_nights_; }

  int choice(int node) const { return choices_.at(static_cast<std::size_t>(node)); }
  bool clamped(int node) const { return clamped_.at(static_cast<std::size_t>(node)) != 0; }

  WeekState with_choice(int node, int night) const {
    if (night < 0 || night >= num_nights_)
      throw std::domain_error("WeekState: choice out of range");
    WeekState s = *this;
    s.choices_.at(static_cast<std::size_t>(node)) = night;
    s.clamped_[static_cast<std::size_t>(node)] = 0;
    return s;
  }

  WeekState with_clamped(int node) const {
    WeekState s = *this;
    s.choices_.at(static_cast<std::size_t>(node)) = 0;
    s.clamped_[static_cast<std::size_t>(node)] = 1;
    return s;
  }

  // Unary embedding of one node's state: one-hot for a live choice,
  // all-zero for a clamped node.
  std::vector<double> unary(int node) const {
    std::vector<double> v(static_cast<std::size_t>(num_nights_), 0.0);
    if (!clamped(node)) v[static_cast<std::size_t>(choice(node))] = 1.0;
    return v;
  }

  friend bool operator==(const WeekState&, const WeekState&) = default;

 private:
  std::vector<int> choices_;
  std::vector<char> clamped_;
  int num_nights_;
};

// The full history the framework analyzes: one WeekState per week.
struct Worldline {
  std::vector<WeekState> weeks;
  friend bool operator==(const Worldline&, const Worldline&) = default;
};

// Set of (node, week) components to clamp.
struct ClampSet {
  std::vector<std::pair<int, int>> members;
};

// Week-additive world utility G(w) = sum over weeks of R(week).
struct WorldUtility {
  std::function<double(const WeekState&)> per_week_reward;

  double operator()(const Worldline& w) const {
    double total = 0.0;
    for (const WeekState& s : w.weeks) total += per_week_reward(s);
    return total;
  }
};

// Clamp the listed nodes of a single week to the null night.
inline WeekState clamp_week(WeekState s, const std::vector<int>& nodes) {
  for (int node : nodes) {
    if (node < 0 || node >= s.num_nodes())
      throw std::out_of_range("clamp_week: node " + std::to_string(node) +
                              " out of range");
    s = s.with_clamped(node);
  }
  return s;
}

// The clamping operator CL. Purely counterfactual: no dynamics re-run, no
// component outside sigma changes.
inline Worldline clamp(Worldline w, const ClampSet& sigma) {
  for (const auto& [node, week] : sigma.members) {
    if (week < 0 || week >= static_cast<int>(w.weeks.size()))
      throw std::out_of_range("clamp: week " + std::to_string(week) +
                              " out of range for node " + std::to_string(node));
    WeekState& s = w.weeks[static_cast<std::size_t>(week)];
    if (node < 0 || node >= s.num_nodes())
      throw std::out_of_range("clamp: node " + std::to_string(node) +
                              " out of range in week " + std::to_string(week));
    s = s.with_clamped(node);
  }
  return w;
}

// Wonderful Life utility for sigma at w: G(w) - G(CL_sigma(w)).
inline double wlu(const WorldUtility& g, const ClampSet& sigma, const Worldline& w) {
  return g(w) - g(clamp(w, sigma));
}

inline std::vector<double> night_to_unary(NightChoice c, int num_nights) {
  if (c.index < 0 || c.index >= num_nights)
    throw std::domain_error("night_to_unary: index out of range");
  std::vector<double> v(static_cast<std::size_t>(num_nights), 0.0);
  v[static_cast<std::size_t>(c.index)] = 1.0;
  return v;
}

// Inverse of night_to_unary on one-hot vectors.
inline NightChoice unary_to_night(const std::vector<double>& v) {
  int hit = -1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 1.0) {
      if (hit >= 0) throw std::domain_error("unary_to_night: not one-hot");
      hit = static_cast<int>(i);
    } else if (v[i] != 0.0) {
      throw std::domain_error("unary_to_night: not one-hot");
    }
  }
  if (hit < 0) throw std::domain_error("unary_to_night: all-zero (clamped) vector");
  return NightChoice{hit};
}

}  // namespace coin
