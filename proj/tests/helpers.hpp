#pragma once

#include <vector>

#include "coin/core.hpp"
#include "coin/rng.hpp"

namespace coin::testing {

inline WeekState random_state(int num_nodes, int num_nights, Rng& rng) {
  std::vector<int> choices(static_cast<std::size_t>(num_nodes));
  for (int& c : choices) c = uniform_int(rng, num_nights);
  return WeekState::from_choices(choices, num_nights);
}

// All K^N joint states of a small instance.
inline std::vector<WeekState> all_states(int num_nodes, int num_nights) {
  std::vector<WeekState> out;
  std::vector<int> choices(static_cast<std::size_t>(num_nodes), 0);
  for (;;) {
    out.push_back(WeekState::from_choices(choices, num_nights));
    int pos = 0;
    while (pos < num_nodes && ++choices[static_cast<std::size_t>(pos)] == num_nights) {
      choices[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == num_nodes) break;
  }
  return out;
}

}  // namespace coin::testing
