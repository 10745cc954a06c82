#include "microepi/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace microepi {

namespace {

void check_unit_interval(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error(std::string(name) + " must lie in [0, 1], got " +
                            std::to_string(x));
  }
}

}  // namespace

int PopulationState::infected_count() const {
  int m = 0;
  for (AgentState s : states) m += is_infected(s) ? 1 : 0;
  return m;
}

std::vector<int> PopulationState::infected_indices() const {
  std::vector<int> idx;
  idx.reserve(states.size());
  for (int i = 0; i < size(); ++i) {
    if (is_infected(states[i])) idx.push_back(i);
  }
  return idx;
}

PopulationState PopulationState::initial(int population, int initially_infected) {
  if (population < 1) throw std::invalid_argument("population must be >= 1");
  if (initially_infected < 0 || initially_infected > population) {
    throw std::invalid_argument("initially infected count must lie in [0, population]");
  }
  PopulationState state;
  state.states.assign(static_cast<std::size_t>(population), AgentState::healthy);
  std::fill_n(state.states.begin(), initially_infected, AgentState::infected);
  state.day = 0;
  return state;
}

void ActionProfile::validate() const {
  for (double u : levels) check_unit_interval(u, "activity level");
}

double meeting_probability(double u_i, double u_j) {
  check_unit_interval(u_i, "activity level u_i");
  check_unit_interval(u_j, "activity level u_j");
  return std::min(u_i, u_j);
}

namespace detail {

double stay_healthy_product(double u_i, std::span<const double> infected_levels) {
  double prod = 1.0;
  for (double u_j : infected_levels) {
    prod *= 1.0 - std::min(u_i, u_j);
    if (prod == 0.0) break;
  }
  return prod;
}

double stay_healthy_log(double u_i, std::span<const double> infected_levels) {
  double log_sum = 0.0;
  for (double u_j : infected_levels) {
    log_sum += std::log1p(-std::min(u_i, u_j));
  }
  return std::exp(log_sum);
}

}  // namespace detail

double infection_probability(double u_i, std::span<const double> infected_levels) {
  check_unit_interval(u_i, "activity level u_i");
  for (double u_j : infected_levels) check_unit_interval(u_j, "infected activity level");

  const std::size_t n = infected_levels.size();
  if (n == 0) return 0.0;
  // One factor: return the meeting probability itself, avoiding the
  // round trip through the complement.
  if (n == 1) return std::min(u_i, infected_levels[0]);
  if (n <= 64) return 1.0 - detail::stay_healthy_product(u_i, infected_levels);

  // Many factors: sum log1p terms so the product cannot underflow.
  double log_sum = 0.0;
  for (double u_j : infected_levels) {
    log_sum += std::log1p(-std::min(u_i, u_j));
  }
  return -std::expm1(log_sum);
}

std::vector<double> infected_activity_levels(const PopulationState& state,
                                             const ActionProfile& actions) {
  if (actions.levels.size() != state.states.size()) {
    throw std::invalid_argument("action profile size does not match population");
  }
  std::vector<double> levels;
  levels.reserve(state.states.size());
  for (int i = 0; i < state.size(); ++i) {
    if (is_infected(state.states[i])) levels.push_back(actions.levels[i]);
  }
  return levels;
}

PopulationState step(const PopulationState& state, const ActionProfile& actions,
                     Rng& rng) {
  actions.validate();
  const std::vector<double> infected = infected_activity_levels(state, actions);

  PopulationState next = state;
  next.day = state.day + 1;
  for (int i = 0; i < state.size(); ++i) {
    if (is_infected(state.states[i])) continue;
    const double p = infection_probability(actions.levels[i], infected);
    if (uniform01(rng) < p) next.states[i] = AgentState::infected;
  }
  return next;
}

double expected_new_infections(const PopulationState& state,
                               const ActionProfile& actions) {
  actions.validate();
  const std::vector<double> infected = infected_activity_levels(state, actions);
  double expected = 0.0;
  for (int i = 0; i < state.size(); ++i) {
    if (is_infected(state.states[i])) continue;
    expected += infection_probability(actions.levels[i], infected);
  }
  return expected;
}

}  // namespace microepi
