#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "microepi/rng.hpp"

namespace microepi {

// Health state of a single agent. Infection is absorbing: no recovery, no
// death, no incubation period.
enum class AgentState : std::uint8_t { healthy = 0, infected = 1 };

inline bool is_infected(AgentState s) { return s == AgentState::infected; }

// Snapshot of the whole population on a given day.
struct PopulationState {
  std::vector<AgentState> states;
  int day = 0;

  int size() const { return static_cast<int>(states.size()); }
  int infected_count() const;
  std::vector<int> infected_indices() const;

  // Agents 0..initially_infected-1 start infected, the rest healthy, day 0.
  static PopulationState initial(int population, int initially_infected);
};

// Per-agent activity levels for one day, each in [0, 1].
struct ActionProfile {
  std::vector<double> levels;
  void validate() const;
};

// Probability that two agents meet during one day: the minimum of their
// activity levels. Throws std::domain_error outside [0, 1].
double meeting_probability(double u_i, double u_j);

// Probability that a healthy agent with activity u_i becomes infected within
// one day, given the activity levels of the currently infected agents:
//
//   1 - prod_j (1 - min(u_i, u_j))
//
// Meetings with distinct infected agents are independent and any meeting with
// an infected agent transmits. A single factor is returned as min(u_i, u_j)
// directly so it is exact; up to 64 factors use the plain product; larger
// sets accumulate log1p terms to avoid underflow.
double infection_probability(double u_i, std::span<const double> infected_levels);

// Activity levels of the infected agents under the given profile, in
// ascending agent order.
std::vector<double> infected_activity_levels(const PopulationState& state,
                                             const ActionProfile& actions);

// One day of the stochastic dynamics. Healthy agents independently become
// infected with infection_probability(...); infected agents stay infected;
// the day counter advances. Exactly one uniform draw is consumed per healthy
// agent, in ascending agent order, so a seeded run is reproducible.
PopulationState step(const PopulationState& state, const ActionProfile& actions,
                     Rng& rng);

// Exact expectation of the one-day increment of the infected count:
// the sum of infection_probability over the healthy agents.
double expected_new_infections(const PopulationState& state,
                               const ActionProfile& actions);

namespace detail {
// The two evaluation paths for the stay-healthy probability
// prod_j (1 - min(u_i, u_j)); they agree to ~1e-12 relative.
double stay_healthy_product(double u_i, std::span<const double> infected_levels);
double stay_healthy_log(double u_i, std::span<const double> infected_levels);
}  // namespace detail

}  // namespace microepi
