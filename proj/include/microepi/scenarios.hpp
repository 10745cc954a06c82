#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "microepi/core.hpp"

namespace microepi {

// Intervention policies for the Monte Carlo studies.
enum class ScenarioCase {
  no_intervention,      // everyone keeps the normal activity level
  immediate_isolation,  // infected agents drop to the reduced level at once
  delayed_isolation,    // infected agents drop after isolation_delay days
  lockdown,             // everyone at the reduced level from day 0
};

struct ScenarioSpec {
  ScenarioCase scenario = ScenarioCase::no_intervention;
  int population = 1000;        // M
  int initially_infected = 1;   // m0, placed at agent indices 0..m0-1
  double normal_level = 1e-3;   // u
  double reduced_level = 1e-4;  // u*, used by isolation and lockdown policies
  int isolation_delay = 1;      // T, delayed_isolation only
  int horizon = 4000;           // days simulated per trajectory
  int runs = 200;               // trajectories per ensemble
  std::uint64_t seed = 0;

  void validate() const;  // throws std::invalid_argument
};

// Activity level prescribed by the scenario policy for one agent on one day.
// days_since_infection counts days since the agent's state first became
// infected (0 on that first day) and is std::nullopt for healthy agents.
// Under delayed isolation an agent infected on day d acts at the normal
// level until day d+T-1 and at the reduced level from day d+T on.
double policy_activity(const ScenarioSpec& spec, AgentState state,
                       std::optional<int> days_since_infection, int day);

// One seeded trajectory of the infected count, m_0..m_horizon
// (length horizon+1). The random stream is derived from (spec.seed,
// run_index), so trajectories are reproducible individually and independent
// of each other. Once everyone is infected the count is recorded as constant
// without consuming further draws.
std::vector<int> run_trajectory(const ScenarioSpec& spec, int run_index);

// Ensemble statistics over spec.runs trajectories, reduced in run order.
struct EnsembleResult {
  std::vector<double> mean;  // length horizon+1
  std::vector<int> min;
  std::vector<int> max;
  // Per-run trajectories, retained only when requested.
  std::vector<std::vector<int>> runs;
};

// Runs the ensemble, possibly across threads; results are identical for any
// thread count because every trajectory owns a derived stream and the
// reduction follows run indices.
EnsembleResult monte_carlo(const ScenarioSpec& spec, bool retain_runs = false,
                           int threads = 0);

}  // namespace microepi
