#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "microepi/core.hpp"

namespace microepi::marl {

// Tabular action-value function shared by every agent, indexed by
// (own state x, infected count m, action index a). All agents read and write
// the same table, so experience is pooled across the population.
struct QTable {
  int population = 0;                 // m ranges over 0..population
  std::vector<double> action_levels;  // strictly increasing, in [0, 1]
  std::vector<double> values;
  std::vector<std::int64_t> visits;

  int actions() const { return static_cast<int>(action_levels.size()); }

  double& q(AgentState x, int m, int a);
  double q(AgentState x, int m, int a) const;
  std::int64_t& visit_count(AgentState x, int m, int a);
  std::int64_t visit_count(AgentState x, int m, int a) const;

  // Smallest value in the row (x, m); the bootstrap target.
  double min_value(AgentState x, int m) const;
  // Deterministic argmin for reporting: the lowest action index among the
  // minimizers. Action selection during play breaks ties randomly instead.
  int greedy_action(AgentState x, int m) const;

  static QTable init(int population, std::vector<double> levels, double q_init);
};

struct TrainConfig {
  int population = 50;        // M
  int initially_infected = 1; // m0, agents 0..m0-1
  // Selectable activity levels; empty means the default three-level menu
  // {0, 1/M, 10/M} (levels above 1 are clamped and duplicates removed).
  std::vector<double> action_levels;
  double alpha = 1.0;   // weight of the activity penalty p(u) = exp(1/(u-1))
  double gamma = 0.0;   // discount
  double eta = 1.0;     // learning rate; 1 makes an update an exact overwrite
  int max_episodes = 200;
  int horizon = 50;     // days per episode
  bool shaped = false;  // add q(u) = u to the running cost of infected agents
  double q_init = 10.0; // optimistic initial value, above any reachable cost
  std::uint64_t seed = 0;

  std::vector<double> effective_action_levels() const;
  void validate() const;  // throws std::invalid_argument
};

// Exploration schedule 0.5 * (1 - episode / max_episodes); episodes are
// numbered 1..max_episodes during training, so the last episode is greedy.
double epsilon_schedule(int episode, int max_episodes);

// Epsilon-greedy selection. Draw order: one uniform coin; on exploration one
// index draw over all actions; on exploitation one index draw over the
// minimizers only when the row minimum is attained more than once.
int select_action(const QTable& table, AgentState x, int m, double eps, Rng& rng);

// One-step temporal difference update against the shared table:
//   Q(x, m, a) += eta * (cost + gamma * min_a' Q(x', m', a') - Q(x, m, a))
// With eta = 1 the entry becomes exactly the target; a zero difference
// leaves the entry untouched. The visit counter always advances.
void td_update(QTable& table, AgentState x, int m, int a, double cost,
               AgentState x_next, int m_next, double gamma, double eta);

struct Transition {
  int agent;
  AgentState state;
  int infected_count;
  int action;
  double cost;
  AgentState next_state;
  int next_infected_count;
};

struct EpisodeRecord {
  double epsilon = 0.0;
  std::vector<int> m_trajectory;  // m at day 0..(days actually run)
  std::vector<Transition> transitions;

  int final_m() const { return m_trajectory.empty() ? 0 : m_trajectory.back(); }
  double cumulative_cost() const;
};

// One episode against the environment. Each day: every agent selects an
// action (ascending agent order), the population advances one day, then every
// agent applies its update (ascending agent order) with the realized cost
//   x_next + alpha * p(u)  [+ x * q(u) when shaped].
// The episode ends after `horizon` days or after the day everyone is
// infected, whichever comes first; at least one day always runs.
EpisodeRecord run_episode(QTable& table, const TrainConfig& cfg, double eps, Rng& rng);

// Greedy evaluation rollout: same day loop with eps = 0 and no updates.
std::vector<int> greedy_rollout(const QTable& table, const TrainConfig& cfg, Rng& rng);

struct TrainResult {
  QTable table;
  std::vector<EpisodeRecord> episodes;
};

using EpisodeObserver =
    std::function<void(int episode, double eps, const QTable& table,
                       const EpisodeRecord& record)>;

// Full training loop. Episode e = 1..max_episodes runs with exploration
// epsilon_schedule(e, max_episodes) on the random stream derived from
// (seed, e), so a seed pins the entire run.
TrainResult train(const TrainConfig& cfg, const EpisodeObserver& observer = {});

}  // namespace microepi::marl
