#include "microepi/scenarios.hpp"

#include <atomic>
#include <stdexcept>
#include <thread>

namespace microepi {

void ScenarioSpec::validate() const {
  if (population < 1) throw std::invalid_argument("population must be >= 1");
  if (initially_infected < 1 || initially_infected > population) {
    throw std::invalid_argument("initially infected count must lie in [1, population]");
  }
  if (!(normal_level >= 0.0 && normal_level <= 1.0)) {
    throw std::invalid_argument("normal activity level must lie in [0, 1]");
  }
  if (!(reduced_level >= 0.0 && reduced_level <= 1.0)) {
    throw std::invalid_argument("reduced activity level must lie in [0, 1]");
  }
  if (reduced_level > normal_level) {
    throw std::invalid_argument("reduced activity level must not exceed the normal level");
  }
  if (isolation_delay < 1) throw std::invalid_argument("isolation delay must be >= 1");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (runs < 1) throw std::invalid_argument("runs must be >= 1");
}

double policy_activity(const ScenarioSpec& spec, AgentState state,
                       std::optional<int> days_since_infection, int day) {
  (void)day;  // policies are stationary; the day enters only through the delay
  if (is_infected(state) && !days_since_infection.has_value() &&
      spec.scenario == ScenarioCase::delayed_isolation) {
    throw std::invalid_argument("delayed isolation requires days_since_infection for infected agents");
  }
  switch (spec.scenario) {
    case ScenarioCase::no_intervention:
      return spec.normal_level;
    case ScenarioCase::lockdown:
      return spec.reduced_level;
    case ScenarioCase::immediate_isolation:
      return is_infected(state) ? spec.reduced_level : spec.normal_level;
    case ScenarioCase::delayed_isolation:
      if (is_infected(state) && *days_since_infection >= spec.isolation_delay) {
        return spec.reduced_level;
      }
      return spec.normal_level;
  }
  throw std::invalid_argument("unknown scenario case");
}

std::vector<int> run_trajectory(const ScenarioSpec& spec, int run_index) {
  spec.validate();
  if (run_index < 0 || run_index >= spec.runs) {
    throw std::invalid_argument("run index out of range");
  }

  Rng rng = derive_stream(spec.seed, static_cast<std::uint64_t>(run_index));
  PopulationState state =
      PopulationState::initial(spec.population, spec.initially_infected);
  // Day on which each agent's state first became infected; -1 while healthy.
  std::vector<int> infection_day(static_cast<std::size_t>(spec.population), -1);
  for (int i = 0; i < spec.initially_infected; ++i) infection_day[i] = 0;

  std::vector<int> counts;
  counts.reserve(static_cast<std::size_t>(spec.horizon) + 1);
  int m = spec.initially_infected;
  counts.push_back(m);

  ActionProfile actions;
  actions.levels.assign(static_cast<std::size_t>(spec.population), 0.0);

  for (int day = 0; day < spec.horizon && m < spec.population; ++day) {
    for (int i = 0; i < spec.population; ++i) {
      const std::optional<int> since =
          infection_day[i] >= 0 ? std::optional<int>(day - infection_day[i])
                                : std::nullopt;
      actions.levels[i] = policy_activity(spec, state.states[i], since, day);
    }
    state = step(state, actions, rng);
    for (int i = 0; i < spec.population; ++i) {
      if (is_infected(state.states[i]) && infection_day[i] < 0) {
        infection_day[i] = state.day;
      }
    }
    m = state.infected_count();
    counts.push_back(m);
  }
  // Saturated (or horizon reached): the count is constant from here on.
  counts.resize(static_cast<std::size_t>(spec.horizon) + 1, m);
  return counts;
}

EnsembleResult monte_carlo(const ScenarioSpec& spec, bool retain_runs, int threads) {
  spec.validate();

  std::vector<std::vector<int>> trajectories(static_cast<std::size_t>(spec.runs));
  unsigned worker_count = threads > 0
                              ? static_cast<unsigned>(threads)
                              : std::max(1u, std::thread::hardware_concurrency());
  worker_count = std::min<unsigned>(worker_count, static_cast<unsigned>(spec.runs));

  if (worker_count <= 1) {
    for (int r = 0; r < spec.runs; ++r) trajectories[r] = run_trajectory(spec, r);
  } else {
    std::atomic<int> next{0};
    auto worker = [&] {
      for (;;) {
        const int r = next.fetch_add(1);
        if (r >= spec.runs) return;
        trajectories[r] = run_trajectory(spec, r);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(worker_count);
    for (unsigned t = 0; t < worker_count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  const std::size_t len = static_cast<std::size_t>(spec.horizon) + 1;
  EnsembleResult result;
  result.mean.assign(len, 0.0);
  result.min.assign(len, spec.population);
  result.max.assign(len, 0);
  // Reduce in run order so the floating point sums are schedule independent.
  for (int r = 0; r < spec.runs; ++r) {
    const std::vector<int>& traj = trajectories[r];
    for (std::size_t k = 0; k < len; ++k) {
      result.mean[k] += traj[k];
      result.min[k] = std::min(result.min[k], traj[k]);
      result.max[k] = std::max(result.max[k], traj[k]);
    }
  }
  for (std::size_t k = 0; k < len; ++k) result.mean[k] /= spec.runs;
  if (retain_runs) result.runs = std::move(trajectories);
  return result;
}

}  // namespace microepi
