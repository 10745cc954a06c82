#include "microepi/marl.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "microepi/nash.hpp"

namespace microepi::marl {

namespace {

std::size_t entry_index(const QTable& table, AgentState x, int m, int a) {
  if (m < 0 || m > table.population) {
    throw std::invalid_argument("infected count out of table range");
  }
  if (a < 0 || a >= table.actions()) {
    throw std::invalid_argument("action index out of table range");
  }
  const std::size_t row =
      (is_infected(x) ? 1u : 0u) * static_cast<std::size_t>(table.population + 1) +
      static_cast<std::size_t>(m);
  return row * static_cast<std::size_t>(table.actions()) + static_cast<std::size_t>(a);
}

}  // namespace

double& QTable::q(AgentState x, int m, int a) { return values[entry_index(*this, x, m, a)]; }

double QTable::q(AgentState x, int m, int a) const {
  return values[entry_index(*this, x, m, a)];
}

std::int64_t& QTable::visit_count(AgentState x, int m, int a) {
  return visits[entry_index(*this, x, m, a)];
}

std::int64_t QTable::visit_count(AgentState x, int m, int a) const {
  return visits[entry_index(*this, x, m, a)];
}

double QTable::min_value(AgentState x, int m) const {
  double best = q(x, m, 0);
  for (int a = 1; a < actions(); ++a) best = std::min(best, q(x, m, a));
  return best;
}

int QTable::greedy_action(AgentState x, int m) const {
  int best = 0;
  for (int a = 1; a < actions(); ++a) {
    if (q(x, m, a) < q(x, m, best)) best = a;
  }
  return best;
}

QTable QTable::init(int population, std::vector<double> levels, double q_init) {
  if (population < 1) throw std::invalid_argument("population must be >= 1");
  if (levels.empty()) throw std::invalid_argument("at least one action level is required");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(levels[i] >= 0.0 && levels[i] <= 1.0)) {
      throw std::invalid_argument("action levels must lie in [0, 1]");
    }
    if (i > 0 && !(levels[i] > levels[i - 1])) {
      throw std::invalid_argument("action levels must be strictly increasing");
    }
  }
  QTable table;
  table.population = population;
  table.action_levels = std::move(levels);
  const std::size_t entries = 2u * static_cast<std::size_t>(population + 1) *
                              table.action_levels.size();
  table.values.assign(entries, q_init);
  table.visits.assign(entries, 0);
  return table;
}

std::vector<double> TrainConfig::effective_action_levels() const {
  if (!action_levels.empty()) return action_levels;
  std::vector<double> levels{0.0, 1.0 / population, 10.0 / population};
  for (double& u : levels) u = std::min(u, 1.0);
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  return levels;
}

void TrainConfig::validate() const {
  if (population < 1) throw std::invalid_argument("population must be >= 1");
  if (initially_infected < 1 || initially_infected > population) {
    throw std::invalid_argument("initially infected count must lie in [1, population]");
  }
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("alpha must be finite and > 0");
  }
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("gamma must lie in [0, 1)");
  }
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("eta must lie in (0, 1]");
  }
  if (max_episodes < 1) throw std::invalid_argument("max episodes must be >= 1");
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (!std::isfinite(q_init)) throw std::invalid_argument("q_init must be finite");
  // Delegates the level checks.
  QTable::init(population, effective_action_levels(), q_init);
}

double epsilon_schedule(int episode, int max_episodes) {
  if (max_episodes < 1) throw std::invalid_argument("max episodes must be >= 1");
  if (episode < 0 || episode > max_episodes) {
    throw std::invalid_argument("episode must lie in [0, max episodes]");
  }
  return 0.5 * (1.0 - static_cast<double>(episode) / max_episodes);
}

int select_action(const QTable& table, AgentState x, int m, double eps, Rng& rng) {
  if (!(eps >= 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("eps must lie in [0, 1]");
  }
  const int n = table.actions();
  if (uniform01(rng) < eps) {
    return static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
  }
  double best = table.q(x, m, 0);
  for (int a = 1; a < n; ++a) best = std::min(best, table.q(x, m, a));
  int tied = 0;
  for (int a = 0; a < n; ++a) tied += table.q(x, m, a) == best ? 1 : 0;
  if (tied == 1) {
    for (int a = 0; a < n; ++a) {
      if (table.q(x, m, a) == best) return a;
    }
  }
  // Uniform choice among the minimizers; consumes one draw.
  int pick = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(tied)));
  for (int a = 0; a < n; ++a) {
    if (table.q(x, m, a) == best && pick-- == 0) return a;
  }
  throw std::logic_error("tie break failed to select an action");
}

void td_update(QTable& table, AgentState x, int m, int a, double cost,
               AgentState x_next, int m_next, double gamma, double eta) {
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("gamma must lie in [0, 1)");
  }
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("eta must lie in (0, 1]");
  }
  const double target = cost + gamma * table.min_value(x_next, m_next);
  double& entry = table.q(x, m, a);
  if (eta == 1.0) {
    entry = target;  // exact overwrite, and a zero difference changes nothing
  } else {
    entry += eta * (target - entry);
  }
  ++table.visit_count(x, m, a);
}

double EpisodeRecord::cumulative_cost() const {
  double total = 0.0;
  for (const Transition& t : transitions) total += t.cost;
  return total;
}

namespace {

struct DayOutcome {
  PopulationState next;
  int m_next = 0;
};

// Selection for every agent in ascending order, then one environment step.
DayOutcome play_day(const QTable& table, const TrainConfig& cfg,
                    const PopulationState& state, double eps, Rng& rng,
                    std::vector<int>& chosen_actions, int m) {
  const int M = cfg.population;
  chosen_actions.resize(static_cast<std::size_t>(M));
  ActionProfile actions;
  actions.levels.resize(static_cast<std::size_t>(M));
  for (int i = 0; i < M; ++i) {
    const int a = select_action(table, state.states[i], m, eps, rng);
    chosen_actions[i] = a;
    actions.levels[i] = table.action_levels[a];
  }
  DayOutcome out{step(state, actions, rng), 0};
  out.m_next = out.next.infected_count();
  return out;
}

}  // namespace

EpisodeRecord run_episode(QTable& table, const TrainConfig& cfg, double eps, Rng& rng) {
  cfg.validate();
  if (table.population != cfg.population ||
      table.action_levels != cfg.effective_action_levels()) {
    throw std::invalid_argument("table does not match the training configuration");
  }

  PopulationState state =
      PopulationState::initial(cfg.population, cfg.initially_infected);
  int m = cfg.initially_infected;

  EpisodeRecord record;
  record.epsilon = eps;
  record.m_trajectory.push_back(m);
  std::vector<int> chosen;

  for (int day = 0; day < cfg.horizon; ++day) {
    DayOutcome out = play_day(table, cfg, state, eps, rng, chosen, m);
    for (int i = 0; i < cfg.population; ++i) {
      const double level = table.action_levels[chosen[i]];
      const double cost =
          (is_infected(out.next.states[i]) ? 1.0 : 0.0) +
          cfg.alpha * nash::p_default(level) +
          (cfg.shaped && is_infected(state.states[i]) ? nash::linear_shaping(level)
                                                      : 0.0);
      td_update(table, state.states[i], m, chosen[i], cost, out.next.states[i],
                out.m_next, cfg.gamma, cfg.eta);
      record.transitions.push_back({i, state.states[i], m, chosen[i], cost,
                                    out.next.states[i], out.m_next});
    }
    record.m_trajectory.push_back(out.m_next);
    state = std::move(out.next);
    m = out.m_next;
    if (m == cfg.population) break;  // absorbing for the whole system
  }
  return record;
}

std::vector<int> greedy_rollout(const QTable& table, const TrainConfig& cfg, Rng& rng) {
  cfg.validate();
  if (table.population != cfg.population ||
      table.action_levels != cfg.effective_action_levels()) {
    throw std::invalid_argument("table does not match the training configuration");
  }
  PopulationState state =
      PopulationState::initial(cfg.population, cfg.initially_infected);
  int m = cfg.initially_infected;
  std::vector<int> trajectory{m};
  std::vector<int> chosen;
  for (int day = 0; day < cfg.horizon; ++day) {
    DayOutcome out = play_day(table, cfg, state, 0.0, rng, chosen, m);
    trajectory.push_back(out.m_next);
    state = std::move(out.next);
    m = out.m_next;
    if (m == cfg.population) break;
  }
  return trajectory;
}

TrainResult train(const TrainConfig& cfg, const EpisodeObserver& observer) {
  cfg.validate();
  TrainResult result{
      QTable::init(cfg.population, cfg.effective_action_levels(), cfg.q_init), {}};
  result.episodes.reserve(static_cast<std::size_t>(cfg.max_episodes));
  for (int episode = 1; episode <= cfg.max_episodes; ++episode) {
    const double eps = epsilon_schedule(episode, cfg.max_episodes);
    Rng rng = derive_stream(cfg.seed, static_cast<std::uint64_t>(episode));
    result.episodes.push_back(run_episode(result.table, cfg, eps, rng));
    if (observer) {
      observer(episode, eps, result.table, result.episodes.back());
    }
  }
  return result;
}

}  // namespace microepi::marl
