#include "microepi/nash.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace microepi::nash {

namespace {

void check_unit_interval(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error(std::string(name) + " must lie in [0, 1], got " +
                            std::to_string(x));
  }
}

double checked_eval(const std::function<double(double)>& f, double u) {
  const double v = f(u);
  if (!std::isfinite(v)) {
    throw std::runtime_error("objective returned a non-finite value at u = " +
                             std::to_string(u));
  }
  return v;
}

}  // namespace

double p_default(double u) {
  check_unit_interval(u, "activity level");
  if (u == 1.0) return 0.0;
  const double clamped = std::min(u, 1.0 - 1e-12);
  return std::exp(1.0 / (clamped - 1.0));
}

double linear_shaping(double u) {
  check_unit_interval(u, "activity level");
  return u;
}

void CostParams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("alpha must be finite and > 0");
  }
  if (!activity_cost) throw std::invalid_argument("activity cost function is required");
  if (!(discount >= 0.0 && discount < 1.0)) {
    throw std::invalid_argument("discount must lie in [0, 1)");
  }
  if (shaping && shaping(0.0) != 0.0) {
    throw std::invalid_argument("shaping term must vanish at u = 0");
  }
}

double expected_stage_cost(AgentState state, double u, int m, double u_infected,
                           const CostParams& params, bool shaped) {
  params.validate();
  check_unit_interval(u, "activity level");
  check_unit_interval(u_infected, "infected activity level");
  if (m < 0) throw std::invalid_argument("infected count must be >= 0");
  if (shaped && !params.shaping) {
    throw std::invalid_argument("shaped cost requested without a shaping term");
  }

  if (is_infected(state)) {
    return 1.0 + params.alpha * params.activity_cost(u) +
           (shaped ? params.shaping(u) : 0.0);
  }
  const double meet = std::min(u, u_infected);
  return 1.0 - std::pow(1.0 - meet, static_cast<double>(m)) +
         params.alpha * params.activity_cost(u);
}

double expected_stage_cost_general(AgentState state, double u,
                                   std::span<const double> infected_levels,
                                   const CostParams& params, bool shaped) {
  params.validate();
  check_unit_interval(u, "activity level");
  if (shaped && !params.shaping) {
    throw std::invalid_argument("shaped cost requested without a shaping term");
  }
  if (is_infected(state)) {
    return 1.0 + params.alpha * params.activity_cost(u) +
           (shaped ? params.shaping(u) : 0.0);
  }
  return infection_probability(u, infected_levels) +
         params.alpha * params.activity_cost(u);
}

MinResult scalar_minimize(const std::function<double(double)>& f, double tol) {
  if (!f) throw std::invalid_argument("objective is required");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be > 0");

  // Coarse scan over an even grid.
  constexpr int kGrid = 10000;
  std::vector<double> values(kGrid + 1);
  for (int j = 0; j <= kGrid; ++j) {
    values[j] = checked_eval(f, static_cast<double>(j) / kGrid);
  }
  int first = 0;
  for (int j = 1; j <= kGrid; ++j) {
    if (values[j] < values[first]) first = j;
  }
  const double best_value = values[first];

  // Exact ties need care. A run of equal minima that reaches u = 1 is the
  // floating-point floor of a strictly decreasing objective (exp(1/(u-1))
  // underflows to exactly 0 well before u reaches 1), so it resolves to the
  // endpoint; every other tie keeps the smaller u (the more conservative
  // activity level).
  int run_end = first;
  while (run_end < kGrid && values[run_end + 1] == best_value) ++run_end;
  bool ties_beyond_run = false;
  for (int j = run_end + 1; j <= kGrid; ++j) {
    if (values[j] == best_value) {
      ties_beyond_run = true;
      break;
    }
  }
  if (run_end > first) {
    if (first == 0) return {0.0, best_value};
    if (run_end == kGrid && !ties_beyond_run) return {1.0, best_value};
    return {static_cast<double>(first) / kGrid, best_value};
  }

  // Golden-section refinement of the bracket around the grid winner.
  const double best_u = static_cast<double>(first) / kGrid;
  const double best_f = best_value;
  double a = std::max(0.0, best_u - 1.0 / kGrid);
  double b = std::min(1.0, best_u + 1.0 / kGrid);
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = checked_eval(f, c);
  double fd = checked_eval(f, d);
  for (int it = 0; it < 200 && (b - a) > tol; ++it) {
    if (fc <= fd) {  // keep the left subinterval on ties
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = checked_eval(f, c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = checked_eval(f, d);
    }
  }

  MinResult result{best_u, best_f};
  const std::array<double, 4> candidates{a, 0.5 * (a + b), b, best_u};
  for (double u : candidates) {
    const double v = checked_eval(f, u);
    if (v < result.value || (v == result.value && u < result.arg)) {
      result = {u, v};
    }
  }
  return result;
}

StageEquilibrium stage_nash(int m, int M, const CostParams& params, bool shaped) {
  params.validate();
  if (M < 1) throw std::invalid_argument("population must be >= 1");
  if (m < 0 || m > M) throw std::invalid_argument("infected count must lie in [0, population]");
  if (shaped && !params.shaping) {
    throw std::invalid_argument("shaped equilibrium requested without a shaping term");
  }

  const MinResult infected = scalar_minimize([&](double u) {
    return params.alpha * params.activity_cost(u) + (shaped ? params.shaping(u) : 0.0);
  });
  const MinResult healthy = scalar_minimize([&](double u) {
    return expected_stage_cost(AgentState::healthy, u, m, infected.arg, params, shaped);
  });

  StageEquilibrium eq;
  eq.u_infected = infected.arg;
  eq.u_healthy = healthy.arg;
  eq.cost_infected =
      expected_stage_cost(AgentState::infected, infected.arg, m, infected.arg, params, shaped);
  eq.cost_healthy = healthy.value;
  eq.infected_count = m;
  eq.population = M;
  eq.system_cost = m * eq.cost_infected + (M - m) * eq.cost_healthy;
  return eq;
}

namespace detail {

SystemOptimum minimize_unit_square(
    const std::function<double(double, double)>& objective) {
  if (!objective) throw std::invalid_argument("objective is required");

  // Coarse 400 x 400 scan; strict improvement prefers the smaller
  // u_healthy, then the smaller u_infected.
  constexpr int kGrid = 399;
  SystemOptimum best{0.0, 0.0, objective(0.0, 0.0)};
  for (int i = 0; i <= kGrid; ++i) {
    const double uh = static_cast<double>(i) / kGrid;
    for (int j = 0; j <= kGrid; ++j) {
      const double ui = static_cast<double>(j) / kGrid;
      const double v = objective(uh, ui);
      if (v < best.total_cost) best = {uh, ui, v};
    }
  }

  // Coordinate descent; each half step is a global scan along its axis, so
  // the value never increases.
  for (int round = 0; round < 50; ++round) {
    const MinResult along_h =
        scalar_minimize([&](double u) { return objective(u, best.u_infected); });
    const MinResult along_i =
        scalar_minimize([&](double u) { return objective(along_h.arg, u); });
    const SystemOptimum candidate{along_h.arg, along_i.arg, along_i.value};
    const bool moved = std::abs(candidate.u_healthy - best.u_healthy) > 1e-13 ||
                       std::abs(candidate.u_infected - best.u_infected) > 1e-13;
    const double improvement = best.total_cost - candidate.total_cost;
    // Accept exact ties as well: when a coordinate's contribution saturates
    // below one ulp of the total, the axis minimizer's tie resolution (its
    // plateau and smaller-argument rules) is the one that should stick.
    if (candidate.total_cost <= best.total_cost) best = candidate;
    if (!moved || improvement < 1e-15 * (1.0 + std::abs(best.total_cost))) break;
  }
  return best;
}

}  // namespace detail

SystemOptimum system_optimum(int m, int M, const CostParams& params) {
  params.validate();
  if (M < 1) throw std::invalid_argument("population must be >= 1");
  if (m < 0 || m > M) throw std::invalid_argument("infected count must lie in [0, population]");

  const auto total = [&](double u_healthy, double u_infected) {
    const double healthy = expected_stage_cost(AgentState::healthy, u_healthy, m,
                                               u_infected, params, false);
    const double infected = expected_stage_cost(AgentState::infected, u_infected, m,
                                                u_infected, params, false);
    return m * infected + (M - m) * healthy;
  };
  return detail::minimize_unit_square(total);
}

double welfare_loss(int m, int M, const CostParams& params) {
  const StageEquilibrium eq = stage_nash(m, M, params, false);
  const SystemOptimum opt = system_optimum(m, M, params);
  return eq.system_cost - opt.total_cost;
}

}  // namespace microepi::nash
