#pragma once

#include <functional>
#include <span>

#include "microepi/core.hpp"

namespace microepi::nash {

using CostFn = std::function<double(double)>;

// Default activity penalty p(u) = exp(1 / (u - 1)): strictly decreasing,
// p(0) = 1/e and p(1) = 0. The exponent is evaluated with u clamped at
// 1 - 1e-12 and u = 1 returns exactly 0, which is also the clamped limit.
double p_default(double u);

// Linear shaping term q(u) = u, charged to infected agents so that staying
// active while contagious carries a price.
double linear_shaping(double u);

// Parameters of the one-day cost
//   healthy:  1 - (1 - min(u, u_infected))^m + alpha * p(u)
//   infected: 1 + alpha * p(u)            [+ q(u) when shaped]
struct CostParams {
  double alpha = 1.0;                 // weight of the activity penalty
  CostFn activity_cost = p_default;   // p
  CostFn shaping = linear_shaping;    // q, used only when `shaped` is passed
  double discount = 0.0;              // stored for callers; the stage solvers
                                      // treat the game as single-stage

  void validate() const;  // throws std::invalid_argument
};

// Expected one-day cost when all m infected agents act at u_infected.
// m = 0 reduces the healthy cost to alpha * p(u).
double expected_stage_cost(AgentState state, double u, int m, double u_infected,
                           const CostParams& params, bool shaped);

// Same cost against an arbitrary profile of infected activity levels,
// evaluated through infection_probability. Used to cross-check the
// homogeneous closed form.
double expected_stage_cost_general(AgentState state, double u,
                                   std::span<const double> infected_levels,
                                   const CostParams& params, bool shaped);

struct MinResult {
  double arg;
  double value;
};

// Global minimizer of f over [0, 1]: a scan over a grid of step 1e-4
// followed by golden-section refinement of the best bracket. Ties are broken
// toward the smaller argument. Throws std::runtime_error when f returns a
// non-finite value.
MinResult scalar_minimize(const std::function<double(double)>& f, double tol = 1e-10);

// Symmetric stage equilibrium for m infected among M agents. Infected agents
// minimize their own cost first (it does not depend on anyone else); healthy
// agents best-respond to the resulting infected level.
struct StageEquilibrium {
  double u_healthy = 0.0;
  double u_infected = 0.0;
  double cost_healthy = 0.0;
  double cost_infected = 0.0;
  double system_cost = 0.0;  // m * cost_infected + (M - m) * cost_healthy
  int infected_count = 0;
  int population = 0;
};

StageEquilibrium stage_nash(int m, int M, const CostParams& params, bool shaped);

// Centralized optimum: the pair (u_healthy, u_infected) minimizing the
// unshaped total cost over [0, 1]^2, found on a 400 x 400 grid and refined
// by coordinate descent with scalar_minimize.
struct SystemOptimum {
  double u_healthy = 0.0;
  double u_infected = 0.0;
  double total_cost = 0.0;
};

SystemOptimum system_optimum(int m, int M, const CostParams& params);

// Gap between the unshaped equilibrium total cost and the centralized
// optimum; nonnegative up to solver tolerance.
double welfare_loss(int m, int M, const CostParams& params);

namespace detail {
// Minimizer over the unit square used by system_optimum, exposed so tests
// can run the same search on modified objectives.
SystemOptimum minimize_unit_square(
    const std::function<double(double, double)>& objective);
}  // namespace detail

}  // namespace microepi::nash
