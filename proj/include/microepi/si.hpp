#pragma once

#include <vector>

namespace microepi::si {

// Macroscopic susceptible-infected model: the infected fraction s obeys
// ds/dt = beta * s * (1 - s).
struct SIParams {
  double beta = 1.0;              // contact rate, per day
  double initial_fraction = 0.0;  // s(0)
  int days = 100;                 // duration
  double dt = 1e-2;               // integration step, days

  void validate() const;  // throws std::invalid_argument
};

struct TimePoint {
  double t;
  double s;
};

// Right hand side beta * s * (1 - s). Throws std::domain_error when s lies
// outside [0, 1].
double si_derivative(double s, double beta);

// Classical fixed-step fourth order Runge-Kutta integration. The step is
// snapped to 1/round(1/dt) so a whole number of steps lands on each day;
// output is sampled at integer days t = 0..days, with s clamped to [0, 1].
std::vector<TimePoint> integrate(const SIParams& params);

}  // namespace microepi::si
