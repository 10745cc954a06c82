#include "microepi/si.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace microepi::si {

void SIParams::validate() const {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("beta must be finite and >= 0");
  }
  if (!(initial_fraction >= 0.0 && initial_fraction <= 1.0)) {
    throw std::invalid_argument("initial fraction must lie in [0, 1]");
  }
  if (days < 1) throw std::invalid_argument("days must be >= 1");
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("dt must be finite and > 0");
  }
}

double si_derivative(double s, double beta) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw std::domain_error("infected fraction must lie in [0, 1], got " +
                            std::to_string(s));
  }
  return beta * s * (1.0 - s);
}

std::vector<TimePoint> integrate(const SIParams& params) {
  params.validate();

  const long long substeps = std::max(1LL, std::llround(1.0 / params.dt));
  const double h = 1.0 / static_cast<double>(substeps);
  // Unchecked right hand side: Runge-Kutta stage points may poke a rounding
  // error outside [0, 1] even though the solution itself stays inside.
  const auto f = [beta = params.beta](double s) { return beta * s * (1.0 - s); };

  double s = std::clamp(params.initial_fraction, 0.0, 1.0);
  std::vector<TimePoint> out;
  out.reserve(static_cast<std::size_t>(params.days) + 1);
  out.push_back({0.0, s});

  for (int day = 1; day <= params.days; ++day) {
    for (long long j = 0; j < substeps; ++j) {
      const double k1 = f(s);
      const double k2 = f(s + 0.5 * h * k1);
      const double k3 = f(s + 0.5 * h * k2);
      const double k4 = f(s + h * k3);
      s += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      s = std::clamp(s, 0.0, 1.0);
    }
    out.push_back({static_cast<double>(day), s});
  }
  return out;
}

}  // namespace microepi::si
