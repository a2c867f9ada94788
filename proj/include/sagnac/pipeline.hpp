#pragma once

#include <span>

#include "sagnac/params.hpp"
#include "sagnac/phase.hpp"
#include "sagnac/propagator.hpp"

namespace sagnac {

/// Real XPM coefficients for the scenario's signal-pump detuning.
XpmCoefficients signal_xpm(const SwitchScenario& scenario);

/// Scenario pump re-scaled to the given two-polarization energy.
PumpConfig pump_with_energy(const PumpConfig& pump, double energy_pj);

/// Closed-form Phi_+- on `times` for a Gaussian pump of energy E.
PhasePair analytic_phases(const SwitchScenario& scenario, double energy_pj,
                          std::span<const double> times);

struct PumpDiagnostics {
  std::size_t step_count = 0;
  double edge_power_fraction = 0.0;
  double spectral_edge_fraction = 0.0;
};

/// Split-step pump propagation followed by numeric Phi_+- on `times`.
PhasePair numeric_phases(const SwitchScenario& scenario, double energy_pj,
                         const SolverSettings& settings, std::span<const double> times,
                         PumpDiagnostics* diagnostics = nullptr);

}  // namespace sagnac
