#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "sagnac/error.hpp"
#include "sagnac/pipeline.hpp"
#include "sagnac/pulse.hpp"
#include "sagnac/raman.hpp"
#include "sagnac/switch.hpp"

namespace sagnac {

XpmCoefficients signal_xpm(const SwitchScenario& scenario) {
  return raman_spectrum(scenario.fiber, std::abs(scenario.detuning())).xpm();
}

PumpConfig pump_with_energy(const PumpConfig& pump, double energy_pj) {
  PumpConfig p = pump;
  p.energy_pj = energy_pj;
  p.peak_power_w.reset();
  return p.resolved();
}

PhasePair analytic_phases(const SwitchScenario& scenario, double energy_pj,
                          std::span<const double> times) {
  const auto xi = signal_xpm(scenario);
  const auto pump = pump_with_energy(scenario.pump, energy_pj);
  return PhasePair::combine(xpm_phase_gaussian(scenario.fiber, pump, xi, Direction::co, times),
                            xpm_phase_gaussian(scenario.fiber, pump, xi, Direction::counter, times),
                            PhaseProvenance::gaussian_analytic);
}

PhasePair numeric_phases(const SwitchScenario& scenario, double energy_pj,
                         const SolverSettings& settings, std::span<const double> times,
                         PumpDiagnostics* diagnostics) {
  const auto xi = signal_xpm(scenario);
  const auto pump = pump_with_energy(scenario.pump, energy_pj);
  const auto grid = make_grid(scenario.grid.n_samples, scenario.grid.t_span_ps);
  SolverSettings s = settings;
  s.store_snapshots = true;
  const auto record = propagate_pump(build_pump(pump, grid), scenario.fiber, s);
  if (diagnostics) {
    diagnostics->step_count = record.step_count;
    diagnostics->edge_power_fraction = record.edge_power_fraction;
    diagnostics->spectral_edge_fraction = record.spectral_edge_fraction;
  }
  return PhasePair::combine(xpm_phase_numeric(record, scenario.fiber, xi, Direction::co, times),
                            xpm_phase_numeric(record, scenario.fiber, xi, Direction::counter, times),
                            PhaseProvenance::numeric);
}

namespace {

double co_phase_plateau(const SwitchScenario& scenario, double energy, SweepMode mode,
                        const SolverSettings& settings, const WindowMetrics& window) {
  const auto xi = signal_xpm(scenario);
  const auto& fiber = scenario.fiber;
  const bool gaussian = scenario.pump.shape == PulseShape::gaussian;
  if (mode == SweepMode::analytic && !gaussian) {
    return co_plateau_phase(fiber, xi, energy);
  }
  const auto pump = pump_with_energy(scenario.pump, energy);
  std::vector<double> times;
  if (window.walk_through_ok) {
    times = {window.t_center};
  } else {
    times = window_time_axis(fiber, 0.05 * pump.sigma(), 5.0 * pump.sigma());
  }
  PhaseProfile profile;
  if (mode == SweepMode::analytic) {
    profile = xpm_phase_gaussian(fiber, pump, xi, Direction::co, times);
  } else {
    const auto grid = make_grid(scenario.grid.n_samples, scenario.grid.t_span_ps);
    SolverSettings s = settings;
    s.store_snapshots = true;
    const auto record = propagate_pump(build_pump(pump, grid), fiber, s);
    profile = xpm_phase_numeric(record, fiber, xi, Direction::co, times);
  }
  return *std::max_element(profile.phase.begin(), profile.phase.end());
}

}  // namespace

std::vector<SweepPoint> energy_sweep(const SwitchScenario& scenario,
                                     std::span<const double> energies, SweepMode mode,
                                     const SolverSettings& settings, unsigned jobs) {
  scenario.validate();
  for (std::size_t i = 0; i < energies.size(); ++i) {
    if (energies[i] < 0.0) throw ValidationError("energy_sweep: energies must be >= 0");
    if (i > 0 && energies[i] < energies[i - 1]) {
      throw ValidationError("energy_sweep: energies must be ascending");
    }
  }
  const auto xi = signal_xpm(scenario);
  WindowMetrics window;
  if (scenario.pump.shape == PulseShape::gaussian) {
    window = window_metrics(scenario.fiber, scenario.pump, xi);
  } else {
    window.t_center = 0.5 * scenario.fiber.length * scenario.fiber.beta_minus;
    window.walk_through_ok = true;
  }
  const double throughput = std::exp(-2.0 * scenario.loss_signal);

  std::vector<SweepPoint> points(energies.size());
  std::vector<std::exception_ptr> errors(energies.size());
  auto evaluate = [&](std::size_t i) {
    try {
      SweepPoint p;
      p.energy_pj = energies[i];
      p.theta_plateau = 0.5 * co_phase_plateau(scenario, energies[i], mode, settings, window);
      const double s = std::sin(p.theta_plateau);
      const double c = std::cos(p.theta_plateau);
      p.t_peak = throughput * s * s;
      p.r_peak = throughput * c * c;
      points[i] = p;
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(energies.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < energies.size(); ++i) evaluate(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < energies.size(); i += workers) evaluate(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return points;
}

}  // namespace sagnac
