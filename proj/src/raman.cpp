#include "sagnac/raman.hpp"

#include <cmath>

#include "sagnac/error.hpp"
#include "sagnac/units.hpp"

namespace sagnac {
namespace {

constexpr double ps_per_fs = 1e-3;

}  // namespace

Complex isotropic_shape(const RamanModelParams& model, double omega) {
  const double t1 = model.tau1_fs * ps_per_fs;
  const double t2 = model.tau2_fs * ps_per_fs;
  const double w0sq = 1.0 / (t1 * t1) + 1.0 / (t2 * t2);
  return w0sq / Complex(w0sq - omega * omega, -2.0 * omega / t2);
}

Complex anisotropic_shape(const RamanModelParams& model, double omega) {
  const double tb = model.tau_b_fs * ps_per_fs;
  const Complex s(1.0 / tb, -omega);
  return 2.0 / (tb * s) - 1.0 / (tb * tb * s * s);
}

RamanSpectra raman_spectrum(const FiberParams& fiber, double omega) {
  const auto& m = fiber.raman_model;
  RamanSpectra r;
  r.omega = omega;
  r.r_a = m.f_a * isotropic_shape(m, omega);
  r.r_b = m.f_b * anisotropic_shape(m, omega);
  r.g_a = 2.0 * r.r_a.imag();
  r.g_b = 2.0 * r.r_b.imag();
  const double g = fiber.gamma;
  const double fr = fiber.f_raman;
  r.xi_parallel = 2.0 * g + fr * g * (r.r_a + r.r_b - 1.0);
  r.xi_perp = 2.0 * g / 3.0 + fr * g * (r.r_a + 0.5 * r.r_b - 2.0 / 3.0);
  return r;
}

double thermal_occupancy(double omega, double temperature_k) {
  if (omega == 0.0) throw ValidationError("thermal_occupancy: zero detuning diverges");
  if (!(temperature_k > 0.0)) throw ValidationError("thermal_occupancy: temperature must be > 0");
  const double x = units::hbar * std::abs(omega) * units::ps_per_s / (units::boltzmann * temperature_k);
  return 1.0 / std::expm1(x);
}

std::vector<double> raman_flux(const SwitchScenario& scenario, std::span<const double> mu_plus) {
  const double omega = scenario.detuning();
  const auto spec = raman_spectrum(scenario.fiber, std::abs(omega));
  const double n_th = thermal_occupancy(omega, scenario.temperature_k);
  const double bandwidth_hz = scenario.bandwidth_ghz * units::hz_per_ghz;
  const double scale = scenario.fiber.gamma * scenario.fiber.f_raman * scenario.pump.peak_power() *
                       bandwidth_hz * n_th * (spec.g_a + 1.5 * spec.g_b);
  std::vector<double> flux(mu_plus.size());
  for (std::size_t i = 0; i < flux.size(); ++i) flux[i] = scale * mu_plus[i];
  return flux;
}

double raman_photons_per_bt(const FiberParams& fiber, double signal_nm, double pump_nm,
                            double temperature_k) {
  const double omega = units::detuning(signal_nm, pump_nm);
  const auto spec = raman_spectrum(fiber, std::abs(omega));
  const double n_th = thermal_occupancy(omega, temperature_k);
  const double xi_sum = (spec.xi_parallel + spec.xi_perp).real();
  if (!(xi_sum > 0.0)) throw ValidationError("raman: non-positive XPM coefficient sum");
  return fiber.gamma * fiber.f_raman * n_th * (units::pi / 4.0) * (2.0 * spec.g_a + 3.0 * spec.g_b) /
         xi_sum;
}

NoiseReport raman_photon_number(const SwitchScenario& scenario) {
  scenario.validate();
  NoiseReport rep;
  rep.omega = scenario.detuning();
  rep.spectra = raman_spectrum(scenario.fiber, std::abs(rep.omega));
  rep.n_th = thermal_occupancy(rep.omega, scenario.temperature_k);
  rep.window = window_metrics(scenario.fiber, scenario.pump, rep.spectra.xpm());
  if (!rep.window.walk_through_ok) {
    throw ValidationError(
        "raman_photon_number: walk-through condition L > 2 sigma/|beta_+| fails, "
        "so window_metrics defines no tau_w");
  }
  rep.photons_per_bt = raman_photons_per_bt(scenario.fiber, scenario.signal_wavelength_nm,
                                            scenario.pump.wavelength_nm, scenario.temperature_k);
  const double bt = scenario.bandwidth_ghz * units::hz_per_ghz * rep.window.tau_w / units::ps_per_s;
  rep.n_r = rep.photons_per_bt * bt;
  rep.fidelity = entanglement_fidelity(rep.n_r);

  rep.t = window_time_axis(scenario.fiber, 1.0, 10.0 * scenario.pump.sigma());
  std::vector<double> mu(rep.t.size());
  const double sigma = scenario.pump.sigma();
  for (std::size_t i = 0; i < mu.size(); ++i) {
    mu[i] = gaussian_mu(scenario.fiber, sigma, Direction::co, rep.t[i]);
  }
  rep.flux_ir = raman_flux(scenario, mu);
  const double out_loss = std::exp(-2.0 * scenario.raman_loss());
  for (auto& f : rep.flux_ir) f *= out_loss;
  return rep;
}

}  // namespace sagnac
