#pragma once

#include <span>
#include <vector>

#include "sagnac/grid.hpp"
#include "sagnac/params.hpp"
#include "sagnac/phase.hpp"

namespace sagnac {

/// Delayed-response spectra at detuning omega (rad/ps) and the complex XPM
/// coefficients they produce.
///
/// The isotropic and anisotropic responses are weighted shapes,
/// R_a = f_a h_a and R_b = f_b h_b, with unit-area
///   h_a(t) = (tau1^2 + tau2^2) / (tau1 tau2^2) e^{-t/tau2} sin(t/tau1)
///   h_b(t) = (2 tau_b - t) / tau_b^2 e^{-t/tau_b}
/// so that R~_a(0) + R~_b(0) = 1.
struct RamanSpectra {
  double omega = 0.0;
  Complex r_a;  // R~_a(omega) = int R_a(t) e^{i omega t} dt
  Complex r_b;
  double g_a = 0.0;  // 2 Im R~_a
  double g_b = 0.0;
  Complex xi_parallel;  // 2 gamma + f_R gamma (R~_a + R~_b - 1)
  Complex xi_perp;      // 2 gamma / 3 + f_R gamma (R~_a + R~_b / 2 - 2/3)

  XpmCoefficients xpm() const { return {xi_parallel.real(), xi_perp.real()}; }
};

/// Unit-area response shapes in the frequency domain.
Complex isotropic_shape(const RamanModelParams& model, double omega);
Complex anisotropic_shape(const RamanModelParams& model, double omega);

RamanSpectra raman_spectrum(const FiberParams& fiber, double omega);

/// Bose-Einstein phonon occupancy at |omega| (rad/ps) and temperature (K).
double thermal_occupancy(double omega, double temperature_k);

/// I_R(t) = gamma f_R P0 B mu_+(t) n_th [g_a + 3 g_b / 2] in photons/s, with
/// P0 the per-polarization pump peak power and mu_+ in m.
std::vector<double> raman_flux(const SwitchScenario& scenario, std::span<const double> mu_plus);

struct NoiseReport {
  double omega = 0.0;
  double n_th = 0.0;
  RamanSpectra spectra;
  WindowMetrics window;
  std::vector<double> t;          // ps
  std::vector<double> flux_ir;    // photons/s at the switch output (x e^{-2 l_r})
  double photons_per_bt = 0.0;    // N_R / (B tau_w)
  double n_r = 0.0;
  double fidelity = 1.0;
};

/// N_R / (B tau_w) = gamma f_R n_th (pi/4) (2 g_a + 3 g_b) / Re(xi_par + xi_perp).
double raman_photons_per_bt(const FiberParams& fiber, double signal_nm, double pump_nm,
                            double temperature_k);

/// Noise at the total-switching energy for the scenario's window.
/// Throws ValidationError when the walk-through condition fails (no tau_w).
NoiseReport raman_photon_number(const SwitchScenario& scenario);

inline double entanglement_fidelity(double n_r) { return 1.0 - 0.5 * n_r; }

}  // namespace sagnac
