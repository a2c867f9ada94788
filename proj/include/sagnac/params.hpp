#pragma once

#include <cstddef>
#include <optional>

namespace sagnac {

/// Delayed Raman response of silica. Times in fs; f_a + f_b = 1.
struct RamanModelParams {
  double tau1_fs = 12.2;
  double tau2_fs = 32.0;
  double tau_b_fs = 96.0;
  double f_a = 0.79;
  double f_b = 0.21;

  void validate() const;
};

/// Kerr fiber used as the loop medium.
///
/// beta_plus  = 1/v_s - 1/v_p  (co-propagating walk-off)  [ps/m]
/// beta_minus = 1/v_s + 1/v_p  (counter-propagating)      [ps/m]
struct FiberParams {
  double alpha = 0.0;              // field loss [1/m]
  double beta_plus = 2.1;          // [ps/m]
  double beta_minus = 9.8;         // [ps/m]
  double beta2_pump = -0.020;      // [ps^2/m]
  double gamma = 1.342e-3;         // [1/(W m)]
  double f_raman = 0.18;
  double length = 100.0;           // [m]
  double mode_field_diameter_um = 10.0;
  RamanModelParams raman_model{};

  void validate() const;

  double inverse_signal_velocity() const { return 0.5 * (beta_minus + beta_plus); }
  double inverse_pump_velocity() const { return 0.5 * (beta_minus - beta_plus); }
  double signal_transit() const { return length * inverse_signal_velocity(); }
  double pump_transit() const { return length * inverse_pump_velocity(); }
};

/// gamma = 2 pi n2 / (lambda A_eff), A_eff = pi (MFD/2)^2.
double gamma_from_mode_field(double n2_m2_per_w, double wavelength_nm, double mfd_um);

inline constexpr double silica_n2 = 2.6e-20;  // m^2/W

enum class PulseShape { gaussian, sech2 };

/// Pump pulse pair (two orthogonal polarizations of equal power).
///
/// `peak_power` is the per-polarization peak power P0, so that the
/// two-polarization energy of a Gaussian is E = 2 sqrt(pi) sigma P0.
/// Give exactly one of energy / peak power and one of sigma / FWHM;
/// `resolved()` fills in the rest.
struct PumpConfig {
  PulseShape shape = PulseShape::gaussian;
  std::optional<double> energy_pj;
  std::optional<double> peak_power_w;
  std::optional<double> sigma_ps;
  std::optional<double> intensity_fwhm_ps;
  double wavelength_nm = 1550.0;

  /// Returns a copy with all four of energy, peak power, sigma and FWHM
  /// present. Throws ValidationError on under/over-specification.
  PumpConfig resolved() const;

  double energy() const;      // pJ
  double peak_power() const;  // W per polarization
  double sigma() const;       // ps (Gaussian amplitude width; sech: T0)
  double fwhm() const;        // ps
};

double sigma_from_intensity_fwhm(double fwhm_ps);
double intensity_fwhm_from_sigma(double sigma_ps);

struct GridSpec {
  std::size_t n_samples = 1u << 14;
  double t_span_ps = 1024.0;
};

/// A complete switch configuration.
struct SwitchScenario {
  FiberParams fiber{};
  PumpConfig pump{};
  double signal_wavelength_nm = 1310.0;
  std::optional<double> signal_fwhm_ps;
  double temperature_k = 300.0;
  double bandwidth_ghz = 1.0;
  double loss_signal = 0.0;               // l_s
  std::optional<double> loss_raman;       // l_r, defaults to l_s
  GridSpec grid{};

  void validate() const;
  double raman_loss() const { return loss_raman.value_or(loss_signal); }
  /// omega_s - omega_p [rad/ps].
  double detuning() const;
};

}  // namespace sagnac
