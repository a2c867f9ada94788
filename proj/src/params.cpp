#include "sagnac/params.hpp"

#include <cmath>
#include <string>

#include "sagnac/error.hpp"
#include "sagnac/units.hpp"

namespace sagnac {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

// Energy of a unit-peak-power pulse summed over both polarizations, in units of width.
double energy_per_peak_width(PulseShape shape) {
  switch (shape) {
    case PulseShape::gaussian: return 2.0 * std::sqrt(units::pi);  // 2 * int e^{-t^2/s^2}
    case PulseShape::sech2: return 4.0;                            // 2 * int sech^2(t/T0)
  }
  return 0.0;
}

// FWHM / width for each shape's intensity profile.
double fwhm_per_width(PulseShape shape) {
  switch (shape) {
    case PulseShape::gaussian: return 2.0 * std::sqrt(std::log(2.0));
    case PulseShape::sech2: return 2.0 * std::acosh(std::sqrt(2.0));
  }
  return 0.0;
}

}  // namespace

void RamanModelParams::validate() const {
  require(tau1_fs > 0 && tau2_fs > 0 && tau_b_fs > 0, "raman_model: times must be positive");
  require(f_a >= 0 && f_b >= 0, "raman_model: weights must be non-negative");
  require(std::abs(f_a + f_b - 1.0) < 1e-9, "raman_model: f_a + f_b must equal 1");
}

void FiberParams::validate() const {
  require(alpha >= 0, "fiber: alpha must be >= 0");
  require(gamma > 0, "fiber: gamma must be > 0");
  require(f_raman >= 0 && f_raman < 1, "fiber: f_raman must lie in [0, 1)");
  require(length > 0, "fiber: length must be > 0");
  require(std::isfinite(beta2_pump), "fiber: beta2 must be finite");
  require(beta_minus > std::abs(beta_plus),
          "fiber: beta_minus must exceed |beta_plus| (positive group velocities)");
  raman_model.validate();
}

double gamma_from_mode_field(double n2_m2_per_w, double wavelength_nm, double mfd_um) {
  const double radius = 0.5 * mfd_um * 1e-6;
  const double a_eff = units::pi * radius * radius;
  return 2.0 * units::pi * n2_m2_per_w / (wavelength_nm * 1e-9 * a_eff);
}

double sigma_from_intensity_fwhm(double fwhm_ps) {
  return fwhm_ps / fwhm_per_width(PulseShape::gaussian);
}

double intensity_fwhm_from_sigma(double sigma_ps) {
  return sigma_ps * fwhm_per_width(PulseShape::gaussian);
}

PumpConfig PumpConfig::resolved() const {
  require(energy_pj || peak_power_w, "pump: give energy or peak power");
  PumpConfig out = *this;
  const double ratio = fwhm_per_width(shape);
  if (sigma_ps && intensity_fwhm_ps) {
    require(std::abs(*intensity_fwhm_ps - ratio * *sigma_ps) <= 1e-9 * *intensity_fwhm_ps,
            "pump: sigma and intensity FWHM are inconsistent");
  } else if (sigma_ps) {
    out.intensity_fwhm_ps = ratio * *sigma_ps;
  } else if (intensity_fwhm_ps) {
    out.sigma_ps = *intensity_fwhm_ps / ratio;
  } else {
    throw ValidationError("pump: give sigma or intensity FWHM");
  }
  require(*out.sigma_ps > 0, "pump: width must be positive");
  const double k = energy_per_peak_width(shape) * *out.sigma_ps;
  if (energy_pj && peak_power_w) {
    require(std::abs(*energy_pj - k * *peak_power_w) <= 1e-9 * std::max(*energy_pj, 1e-300),
            "pump: energy and peak power are inconsistent");
  } else if (energy_pj) {
    require(*energy_pj >= 0, "pump: energy must be >= 0");
    out.peak_power_w = *energy_pj / k;
  } else {
    require(*peak_power_w >= 0, "pump: peak power must be >= 0");
    out.energy_pj = *peak_power_w * k;
  }
  return out;
}

double PumpConfig::energy() const { return resolved().energy_pj.value(); }
double PumpConfig::peak_power() const { return resolved().peak_power_w.value(); }
double PumpConfig::sigma() const { return resolved().sigma_ps.value(); }
double PumpConfig::fwhm() const { return resolved().intensity_fwhm_ps.value(); }

double SwitchScenario::detuning() const {
  return units::detuning(signal_wavelength_nm, pump.wavelength_nm);
}

void SwitchScenario::validate() const {
  fiber.validate();
  (void)pump.resolved();
  require(temperature_k > 0, "environment: temperature must be > 0");
  require(bandwidth_ghz > 0, "environment: bandwidth must be > 0");
  require(loss_signal >= 0, "environment: loss_signal must be >= 0");
  require(raman_loss() >= 0, "environment: loss_raman must be >= 0");
  require(signal_wavelength_nm > 0 && pump.wavelength_nm > 0, "wavelengths must be positive");
  require(signal_wavelength_nm != pump.wavelength_nm,
          "signal wavelength must differ from the pump wavelength");
  if (signal_fwhm_ps) require(*signal_fwhm_ps > 0, "signal: fwhm must be > 0");
}

}  // namespace sagnac
