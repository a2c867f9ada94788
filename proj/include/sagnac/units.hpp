#pragma once

// Internal units: ps, m, W, pJ (= W*ps), rad/ps.

namespace sagnac::units {

inline constexpr double pi = 3.14159265358979323846;

inline constexpr double speed_of_light = 299792458.0;      // m/s
inline constexpr double hbar = 1.054571817e-34;            // J*s
inline constexpr double boltzmann = 1.380649e-23;          // J/K

inline constexpr double ps_per_s = 1e12;
inline constexpr double hz_per_ghz = 1e9;

/// Optical angular frequency in rad/ps for a vacuum wavelength in nm.
constexpr double angular_frequency(double wavelength_nm) {
  return 2.0 * pi * speed_of_light / (wavelength_nm * 1e-9) / ps_per_s;
}

/// Detuning omega_signal - omega_pump in rad/ps.
constexpr double detuning(double signal_nm, double pump_nm) {
  return angular_frequency(signal_nm) - angular_frequency(pump_nm);
}

/// Field loss coefficient [1/m] from an attenuation in dB/km (power).
constexpr double field_loss_from_db_per_km(double db_per_km) {
  // power: 10 log10(e) * 2 alpha * 1000 = dB/km
  return db_per_km / (2.0 * 1000.0 * 4.342944819032518);
}

}  // namespace sagnac::units
