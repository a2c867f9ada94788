#pragma once

#include <span>

#include "sagnac/grid.hpp"
#include "sagnac/params.hpp"

namespace sagnac {

/// Gaussian pump pair centered at t = 0: each polarization carries
/// A(t) = sqrt(P0) exp(-t^2 / 2 sigma^2). Requires t_span >= 20 sigma.
ComplexEnvelope build_gaussian_pump(const PumpConfig& cfg, GridPtr grid);

/// sech^2 pump pair of the same two-polarization energy convention.
ComplexEnvelope build_sech2_pump(const PumpConfig& cfg, GridPtr grid);

/// Dispatches on cfg.shape.
ComplexEnvelope build_pump(const PumpConfig& cfg, GridPtr grid);

/// Trapezoidal integral of |A_x|^2 + |A_y|^2 over the grid [pJ].
double measure_energy(const ComplexEnvelope& env);

struct WidthMeasurement {
  double width = 0.0;       // same unit as the abscissa
  double left = 0.0;        // interpolated crossing points
  double right = 0.0;
  bool multimodal = false;  // half maximum crossed more than twice
};

/// Full width at half maximum of a sampled non-negative profile, with
/// linear interpolation between samples. Throws ValidationError if the
/// profile has no positive maximum.
WidthMeasurement measure_fwhm(std::span<const double> t, std::span<const double> y);

/// FWHM of the total instantaneous power of an envelope.
WidthMeasurement measure_intensity_fwhm(const ComplexEnvelope& env);

}  // namespace sagnac
