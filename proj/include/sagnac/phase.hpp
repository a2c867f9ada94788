#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sagnac/params.hpp"
#include "sagnac/propagator.hpp"

namespace sagnac {

/// Real (dispersive) XPM coefficients seen by the signal [1/(W m)].
struct XpmCoefficients {
  double parallel = 0.0;
  double perp = 0.0;
  double sum() const { return parallel + perp; }
};

enum class Direction { co, counter };
enum class PhaseProvenance { numeric, gaussian_analytic };

/// Phase profile on an arbitrary output time axis.
///
/// Times are the output-time variable t of the XPM integral, measured from
/// the pump launch at z = 0, so the co-propagating window is centered at
/// t_c = L beta_- / 2.
struct PhaseProfile {
  std::vector<double> t;
  std::vector<double> phase;
  std::vector<std::uint8_t> masked;  // 1 where the pump left the grid
};

struct PhasePair {
  std::vector<double> t;
  std::vector<double> phi_plus;
  std::vector<double> phi_minus;
  std::vector<double> theta;       // (phi_plus - phi_minus) / 2
  std::vector<double> phi_common;  // (phi_plus + phi_minus) / 2
  std::vector<std::uint8_t> masked;
  PhaseProvenance provenance = PhaseProvenance::numeric;

  /// Builds theta / phi_common; throws ValidationError on mismatched axes or
  /// negative phases.
  static PhasePair combine(const PhaseProfile& plus, const PhaseProfile& minus,
                           PhaseProvenance provenance);
};

struct SwitchingAngles {
  std::vector<double> theta;
  std::vector<double> phi_common;
};

SwitchingAngles switching_angle(const PhasePair& pair);

/// Phi_+-(t) = int_0^L [xi_par P_x + xi_perp P_y](z, t - L/v_s + z beta_+-) dz
/// from the recorded pump snapshots. Within each slab the pump power is the
/// average of the bounding snapshots and the time integral is exact on a
/// spectral antiderivative. Requires stored snapshots.
PhaseProfile xpm_phase_numeric(const PropagationRecord& record, const FiberParams& fiber,
                               XpmCoefficients xi, Direction direction,
                               std::span<const double> times);

/// Closed-form Phi for a Gaussian pump (dispersionless pump).
PhaseProfile xpm_phase_gaussian(const FiberParams& fiber, const PumpConfig& pump,
                                XpmCoefficients xi, Direction direction,
                                std::span<const double> times);

/// mu_+-(t) [m] of the Gaussian closed form: Phi = P0 (xi_par + xi_perp) mu.
double gaussian_mu(const FiberParams& fiber, double sigma_ps, Direction direction, double t);

/// E* = 2 pi |beta_+| / (xi_par + xi_perp) [pJ]. Throws on non-positive xi sum.
double total_switch_energy(const FiberParams& fiber, XpmCoefficients xi);

/// Plateau of the co-propagating phase for pump energy E (alpha = 0):
/// E (xi_par + xi_perp) / (2 |beta_+|).
double co_plateau_phase(const FiberParams& fiber, XpmCoefficients xi, double energy_pj);

struct WindowMetrics {
  std::optional<double> e_star;  // absent in lockstep (beta_+ = 0)
  double t_center = 0.0;         // L beta_- / 2
  double tau_w = 0.0;            // L|beta_+| - 2 sigma erfinv(pi/4), or 0
  bool walk_through_ok = false;  // L > 2 sigma / |beta_+|
};

WindowMetrics window_metrics(const FiberParams& fiber, const PumpConfig& pump, XpmCoefficients xi);

/// Inverse error function by safeguarded Newton on a bracket; |y| < 1.
double erf_inv(double y);

/// Uniform output-time axis covering the co-propagating window
/// [L min(1/v_s,1/v_p), L max(1/v_s,1/v_p)] widened by `margin` on each side.
std::vector<double> window_time_axis(const FiberParams& fiber, double dt, double margin);

}  // namespace sagnac
