#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sagnac/grid.hpp"
#include "sagnac/params.hpp"

namespace sagnac {

enum class StepMode { fixed, phase_bounded };

struct SolverSettings {
  StepMode step_mode = StepMode::phase_bounded;
  double dz_fixed = 0.1;          // m
  double max_phase_step = 0.05;   // rad of peak nonlinear phase per step
  /// Number of equal z-slabs; steps never straddle a slab boundary and the
  /// pump power is recorded at every boundary when `store_snapshots`.
  std::size_t snapshot_slices = 512;
  bool store_snapshots = true;

  void validate(double length) const;
};

/// Sign applied to the quadratic spectral phase of the linear step,
/// exp(sign * i * beta2 * omega^2 * h / 2). The +1 follows from the
/// -i beta2/2 d^2/dt^2 term, so beta2 < 0 is anomalous and supports solitons.
inline constexpr double dispersion_phase_sign = 1.0;

struct NonlinearCoefficients {
  double rho;    // self-phase [1/(W m)]
  double sigma;  // cross-polarization [1/(W m)]
};

/// rho = gamma, sigma = 2 gamma / 3.
NonlinearCoefficients nonlinear_coefficients_pump(const FiberParams& fiber);

enum class Polarization { x, y };

/// Result of a split-step run in the pump co-moving frame.
class PropagationRecord {
 public:
  GridPtr grid;
  std::vector<double> z_positions;  // slab boundaries, 0 ... L
  std::vector<double> energies;     // pJ at each z position
  ComplexEnvelope final_envelope;
  std::size_t step_count = 0;
  double max_nonlinear_phase_per_step = 0.0;
  /// Largest power found in the outer 1/16 of the grid on either side,
  /// relative to the snapshot peak. Zero-power continuation beyond the grid
  /// is trusted only when this is tiny.
  double edge_power_fraction = 0.0;
  /// Largest share of spectral energy in the outer 1/8 of the frequency band
  /// (either sign); above ~1e-6 the time step under-resolves the pump.
  double spectral_edge_fraction = 0.0;

  bool has_snapshots() const { return !power_x_.empty(); }
  std::size_t snapshot_count() const { return power_x_.size(); }
  std::span<const double> power(std::size_t k, Polarization pol) const;

  void add_snapshot(double z, const ComplexEnvelope& env);

 private:
  std::vector<std::vector<double>> power_x_;
  std::vector<std::vector<double>> power_y_;
};

/// Symmetric split-step Fourier solution of the coupled two-polarization
/// pump equation (loss, GVD, SPM + cross-polarized XPM) over the full fiber.
/// Throws SolverError on non-finite fields or step collapse.
PropagationRecord propagate_pump(const ComplexEnvelope& input, const FiberParams& fiber,
                                 const SolverSettings& settings);

/// Dispersionless closed-form solution at distance z (co-moving frame):
/// A_j(z,t) = A_j(0,t) exp(i [rho P_j + sigma P_k](0,t) z_eff - alpha z),
/// z_eff = (1 - exp(-2 alpha z)) / (2 alpha).
ComplexEnvelope propagate_pump_analytic(const ComplexEnvelope& input, const FiberParams& fiber,
                                        double z);

}  // namespace sagnac
