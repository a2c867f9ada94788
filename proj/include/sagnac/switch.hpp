#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "sagnac/grid.hpp"
#include "sagnac/phase.hpp"

namespace sagnac {

/// Mean-field output amplitudes of the loop mirror:
/// (b1, b2) = e^{i phi} e^{-l_s} [[cos th, i sin th], [i sin th, cos th]] (a1, a2).
std::array<Complex, 2> io_transform(double theta, double phi, double loss_signal, Complex a1,
                                    Complex a2);

/// The 2x2 matrix itself, row-major.
std::array<Complex, 4> io_matrix(double theta, double phi, double loss_signal);

struct SwitchResponse {
  std::vector<double> t;
  std::vector<double> transmission;  // e^{-2 l_s} sin^2 theta
  std::vector<double> reflection;    // e^{-2 l_s} cos^2 theta
  std::vector<double> theta;
  std::vector<double> phi_common;
  std::vector<std::uint8_t> masked;
  double loss_signal = 0.0;
};

SwitchResponse response_from_phases(const PhasePair& pair, double loss_signal);

struct DelayScan {
  std::vector<double> delays;
  std::vector<double> switch_probability;
  std::vector<std::uint8_t> masked;
  double signal_fwhm = 0.0;
};

/// p(t_D) = int T(t) s(t - t_D) dt with s a unit-area Gaussian of the given
/// intensity FWHM. The response must be on a uniform time axis; delays whose
/// kernel (+-4 FWHM) leaves the axis are masked.
DelayScan delay_scan(const SwitchResponse& response, double signal_fwhm,
                     std::span<const double> delays);

}  // namespace sagnac

#include "sagnac/propagator.hpp"

namespace sagnac {

enum class SweepMode { analytic, numeric };

struct SweepPoint {
  double energy_pj = 0.0;
  double theta_plateau = 0.0;
  double t_peak = 0.0;
  double r_peak = 0.0;
};

/// Peak transmission / reflection versus pump energy.
///
/// The plateau angle is half the co-propagating phase read at the window
/// center t_c (maximum over the window when the walk-through condition
/// fails); the counter-propagating phase is neglected here, so at alpha = 0
/// the analytic curve is e^{-2 l_s} sin^2(E (xi_par + xi_perp) / 4|beta_+|).
/// Numeric mode runs the split-step pump solver per energy; sweep points
/// are evaluated on up to `jobs` threads and returned in input order.
std::vector<SweepPoint> energy_sweep(const SwitchScenario& scenario,
                                     std::span<const double> energies, SweepMode mode,
                                     const SolverSettings& settings = {}, unsigned jobs = 1);

}  // namespace sagnac
