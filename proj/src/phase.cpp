#include "sagnac/phase.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sagnac/error.hpp"
#include "sagnac/fft.hpp"
#include "sagnac/units.hpp"

namespace sagnac {
namespace {

// Snapshots whose edge power exceeds this fraction of their peak are not
// continued by zero outside the grid. At 1e-8 the neglected tail is worth
// well under 1e-4 rad even over 500 m of walk-off.
constexpr double edge_trust_threshold = 1e-8;
constexpr double negative_phase_tolerance = 1e-3;

double direction_beta(const FiberParams& fiber, Direction d) {
  return d == Direction::co ? fiber.beta_plus : fiber.beta_minus;
}

// Antiderivative of a sampled non-negative profile on the (periodic) grid,
// evaluated anywhere by cubic Hermite interpolation. Zero before the grid,
// constant after it.
class Antiderivative {
 public:
  Antiderivative(const TemporalGrid& grid, const Fft& fft, std::span<const double> w)
      : t0_(grid.t_min()), dt_(grid.dt()), w_(w.begin(), w.end()), c_(w.size()) {
    const std::size_t n = w.size();
    std::vector<Complex> spec(w.begin(), w.end());
    fft.forward(spec);
    const double mean = spec[0].real() / static_cast<double>(n);
    const auto omega = grid.omega();
    spec[0] = 0.0;
    spec[n / 2] = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
      if (k != n / 2) spec[k] /= Complex(0.0, omega[k]);
    }
    fft.inverse(spec);
    const double base = spec[0].real();
    for (std::size_t j = 0; j < n; ++j) {
      c_[j] = spec[j].real() - base + mean * dt_ * static_cast<double>(j);
    }
  }

  double operator()(double tau) const {
    const double s = (tau - t0_) / dt_;
    if (s <= 0.0) return 0.0;
    const auto last = c_.size() - 1;
    if (s >= static_cast<double>(last)) return c_[last];
    const auto j = static_cast<std::size_t>(s);
    const double u = s - static_cast<double>(j);
    const double u2 = u * u;
    const double u3 = u2 * u;
    const double h00 = 2 * u3 - 3 * u2 + 1;
    const double h10 = u3 - 2 * u2 + u;
    const double h01 = -2 * u3 + 3 * u2;
    const double h11 = u3 - u2;
    return h00 * c_[j] + h10 * dt_ * w_[j] + h01 * c_[j + 1] + h11 * dt_ * w_[j + 1];
  }

  // Profile value by Catmull-Rom cubic; zero off-grid.
  double value(double tau) const {
    const double s = (tau - t0_) / dt_;
    const auto n = static_cast<std::ptrdiff_t>(w_.size());
    if (s < 0.0 || s > static_cast<double>(n - 1)) return 0.0;
    const auto j = static_cast<std::ptrdiff_t>(s);
    const double u = s - static_cast<double>(j);
    auto at = [&](std::ptrdiff_t i) { return w_[static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(i, 0, n - 1))]; };
    const double p0 = at(j - 1), p1 = at(j), p2 = at(j + 1), p3 = at(j + 2);
    return p1 + 0.5 * u * (p2 - p0 + u * (2 * p0 - 5 * p1 + 4 * p2 - p3 + u * (3 * (p1 - p2) + p3 - p0)));
  }

 private:
  double t0_;
  double dt_;
  std::vector<double> w_;
  std::vector<double> c_;
};

}  // namespace

PhasePair PhasePair::combine(const PhaseProfile& plus, const PhaseProfile& minus,
                             PhaseProvenance provenance) {
  if (plus.t != minus.t) throw ValidationError("phase pair: time axes differ");
  PhasePair p;
  p.t = plus.t;
  p.phi_plus = plus.phase;
  p.phi_minus = minus.phase;
  p.provenance = provenance;
  const std::size_t n = p.t.size();
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    scale = std::max({scale, std::abs(p.phi_plus[i]), std::abs(p.phi_minus[i])});
  }
  const double floor = -1e-12 * std::max(scale, 1.0);
  p.theta.resize(n);
  p.phi_common.resize(n);
  p.masked.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (p.phi_plus[i] < floor || p.phi_minus[i] < floor) {
      throw ValidationError("phase pair: negative cross-phase at t = " + std::to_string(p.t[i]));
    }
    p.theta[i] = 0.5 * (p.phi_plus[i] - p.phi_minus[i]);
    p.phi_common[i] = 0.5 * (p.phi_plus[i] + p.phi_minus[i]);
    const bool m = (!plus.masked.empty() && plus.masked[i]) || (!minus.masked.empty() && minus.masked[i]);
    p.masked[i] = m ? 1 : 0;
  }
  return p;
}

SwitchingAngles switching_angle(const PhasePair& pair) {
  SwitchingAngles a;
  a.theta.resize(pair.t.size());
  a.phi_common.resize(pair.t.size());
  for (std::size_t i = 0; i < pair.t.size(); ++i) {
    a.theta[i] = 0.5 * (pair.phi_plus[i] - pair.phi_minus[i]);
    a.phi_common[i] = 0.5 * (pair.phi_plus[i] + pair.phi_minus[i]);
  }
  return a;
}

PhaseProfile xpm_phase_numeric(const PropagationRecord& record, const FiberParams& fiber,
                               XpmCoefficients xi, Direction direction,
                               std::span<const double> times) {
  if (!record.has_snapshots()) {
    throw ValidationError("xpm_phase_numeric: propagation record holds no snapshots");
  }
  const auto& z = record.z_positions;
  if (z.size() < 2 || std::abs(z.back() - fiber.length) > 1e-9 * fiber.length) {
    throw ValidationError("xpm_phase_numeric: record does not cover [0, L]");
  }
  const TemporalGrid& grid = *record.grid;
  const Fft fft(grid.size());
  const double beta = direction_beta(fiber, direction);
  const double offset = -fiber.signal_transit();
  const bool trust_outside = record.edge_power_fraction <= edge_trust_threshold;

  PhaseProfile out;
  out.t.assign(times.begin(), times.end());
  out.phase.assign(times.size(), 0.0);
  out.masked.assign(times.size(), 0);

  std::vector<double> weighted(grid.size());
  for (std::size_t k = 0; k + 1 < z.size(); ++k) {
    const auto px0 = record.power(k, Polarization::x);
    const auto py0 = record.power(k, Polarization::y);
    const auto px1 = record.power(k + 1, Polarization::x);
    const auto py1 = record.power(k + 1, Polarization::y);
    for (std::size_t j = 0; j < weighted.size(); ++j) {
      weighted[j] = 0.5 * (xi.parallel * (px0[j] + px1[j]) + xi.perp * (py0[j] + py1[j]));
    }
    const Antiderivative c(grid, fft, weighted);
    const double za = z[k];
    const double zb = z[k + 1];
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double tau_a = times[i] + offset + za * beta;
      const double tau_b = times[i] + offset + zb * beta;
      if (!trust_outside) {
        const double lo = std::min(tau_a, tau_b);
        const double hi = std::max(tau_a, tau_b);
        if (lo < grid.t_min() || hi > grid.t_max()) out.masked[i] = 1;
      }
      if (beta == 0.0) {
        out.phase[i] += (zb - za) * c.value(tau_a);
      } else {
        out.phase[i] += (c(tau_b) - c(tau_a)) / beta;
      }
    }
  }
  // Band-limited interpolation rings around sharp pump features, which can
  // leave slightly negative partial integrals; clip those, reject real damage.
  double peak = 0.0;
  for (double v : out.phase) peak = std::max(peak, std::abs(v));
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (out.masked[i]) {
      out.phase[i] = 0.0;
    } else if (out.phase[i] < 0.0) {
      if (out.phase[i] < -negative_phase_tolerance * peak) {
        throw SolverError("xpm_phase_numeric: phase " + std::to_string(out.phase[i]) +
                          " rad at t = " + std::to_string(times[i]) +
                          " ps; the pump is under-resolved on this grid");
      }
      out.phase[i] = 0.0;
    }
  }
  return out;
}

double gaussian_mu(const FiberParams& fiber, double sigma, Direction direction, double t) {
  const double alpha = fiber.alpha;
  const double length = fiber.length;
  const double u = t - fiber.signal_transit();
  const double beta = direction_beta(fiber, direction);
  if (beta == 0.0) {
    const double z_eff = alpha > 0.0 ? -std::expm1(-2.0 * alpha * length) / (2.0 * alpha) : length;
    return z_eff * std::exp(-u * u / (sigma * sigma));
  }
  // int_0^L e^{-2 alpha z} exp(-(u + z beta)^2 / sigma^2) dz
  const double shift = alpha * sigma * sigma / beta;
  const double prefactor = std::sqrt(units::pi) * sigma / (2.0 * beta) *
                           std::exp(alpha * (shift + 2.0 * u) / beta);
  const double upper = (u + length * beta + shift) / sigma;
  const double lower = (u + shift) / sigma;
  return prefactor * (std::erf(upper) - std::erf(lower));
}

PhaseProfile xpm_phase_gaussian(const FiberParams& fiber, const PumpConfig& pump,
                                XpmCoefficients xi, Direction direction,
                                std::span<const double> times) {
  if (pump.shape != PulseShape::gaussian) {
    throw ValidationError("xpm_phase_gaussian: pump is not Gaussian");
  }
  const PumpConfig p = pump.resolved();
  PhaseProfile out;
  out.t.assign(times.begin(), times.end());
  out.phase.resize(times.size());
  out.masked.assign(times.size(), 0);
  const double scale = *p.peak_power_w * xi.sum();
  for (std::size_t i = 0; i < times.size(); ++i) {
    out.phase[i] = scale * gaussian_mu(fiber, *p.sigma_ps, direction, times[i]);
  }
  return out;
}

double total_switch_energy(const FiberParams& fiber, XpmCoefficients xi) {
  if (!(xi.sum() > 0.0)) throw ValidationError("total_switch_energy: xi sum must be positive");
  return 2.0 * units::pi * std::abs(fiber.beta_plus) / xi.sum();
}

double co_plateau_phase(const FiberParams& fiber, XpmCoefficients xi, double energy_pj) {
  if (fiber.beta_plus == 0.0) throw ValidationError("co_plateau_phase: no walk-off (beta_+ = 0)");
  return energy_pj * xi.sum() / (2.0 * std::abs(fiber.beta_plus));
}

double erf_inv(double y) {
  if (!(std::abs(y) < 1.0)) throw ValidationError("erf_inv: argument must lie in (-1, 1)");
  double lo = -6.0;
  double hi = 6.0;
  double x = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double f = std::erf(x) - y;
    if (f == 0.0) return x;
    if (f > 0.0) hi = x; else lo = x;
    const double deriv = 2.0 / std::sqrt(units::pi) * std::exp(-x * x);
    double next = x - f / deriv;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) < 1e-15 || hi - lo < 1e-14) return next;
    x = next;
  }
  return x;
}

WindowMetrics window_metrics(const FiberParams& fiber, const PumpConfig& pump, XpmCoefficients xi) {
  if (pump.shape != PulseShape::gaussian) throw ValidationError("window_metrics: pump is not Gaussian");
  const double sigma = pump.sigma();
  WindowMetrics m;
  m.t_center = 0.5 * fiber.length * fiber.beta_minus;
  const double walk = fiber.length * std::abs(fiber.beta_plus);
  if (fiber.beta_plus != 0.0) m.e_star = total_switch_energy(fiber, xi);
  m.walk_through_ok = walk > 2.0 * sigma;
  const double tau = walk - 2.0 * sigma * erf_inv(units::pi / 4.0);
  m.tau_w = (m.walk_through_ok && tau > 0.0) ? tau : 0.0;
  if (m.tau_w == 0.0) m.walk_through_ok = false;
  return m;
}

std::vector<double> window_time_axis(const FiberParams& fiber, double dt, double margin) {
  if (!(dt > 0.0)) throw ValidationError("window_time_axis: dt must be positive");
  const double a = fiber.signal_transit();
  const double b = fiber.pump_transit();
  const double start = std::min(a, b) - margin;
  const double stop = std::max(a, b) + margin;
  const auto n = static_cast<std::size_t>(std::ceil((stop - start) / dt - 1e-9)) + 1;
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = start + dt * static_cast<double>(i);
  return t;
}

}  // namespace sagnac
