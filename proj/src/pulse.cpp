#include "sagnac/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sagnac/error.hpp"

namespace sagnac {
namespace {

constexpr double max_truncated_fraction = 1e-6;

}  // namespace

ComplexEnvelope build_gaussian_pump(const PumpConfig& cfg, GridPtr grid) {
  const PumpConfig pump = cfg.resolved();
  const double sigma = *pump.sigma_ps;
  if (grid->span() < 20.0 * sigma) {
    throw ValidationError("pump: grid span " + std::to_string(grid->span()) +
                          " ps is below 20 sigma = " + std::to_string(20.0 * sigma) +
                          " ps (Gaussian tail truncation)");
  }
  ComplexEnvelope env(grid, pump.wavelength_nm);
  const double amp = std::sqrt(*pump.peak_power_w);
  const auto t = grid->t();
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double a = amp * std::exp(-t[i] * t[i] / (2.0 * sigma * sigma));
    env.x[i] = a;
    env.y[i] = a;
  }
  return env;
}

ComplexEnvelope build_sech2_pump(const PumpConfig& cfg, GridPtr grid) {
  const PumpConfig pump = cfg.resolved();
  const double t0 = *pump.sigma_ps;
  // fraction of sech^2 energy beyond |t| > span/2 is 1 - tanh(span / 2 t0)
  const double outside = 1.0 - std::tanh(0.5 * grid->span() / t0);
  if (outside > max_truncated_fraction) {
    throw ValidationError("pump: grid span too narrow for sech^2 pulse (truncated fraction " +
                          std::to_string(outside) + ")");
  }
  ComplexEnvelope env(grid, pump.wavelength_nm);
  const double amp = std::sqrt(*pump.peak_power_w);
  const auto t = grid->t();
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double a = amp / std::cosh(t[i] / t0);
    env.x[i] = a;
    env.y[i] = a;
  }
  return env;
}

ComplexEnvelope build_pump(const PumpConfig& cfg, GridPtr grid) {
  switch (cfg.shape) {
    case PulseShape::gaussian: return build_gaussian_pump(cfg, std::move(grid));
    case PulseShape::sech2: return build_sech2_pump(cfg, std::move(grid));
  }
  throw ValidationError("pump: unknown shape");
}

double measure_energy(const ComplexEnvelope& env) {
  const auto p = env.total_power();
  if (p.empty()) return 0.0;
  double sum = 0.0;
  for (double v : p) sum += v;
  sum -= 0.5 * (p.front() + p.back());
  return sum * env.grid->dt();
}

WidthMeasurement measure_fwhm(std::span<const double> t, std::span<const double> y) {
  if (t.size() != y.size() || t.size() < 2) throw ValidationError("fwhm: bad profile");
  const auto peak_it = std::max_element(y.begin(), y.end());
  if (!(*peak_it > 0.0)) throw ValidationError("fwhm: profile has no positive maximum");
  const double half = 0.5 * *peak_it;

  auto crossing = [&](std::size_t i) {  // between i and i+1
    const double f = (half - y[i]) / (y[i + 1] - y[i]);
    return t[i] + f * (t[i + 1] - t[i]);
  };

  int crossings = 0;
  for (std::size_t i = 0; i + 1 < y.size(); ++i) {
    if ((y[i] >= half) != (y[i + 1] >= half)) ++crossings;
  }
  WidthMeasurement m;
  m.left = t.front();
  for (std::size_t i = 0; i + 1 < y.size(); ++i) {
    if (y[i] >= half) break;
    if (y[i + 1] >= half) {
      m.left = crossing(i);
      break;
    }
  }
  m.right = t.back();
  for (std::size_t i = y.size() - 1; i > 0; --i) {
    if (y[i] >= half) break;
    if (y[i - 1] >= half) {
      m.right = crossing(i - 1);
      break;
    }
  }
  m.width = m.right - m.left;
  m.multimodal = crossings > 2;
  return m;
}

WidthMeasurement measure_intensity_fwhm(const ComplexEnvelope& env) {
  const auto p = env.total_power();
  return measure_fwhm(env.grid->t(), p);
}

}  // namespace sagnac
