#include "sagnac/grid.hpp"

#include <bit>
#include <string>

#include "sagnac/error.hpp"
#include "sagnac/units.hpp"

namespace sagnac {

TemporalGrid::TemporalGrid(std::size_t n_samples, double t_span_ps)
    : n_(n_samples), span_(t_span_ps) {
  if (!std::has_single_bit(n_samples) || n_samples < min_samples) {
    throw ValidationError("grid: n_samples = " + std::to_string(n_samples) +
                          " is not a power of two >= " +
                          std::to_string(min_samples));
  }
  if (!(t_span_ps > 0.0)) {
    throw ValidationError("grid: t_span must be positive");
  }
  dt_ = span_ / static_cast<double>(n_);
  t_.resize(n_);
  omega_.resize(n_);
  const auto half = static_cast<std::ptrdiff_t>(n_ / 2);
  for (std::size_t k = 0; k < n_; ++k) {
    const auto ik = static_cast<std::ptrdiff_t>(k);
    t_[k] = static_cast<double>(ik - half) * dt_;
    const auto m = ik < half ? ik : ik - static_cast<std::ptrdiff_t>(n_);
    omega_[k] = 2.0 * units::pi * static_cast<double>(m) / span_;
  }
}

GridPtr make_grid(std::size_t n_samples, double t_span_ps) {
  return std::make_shared<const TemporalGrid>(n_samples, t_span_ps);
}

ComplexEnvelope::ComplexEnvelope(GridPtr g, double wavelength_nm)
    : grid(std::move(g)),
      x(grid->size()),
      y(grid->size()),
      carrier_wavelength_nm(wavelength_nm) {}

std::vector<double> ComplexEnvelope::total_power() const {
  std::vector<double> p(x.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(x[i]) + std::norm(y[i]);
  return p;
}

std::vector<double> ComplexEnvelope::power_x() const {
  std::vector<double> p(x.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(x[i]);
  return p;
}

std::vector<double> ComplexEnvelope::power_y() const {
  std::vector<double> p(y.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(y[i]);
  return p;
}

}  // namespace sagnac
