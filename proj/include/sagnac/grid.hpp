#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace sagnac {

using Complex = std::complex<double>;

/// Uniform time axis centered on zero plus its conjugate angular-frequency
/// axis in FFT ordering. Immutable once built.
class TemporalGrid {
 public:
  static constexpr std::size_t min_samples = 1024;

  /// Throws ValidationError unless n is a power of two >= 1024 and span > 0.
  TemporalGrid(std::size_t n_samples, double t_span_ps);

  std::size_t size() const { return n_; }
  double span() const { return span_; }
  double dt() const { return dt_; }
  double t_min() const { return t_.front(); }
  double t_max() const { return t_.back(); }

  std::span<const double> t() const { return t_; }
  std::span<const double> omega() const { return omega_; }

 private:
  std::size_t n_;
  double span_;
  double dt_;
  std::vector<double> t_;
  std::vector<double> omega_;
};

using GridPtr = std::shared_ptr<const TemporalGrid>;

GridPtr make_grid(std::size_t n_samples, double t_span_ps);

/// Two-polarization slowly-varying envelope; |A|^2 is power in W.
struct ComplexEnvelope {
  GridPtr grid;
  std::vector<Complex> x;
  std::vector<Complex> y;
  double carrier_wavelength_nm = 1550.0;

  ComplexEnvelope() = default;
  ComplexEnvelope(GridPtr g, double wavelength_nm);

  /// P_x(t) + P_y(t).
  std::vector<double> total_power() const;
  std::vector<double> power_x() const;
  std::vector<double> power_y() const;
};

}  // namespace sagnac
