#include "sagnac/switch.hpp"

#include <cmath>

#include "sagnac/error.hpp"
#include "sagnac/params.hpp"
#include "sagnac/units.hpp"

namespace sagnac {

std::array<Complex, 4> io_matrix(double theta, double phi, double loss_signal) {
  const Complex scale = std::polar(std::exp(-loss_signal), phi);
  const Complex c = scale * std::cos(theta);
  const Complex s = scale * Complex(0.0, std::sin(theta));
  return {c, s, s, c};
}

std::array<Complex, 2> io_transform(double theta, double phi, double loss_signal, Complex a1,
                                    Complex a2) {
  const auto m = io_matrix(theta, phi, loss_signal);
  return {m[0] * a1 + m[1] * a2, m[2] * a1 + m[3] * a2};
}

SwitchResponse response_from_phases(const PhasePair& pair, double loss_signal) {
  if (loss_signal < 0.0) throw ValidationError("response: loss_signal must be >= 0");
  SwitchResponse r;
  r.t = pair.t;
  r.theta = pair.theta;
  r.phi_common = pair.phi_common;
  r.masked = pair.masked;
  r.loss_signal = loss_signal;
  const double throughput = std::exp(-2.0 * loss_signal);
  r.transmission.resize(r.t.size());
  r.reflection.resize(r.t.size());
  for (std::size_t i = 0; i < r.t.size(); ++i) {
    const double s = std::sin(r.theta[i]);
    const double c = std::cos(r.theta[i]);
    r.transmission[i] = throughput * s * s;
    r.reflection[i] = throughput * c * c;
  }
  return r;
}

DelayScan delay_scan(const SwitchResponse& response, double signal_fwhm,
                     std::span<const double> delays) {
  if (!(signal_fwhm > 0.0)) throw ValidationError("delay_scan: signal FWHM must be positive");
  const auto& t = response.t;
  if (t.size() < 2) throw ValidationError("delay_scan: response has fewer than two samples");
  const double dt = t[1] - t[0];
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (std::abs((t[i] - t[i - 1]) - dt) > 1e-9 * std::abs(dt) + 1e-12) {
      throw ValidationError("delay_scan: response time axis is not uniform");
    }
  }
  const double sigma = sigma_from_intensity_fwhm(signal_fwhm);  // s ~ exp(-t^2/sigma^2)
  const double reach = 4.0 * signal_fwhm;

  DelayScan scan;
  scan.signal_fwhm = signal_fwhm;
  scan.delays.assign(delays.begin(), delays.end());
  scan.switch_probability.assign(delays.size(), 0.0);
  scan.masked.assign(delays.size(), 0);
  for (std::size_t d = 0; d < delays.size(); ++d) {
    const double td = delays[d];
    if (td - reach < t.front() || td + reach > t.back()) {
      scan.masked[d] = 1;
      continue;
    }
    double num = 0.0;
    double norm = 0.0;
    bool hit_mask = false;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double x = (t[i] - td) / sigma;
      if (std::abs(x) * sigma > reach) continue;
      const double w = std::exp(-x * x);
      if (!response.masked.empty() && response.masked[i]) hit_mask = true;
      num += w * response.transmission[i];
      norm += w;
    }
    // discrete normalization keeps sum(s) dt = 1 exactly on the grid
    scan.switch_probability[d] = num / norm;
    scan.masked[d] = hit_mask ? 1 : 0;
  }
  return scan;
}

}  // namespace sagnac
