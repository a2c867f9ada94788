#include "sagnac/propagator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "sagnac/error.hpp"
#include "sagnac/fft.hpp"
#include "sagnac/pulse.hpp"

namespace sagnac {
namespace {

double effective_length(double alpha, double z) {
  if (alpha * z < 1e-8) return z * (1.0 - alpha * z);
  return -std::expm1(-2.0 * alpha * z) / (2.0 * alpha);
}

double peak_nonlinear_rate(const ComplexEnvelope& env, const NonlinearCoefficients& c) {
  double rate = 0.0;
  for (std::size_t i = 0; i < env.x.size(); ++i) {
    const double px = std::norm(env.x[i]);
    const double py = std::norm(env.y[i]);
    rate = std::max({rate, c.rho * px + c.sigma * py, c.rho * py + c.sigma * px});
  }
  return rate;
}

bool all_finite(const ComplexEnvelope& env) {
  auto ok = [](const Complex& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); };
  return std::all_of(env.x.begin(), env.x.end(), ok) && std::all_of(env.y.begin(), env.y.end(), ok);
}

// Strang splitting with the trailing half linear step of one step fused into
// the leading half of the next; flush() completes the pending half.
class SplitStepper {
 public:
  SplitStepper(const FiberParams& fiber, GridPtr grid)
      : fiber_(fiber), grid_(std::move(grid)), fft_(grid_->size()),
        coeffs_(nonlinear_coefficients_pump(fiber)) {}

  void advance(ComplexEnvelope& env, double h) {
    linear(env, pending_ + 0.5 * h);
    nonlinear(env, h);
    pending_ = 0.5 * h;
  }

  void flush(ComplexEnvelope& env) {
    linear(env, pending_);
    pending_ = 0.0;
  }

  const NonlinearCoefficients& coefficients() const { return coeffs_; }

 private:
  void nonlinear(ComplexEnvelope& env, double h) {
    // midpoint power times sinh(a h)/a is the exact path integral of the decaying power
    const double ah = fiber_.alpha * h;
    const double h_nl = ah > 1e-8 ? std::sinh(ah) / fiber_.alpha : h;
    for (std::size_t i = 0; i < env.x.size(); ++i) {
      const double px = std::norm(env.x[i]);
      const double py = std::norm(env.y[i]);
      env.x[i] *= std::polar(1.0, (coeffs_.rho * px + coeffs_.sigma * py) * h_nl);
      env.y[i] *= std::polar(1.0, (coeffs_.rho * py + coeffs_.sigma * px) * h_nl);
    }
  }

  // exp[(-alpha + sign i beta2 omega^2 / 2) d] on both polarizations
  void linear(ComplexEnvelope& env, double d) {
    if (d == 0.0) return;
    const double decay = std::exp(-fiber_.alpha * d);
    if (fiber_.beta2_pump == 0.0) {
      if (fiber_.alpha != 0.0) {
        for (auto& v : env.x) v *= decay;
        for (auto& v : env.y) v *= decay;
      }
      return;
    }
    const auto& mult = multiplier(d, decay);
    for (auto* field : {&env.x, &env.y}) {
      fft_.forward(*field);
      for (std::size_t k = 0; k < field->size(); ++k) (*field)[k] *= mult[k];
      fft_.inverse(*field);
    }
  }

  const std::vector<Complex>& multiplier(double d, double decay) {
    for (auto& c : cache_) {
      if (c.d == d) return c.values;
    }
    auto& c = cache_[next_slot_];
    next_slot_ = (next_slot_ + 1) % cache_.size();
    const auto omega = grid_->omega();
    c.d = d;
    c.values.resize(omega.size());
    for (std::size_t k = 0; k < omega.size(); ++k) {
      c.values[k] = std::polar(decay, dispersion_phase_sign * 0.5 * fiber_.beta2_pump * omega[k] * omega[k] * d);
    }
    return c.values;
  }

  struct CachedMultiplier {
    double d = -1.0;
    std::vector<Complex> values;
  };

  const FiberParams& fiber_;
  GridPtr grid_;
  Fft fft_;
  NonlinearCoefficients coeffs_;
  double pending_ = 0.0;
  std::array<CachedMultiplier, 3> cache_{};
  std::size_t next_slot_ = 0;
};

double edge_fraction(const ComplexEnvelope& env) {
  const auto p = env.total_power();
  const double peak = *std::max_element(p.begin(), p.end());
  if (!(peak > 0.0)) return 0.0;
  const std::size_t band = p.size() / 16;
  double edge = 0.0;
  for (std::size_t i = 0; i < band; ++i) {
    edge = std::max({edge, p[i], p[p.size() - 1 - i]});
  }
  return edge / peak;
}

// Spectral energy in the top 1/8 of the band relative to the total; large
// values mean the grid no longer resolves the pulse.
double spectral_edge(const ComplexEnvelope& env, const Fft& fft) {
  double edge = 0.0;
  double total = 0.0;
  const std::size_t n = env.x.size();
  const std::size_t lo = n / 2 - n / 16;
  const std::size_t hi = n / 2 + n / 16;
  std::vector<Complex> buf;
  for (const auto* field : {&env.x, &env.y}) {
    buf = *field;
    fft.forward(buf);
    for (std::size_t k = 0; k < n; ++k) {
      const double e = std::norm(buf[k]);
      total += e;
      if (k >= lo && k < hi) edge += e;
    }
  }
  return total > 0.0 ? edge / total : 0.0;
}

}  // namespace

void SolverSettings::validate(double length) const {
  if (step_mode == StepMode::fixed && !(dz_fixed > 0.0 && dz_fixed <= length)) {
    throw ValidationError("solver: dz_fixed must lie in (0, L]");
  }
  if (step_mode == StepMode::phase_bounded && !(max_phase_step > 0.0 && max_phase_step <= 0.5)) {
    throw ValidationError("solver: max_phase_step must lie in (0, 0.5]");
  }
  if (snapshot_slices == 0) throw ValidationError("solver: snapshot_slices must be >= 1");
}

NonlinearCoefficients nonlinear_coefficients_pump(const FiberParams& fiber) {
  return {fiber.gamma, 2.0 * fiber.gamma / 3.0};
}

std::span<const double> PropagationRecord::power(std::size_t k, Polarization pol) const {
  const auto& store = pol == Polarization::x ? power_x_ : power_y_;
  if (k >= store.size()) throw ValidationError("record: snapshot index out of range");
  return store[k];
}

void PropagationRecord::add_snapshot(double z, const ComplexEnvelope& env) {
  z_positions.push_back(z);
  energies.push_back(measure_energy(env));
  power_x_.push_back(env.power_x());
  power_y_.push_back(env.power_y());
}

PropagationRecord propagate_pump(const ComplexEnvelope& input, const FiberParams& fiber,
                                 const SolverSettings& settings) {
  fiber.validate();
  settings.validate(fiber.length);
  if (!input.grid) throw ValidationError("propagate_pump: envelope has no grid");

  PropagationRecord rec;
  rec.grid = input.grid;
  ComplexEnvelope env = input;
  SplitStepper stepper(fiber, input.grid);

  const Fft probe(input.grid->size());
  auto record = [&](double z) {
    rec.edge_power_fraction = std::max(rec.edge_power_fraction, edge_fraction(env));
    rec.spectral_edge_fraction = std::max(rec.spectral_edge_fraction, spectral_edge(env, probe));
    if (settings.store_snapshots) {
      rec.add_snapshot(z, env);
    } else {
      rec.z_positions.push_back(z);
      rec.energies.push_back(measure_energy(env));
    }
  };
  record(0.0);

  const std::size_t slabs = settings.snapshot_slices;
  const double slab = fiber.length / static_cast<double>(slabs);
  const double min_step = fiber.length * 1e-6;
  double z = 0.0;

  for (std::size_t s = 0; s < slabs; ++s) {
    const double slab_end = fiber.length * static_cast<double>(s + 1) / static_cast<double>(slabs);
    if (settings.step_mode == StepMode::fixed) {
      const auto n = static_cast<std::size_t>(std::ceil(slab / settings.dz_fixed - 1e-9));
      const double h = (slab_end - z) / static_cast<double>(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double rate = peak_nonlinear_rate(env, stepper.coefficients());
        rec.max_nonlinear_phase_per_step = std::max(rec.max_nonlinear_phase_per_step, rate * h);
        stepper.advance(env, h);
        ++rec.step_count;
      }
    } else {
      double remaining = slab_end - z;
      while (remaining > 1e-12 * fiber.length) {
        const double rate = peak_nonlinear_rate(env, stepper.coefficients());
        double h = rate > 0.0 ? settings.max_phase_step / rate : remaining;
        if (h >= remaining) {
          h = remaining;
        } else {
          // equalize the steps left in this slab so the boundary is hit exactly
          const double n = std::ceil(remaining / h);
          h = remaining / n;
        }
        if (h < min_step) {
          throw SolverError("propagate_pump: step collapsed to " + std::to_string(h) +
                            " m at z = " + std::to_string(slab_end - remaining) +
                            " m (peak nonlinear rate " + std::to_string(rate) + " rad/m)");
        }
        rec.max_nonlinear_phase_per_step = std::max(rec.max_nonlinear_phase_per_step, rate * h);
        stepper.advance(env, h);
        ++rec.step_count;
        remaining -= h;
      }
    }
    stepper.flush(env);
    z = slab_end;
    if (!all_finite(env)) {
      throw SolverError("propagate_pump: non-finite field at z = " + std::to_string(z) + " m");
    }
    record(z);
  }
  rec.final_envelope = std::move(env);
  return rec;
}

ComplexEnvelope propagate_pump_analytic(const ComplexEnvelope& input, const FiberParams& fiber,
                                        double z) {
  const auto c = nonlinear_coefficients_pump(fiber);
  const double z_eff = effective_length(fiber.alpha, z);
  const double decay = std::exp(-fiber.alpha * z);
  ComplexEnvelope out = input;
  for (std::size_t i = 0; i < input.x.size(); ++i) {
    const double px = std::norm(input.x[i]);
    const double py = std::norm(input.y[i]);
    out.x[i] = input.x[i] * std::polar(decay, (c.rho * px + c.sigma * py) * z_eff);
    out.y[i] = input.y[i] * std::polar(decay, (c.rho * py + c.sigma * px) * z_eff);
  }
  return out;
}

}  // namespace sagnac
