#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "sagnac/error.hpp"
#include "sagnac/propagator.hpp"
#include "sagnac/pulse.hpp"

using namespace sagnac;

namespace {

PumpConfig pump(double energy, double fwhm = 5.0) {
  PumpConfig p;
  p.energy_pj = energy;
  p.intensity_fwhm_ps = fwhm;
  return p;
}

double max_field_error(const ComplexEnvelope& a, const ComplexEnvelope& b) {
  double err = 0.0;
  for (std::size_t i = 0; i < a.x.size(); ++i) {
    err = std::max(err, std::abs(a.x[i] - b.x[i]));
    err = std::max(err, std::abs(a.y[i] - b.y[i]));
  }
  return err;
}

}  // namespace

TEST_CASE("nonlinear coefficients") {
  FiberParams f;
  const auto c = nonlinear_coefficients_pump(f);
  CHECK(c.rho == f.gamma);
  CHECK(c.sigma == doctest::Approx(2.0 * f.gamma / 3.0));
}

TEST_CASE("linear gaussian broadening matches the dispersion law") {
  FiberParams f;
  f.length = 500.0;
  const auto grid = make_grid(1u << 13, 512.0);
  const auto in = build_gaussian_pump(pump(1e-6), grid);
  SolverSettings s;
  s.store_snapshots = false;
  const auto rec = propagate_pump(in, f, s);
  const double sigma = pump(1e-6).sigma();
  const double expected = 5.0 * oracle::dispersive_broadening(f.beta2_pump, f.length, sigma);
  const double got = measure_intensity_fwhm(rec.final_envelope).width;
  CHECK(got == doctest::Approx(expected).epsilon(2e-3));
}

TEST_CASE("energy is conserved without loss") {
  FiberParams f;
  f.length = 100.0;
  const auto grid = make_grid(1u << 13, 512.0);
  const auto in = build_gaussian_pump(pump(2500.0), grid);
  SolverSettings s;
  s.snapshot_slices = 16;
  const auto rec = propagate_pump(in, f, s);
  const double e0 = measure_energy(in);
  for (double e : rec.energies) CHECK(std::abs(e - e0) / e0 < 1e-9);
  CHECK(rec.max_nonlinear_phase_per_step <= s.max_phase_step * (1.0 + 1e-12));
  CHECK(rec.z_positions.size() == 17);
  CHECK(rec.snapshot_count() == 17);
}

TEST_CASE("energy follows the field loss law") {
  FiberParams f;
  f.length = 500.0;
  f.alpha = 2.3e-4;
  const auto grid = make_grid(1u << 12, 512.0);
  const auto in = build_gaussian_pump(pump(1000.0), grid);
  SolverSettings s;
  s.snapshot_slices = 8;
  const auto rec = propagate_pump(in, f, s);
  const double e0 = measure_energy(in);
  for (std::size_t k = 0; k < rec.z_positions.size(); ++k) {
    const double expected = e0 * std::exp(-2.0 * f.alpha * rec.z_positions[k]);
    CHECK(rec.energies[k] == doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("dispersionless run matches the closed form") {
  FiberParams f;
  f.length = 200.0;
  f.alpha = 1e-3;
  f.beta2_pump = 0.0;
  const auto grid = make_grid(1u << 12, 256.0);
  const auto in = build_gaussian_pump(pump(2500.0), grid);
  SolverSettings s;
  s.snapshot_slices = 4;
  const auto rec = propagate_pump(in, f, s);
  const auto exact = propagate_pump_analytic(in, f, f.length);
  const double peak = std::sqrt(in.power_x()[grid->size() / 2]);
  CHECK(max_field_error(rec.final_envelope, exact) / peak < 1e-10);
}

TEST_CASE("split step converges at second order") {
  FiberParams f;
  f.length = 100.0;
  const auto grid = make_grid(1u << 12, 256.0);
  const auto in = build_gaussian_pump(pump(300.0), grid);
  auto run = [&](double dz) {
    SolverSettings s;
    s.step_mode = StepMode::fixed;
    s.dz_fixed = dz;
    s.snapshot_slices = 1;
    s.store_snapshots = false;
    return propagate_pump(in, f, s).final_envelope;
  };
  const auto ref = run(0.0125);
  const double e1 = max_field_error(run(1.0), ref);
  const double e2 = max_field_error(run(0.5), ref);
  const double e3 = max_field_error(run(0.25), ref);
  const double order_a = std::log2(e1 / e2);
  const double order_b = std::log2(e2 / e3);
  MESSAGE("observed orders " << order_a << ", " << order_b);
  CHECK(order_a >= 1.9);
  CHECK(order_b >= 1.9);
}

TEST_CASE("snapshots bracket the run") {
  FiberParams f;
  const auto grid = make_grid(1u << 12, 256.0);
  const auto in = build_gaussian_pump(pump(100.0), grid);
  SolverSettings s;
  s.snapshot_slices = 10;
  const auto rec = propagate_pump(in, f, s);
  REQUIRE(rec.has_snapshots());
  CHECK(rec.z_positions.front() == 0.0);
  CHECK(rec.z_positions.back() == doctest::Approx(f.length));
  const auto p0 = rec.power(0, Polarization::x);
  CHECK(p0[grid->size() / 2] == doctest::Approx(in.power_x()[grid->size() / 2]));
  CHECK(rec.edge_power_fraction < 1e-12);
}

TEST_CASE("solver settings are validated") {
  SolverSettings s;
  s.step_mode = StepMode::fixed;
  s.dz_fixed = 0.0;
  CHECK_THROWS_AS(s.validate(100.0), ValidationError);
  s.dz_fixed = 200.0;
  CHECK_THROWS_AS(s.validate(100.0), ValidationError);
  s = SolverSettings{};
  s.snapshot_slices = 0;
  CHECK_THROWS_AS(s.validate(100.0), ValidationError);
}

TEST_CASE("non-finite input is a solver error") {
  FiberParams f;
  const auto grid = make_grid(1024, 128.0);
  auto in = build_gaussian_pump(pump(10.0), grid);
  in.x[3] = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(propagate_pump(in, f, SolverSettings{}), SolverError);
}

TEST_CASE("fundamental soliton keeps its shape under anomalous dispersion") {
  // equal polarizations see rho + sigma = 5 gamma / 3 on the per-axis power
  FiberParams f;
  f.length = 300.0;
  const double t0 = 2.0;
  const double p0 = std::abs(f.beta2_pump) / (5.0 * f.gamma / 3.0 * t0 * t0);
  const auto grid = make_grid(1u << 12, 256.0);
  ComplexEnvelope in(grid, 1550.0);
  const auto t = grid->t();
  for (std::size_t i = 0; i < t.size(); ++i) {
    in.x[i] = std::sqrt(p0) / std::cosh(t[i] / t0);
    in.y[i] = in.x[i];
  }
  SolverSettings s;
  s.step_mode = StepMode::fixed;
  s.dz_fixed = 0.5;
  s.snapshot_slices = 1;
  s.store_snapshots = false;
  const auto out = propagate_pump(in, f, s).final_envelope;
  double err = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) err = std::max(err, std::abs(std::norm(out.x[i]) - p0 / std::pow(std::cosh(t[i] / t0), 2)));
  CHECK(err / p0 < 1e-3);
  // the soliton length is ~ t0^2 / |beta2| = 200 m, so a wrong sign would
  // visibly reshape the pulse
}
