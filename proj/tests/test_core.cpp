#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sagnac/error.hpp"
#include "sagnac/fft.hpp"
#include "sagnac/grid.hpp"
#include "sagnac/params.hpp"
#include "sagnac/pulse.hpp"
#include "sagnac/units.hpp"

using namespace sagnac;

namespace {

PumpConfig five_ps_pump(double energy) {
  PumpConfig p;
  p.energy_pj = energy;
  p.intensity_fwhm_ps = 5.0;
  return p;
}

}  // namespace

TEST_CASE("make_grid axes") {
  auto g = make_grid(1024, 1024.0);
  CHECK(g->dt() == doctest::Approx(1.0));
  CHECK(g->omega()[1] == doctest::Approx(2.0 * units::pi / 1024.0));
  CHECK(g->omega()[1023] == doctest::Approx(-2.0 * units::pi / 1024.0));
  CHECK(g->omega()[512] == doctest::Approx(-units::pi));
  CHECK(g->t()[512] == 0.0);
  CHECK(g->dt() * static_cast<double>(g->size()) == g->span());

  auto fine = make_grid(1u << 15, 4096.0);
  CHECK(fine->dt() == 0.125);
}

TEST_CASE("make_grid rejects bad sizes") {
  CHECK_THROWS_AS(make_grid(1000, 100.0), ValidationError);
  CHECK_THROWS_AS(make_grid(512, 100.0), ValidationError);
  CHECK_THROWS_AS(make_grid(1024, 0.0), ValidationError);
}

TEST_CASE("pump configuration resolution") {
  const auto p = five_ps_pump(2500.0).resolved();
  CHECK(*p.sigma_ps == doctest::Approx(3.0028).epsilon(1e-4));
  // E = 2 sqrt(pi) sigma P0 with P0 per polarization
  CHECK(*p.peak_power_w == doctest::Approx(2500.0 / (2.0 * std::sqrt(units::pi) * *p.sigma_ps)));
  CHECK(*p.peak_power_w == doctest::Approx(234.8).epsilon(1e-3));

  auto doubled = five_ps_pump(2500.0);
  doubled.intensity_fwhm_ps = 10.0;
  CHECK(doubled.peak_power() == doctest::Approx(0.5 * five_ps_pump(2500.0).peak_power()));

  CHECK(p.resolved().peak_power() == *p.peak_power_w);

  PumpConfig both;
  both.energy_pj = 1.0;
  both.peak_power_w = 1.0;
  both.sigma_ps = 1.0;
  CHECK_THROWS_AS(both.resolved(), ValidationError);

  PumpConfig neither;
  neither.sigma_ps = 1.0;
  CHECK_THROWS_AS(neither.resolved(), ValidationError);

  PumpConfig inconsistent = five_ps_pump(1.0);
  inconsistent.sigma_ps = 1.0;
  CHECK_THROWS_AS(inconsistent.resolved(), ValidationError);

  CHECK(intensity_fwhm_from_sigma(sigma_from_intensity_fwhm(5.0)) == doctest::Approx(5.0));
}

TEST_CASE("gaussian pump energy and peak") {
  auto g = make_grid(1u << 13, 512.0);
  const auto env = build_gaussian_pump(five_ps_pump(2500.0), g);
  CHECK(measure_energy(env) == doctest::Approx(2500.0).epsilon(1e-6));
  CHECK(std::norm(env.x[g->size() / 2]) == doctest::Approx(234.8).epsilon(1e-3));
  CHECK(std::norm(env.y[g->size() / 2]) == doctest::Approx(234.8).epsilon(1e-3));

  const auto zero = build_gaussian_pump(five_ps_pump(0.0), g);
  CHECK(measure_energy(zero) == 0.0);
  CHECK_THROWS_AS(measure_intensity_fwhm(zero), ValidationError);
}

TEST_CASE("gaussian pump rejects narrow grid") {
  auto g = make_grid(1024, 50.0);
  CHECK_THROWS_AS(build_gaussian_pump(five_ps_pump(100.0), g), ValidationError);
}

TEST_CASE("square pulse energy and width") {
  auto g = make_grid(1024, 102.4);
  ComplexEnvelope env(g, 1550.0);
  const auto t = g->t();
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] >= -5.0 && t[i] < 5.0) env.x[i] = std::sqrt(100.0);
  }
  CHECK(measure_energy(env) == doctest::Approx(1000.0).epsilon(1e-9));
  const auto w = measure_intensity_fwhm(env);
  CHECK(w.width == doctest::Approx(10.0).epsilon(1e-9));
  CHECK_FALSE(w.multimodal);
}

TEST_CASE("gaussian FWHM within one sample") {
  auto g = make_grid(1u << 12, 256.0);
  const auto env = build_gaussian_pump(five_ps_pump(100.0), g);
  const auto w = measure_intensity_fwhm(env);
  CHECK(std::abs(w.width - 5.0) < g->dt());
}

TEST_CASE("fwhm flags multimodal profiles and keeps outer crossings") {
  std::vector<double> t, y;
  for (int i = 0; i < 200; ++i) {
    t.push_back(i);
    const double a = std::exp(-std::pow((i - 60) / 5.0, 2));
    const double b = std::exp(-std::pow((i - 140) / 5.0, 2));
    y.push_back(a + b);
  }
  const auto w = measure_fwhm(t, y);
  CHECK(w.multimodal);
  CHECK(w.left < 60.0);
  CHECK(w.right > 140.0);
}

TEST_CASE("parseval round trip") {
  auto g = make_grid(1u << 12, 256.0);
  auto env = build_gaussian_pump(five_ps_pump(777.0), g);
  const double e_time = measure_energy(env);
  Fft fft(g->size());
  auto spec = env.x;
  fft.forward(spec);
  double e_spec = 0.0;
  for (const auto& v : spec) e_spec += std::norm(v);
  e_spec *= 2.0 * g->dt() / static_cast<double>(g->size());  // two equal polarizations
  CHECK(std::abs(e_spec - e_time) / e_time < 1e-10);
  fft.inverse(spec);
  double err = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) err = std::max(err, std::abs(spec[i] - env.x[i]));
  CHECK(err < 1e-12);
}

TEST_CASE("energy is stable under grid refinement") {
  const auto coarse = build_gaussian_pump(five_ps_pump(500.0), make_grid(1u << 12, 256.0));
  const auto fine = build_gaussian_pump(five_ps_pump(500.0), make_grid(1u << 13, 256.0));
  const double a = measure_energy(coarse);
  const double b = measure_energy(fine);
  CHECK(std::abs(a - b) / b < 1e-8);
}

TEST_CASE("sech2 pump energy") {
  PumpConfig p;
  p.shape = PulseShape::sech2;
  p.energy_pj = 2500.0;
  p.intensity_fwhm_ps = 5.0;
  const auto env = build_sech2_pump(p, make_grid(1u << 13, 512.0));
  CHECK(measure_energy(env) == doctest::Approx(2500.0).epsilon(1e-6));
  CHECK(measure_intensity_fwhm(env).width == doctest::Approx(5.0).epsilon(0.02));
}

TEST_CASE("gamma from a 10 um mode field") {
  CHECK(gamma_from_mode_field(silica_n2, 1550.0, 10.0) == doctest::Approx(1.342e-3).epsilon(1e-3));
}

TEST_CASE("fiber validation") {
  FiberParams f;
  CHECK_NOTHROW(f.validate());
  f.beta_minus = 1.0;
  CHECK_THROWS_AS(f.validate(), ValidationError);
  f = FiberParams{};
  f.f_raman = 1.0;
  CHECK_THROWS_AS(f.validate(), ValidationError);
  f = FiberParams{};
  CHECK(f.inverse_signal_velocity() - f.inverse_pump_velocity() == doctest::Approx(f.beta_plus));
}

TEST_CASE("scenario validation") {
  SwitchScenario s;
  s.pump = five_ps_pump(100.0);
  CHECK_NOTHROW(s.validate());
  s.signal_wavelength_nm = s.pump.wavelength_nm;
  CHECK_THROWS_AS(s.validate(), ValidationError);
  s.signal_wavelength_nm = 1310.0;
  s.temperature_k = 0.0;
  CHECK_THROWS_AS(s.validate(), ValidationError);
}
