#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "sagnac/error.hpp"
#include "sagnac/phase.hpp"
#include "sagnac/pulse.hpp"
#include "sagnac/units.hpp"

using namespace sagnac;

namespace {

const XpmCoefficients xi{1.2e-3, 0.5e-3};

PumpConfig pump(double energy) {
  PumpConfig p;
  p.energy_pj = energy;
  p.intensity_fwhm_ps = 5.0;
  return p.resolved();
}

// Direct z-quadrature of the Gaussian pump overlap, with field loss.
double mu_quadrature(const FiberParams& f, double sigma, double beta, double t) {
  const double u = t - f.signal_transit();
  auto integrand = [&](double z) {
    const double a = (u + z * beta) / sigma;
    return std::exp(-2.0 * f.alpha * z - a * a);
  };
  return oracle::simpson_fixed(integrand, 0.0, f.length, 200000);
}

}  // namespace

TEST_CASE("gaussian mu agrees with quadrature") {
  const double sigma = pump(1.0).sigma();
  for (double alpha : {0.0, 2.3e-4, 5e-3}) {
    FiberParams f;
    f.alpha = alpha;
    const double tc = f.length * f.beta_minus / 2.0;
    for (double dt : {-150.0, -104.0, -50.0, 0.0, 37.0, 103.0, 140.0}) {
      const double t = tc + dt;
      CHECK(gaussian_mu(f, sigma, Direction::co, t) ==
            doctest::Approx(mu_quadrature(f, sigma, f.beta_plus, t)).epsilon(1e-8).scale(1e-6));
      CHECK(gaussian_mu(f, sigma, Direction::counter, t) ==
            doctest::Approx(mu_quadrature(f, sigma, f.beta_minus, t)).epsilon(1e-8).scale(1e-6));
    }
  }
}

TEST_CASE("lockstep mu agrees with quadrature") {
  FiberParams f;
  f.beta_plus = 0.0;
  f.alpha = 1e-3;
  const double sigma = pump(1.0).sigma();
  for (double du : {-4.0, -1.0, 0.0, 2.5}) {
    const double t = f.signal_transit() + du;
    CHECK(gaussian_mu(f, sigma, Direction::co, t) ==
          doctest::Approx(mu_quadrature(f, sigma, 0.0, t)).epsilon(1e-9));
  }
}

TEST_CASE("co plateau equals E xi / 2 beta_plus") {
  FiberParams f;
  const auto p = pump(2500.0);
  const double tc = f.length * f.beta_minus / 2.0;
  const std::vector<double> t{tc};
  const auto phi = xpm_phase_gaussian(f, p, xi, Direction::co, t);
  CHECK(phi.phase[0] == doctest::Approx(co_plateau_phase(f, xi, 2500.0)).epsilon(1e-12));
  CHECK(co_plateau_phase(f, xi, 2500.0) == doctest::Approx(2500.0 * xi.sum() / (2.0 * 2.1)));
}

TEST_CASE("plateau ratio between counter and co is beta_plus / beta_minus") {
  FiberParams f;
  const auto p = pump(2500.0);
  const double tc = f.length * f.beta_minus / 2.0;
  const std::vector<double> t{tc};
  const double co = xpm_phase_gaussian(f, p, xi, Direction::co, t).phase[0];
  const double counter = xpm_phase_gaussian(f, p, xi, Direction::counter, t).phase[0];
  CHECK(counter / co == doctest::Approx(f.beta_plus / f.beta_minus).epsilon(1e-9));
}

TEST_CASE("phase is linear in pump energy") {
  FiberParams f;
  const auto t = window_time_axis(f, 1.0, 20.0);
  const auto a = xpm_phase_gaussian(f, pump(1000.0), xi, Direction::co, t);
  const auto b = xpm_phase_gaussian(f, pump(3000.0), xi, Direction::co, t);
  for (std::size_t i = 0; i < t.size(); ++i) {
    CHECK(b.phase[i] == doctest::Approx(3.0 * a.phase[i]).epsilon(1e-12));
  }
}

TEST_CASE("numeric phase matches the closed form for a dispersionless pump") {
  for (double alpha : {0.0, 1e-3}) {
    FiberParams f;
    f.alpha = alpha;
    f.beta2_pump = 0.0;
    const auto p = pump(2500.0);
    const auto grid = make_grid(1u << 13, 512.0);
    SolverSettings s;
    s.snapshot_slices = 256;
    const auto rec = propagate_pump(build_gaussian_pump(p, grid), f, s);
    const auto t = window_time_axis(f, 0.5, 30.0);
    for (auto dir : {Direction::co, Direction::counter}) {
      const auto num = xpm_phase_numeric(rec, f, xi, dir, t);
      const auto ref = xpm_phase_gaussian(f, p, xi, dir, t);
      const double scale = *std::max_element(ref.phase.begin(), ref.phase.end());
      double err = 0.0;
      for (std::size_t i = 0; i < t.size(); ++i) {
        CHECK_FALSE(num.masked[i]);
        err = std::max(err, std::abs(num.phase[i] - ref.phase[i]));
      }
      MESSAGE("alpha " << alpha << " relative error " << err / scale);
      CHECK(err / scale < 1e-4);
    }
  }
}

TEST_CASE("pump touching the grid edge masks samples that look past it") {
  // strong dispersion spreads a 1-ps pump across the whole grid
  FiberParams f;
  f.beta2_pump = -1.0;
  PumpConfig wide;
  wide.energy_pj = 1.0;
  wide.intensity_fwhm_ps = 1.0;
  const auto grid = make_grid(1u << 11, 256.0);
  SolverSettings s;
  s.snapshot_slices = 16;
  const auto rec = propagate_pump(build_gaussian_pump(wide, grid), f, s);
  CHECK(rec.edge_power_fraction > 1e-8);
  const auto t = window_time_axis(f, 1.0, 0.0);
  const auto co = xpm_phase_numeric(rec, f, xi, Direction::co, t);
  // the co window lasts L beta_+ = 210 ps, far less than the grid, but the
  // counter direction sweeps L beta_- = 980 ps and must leave it
  const auto counter = xpm_phase_numeric(rec, f, xi, Direction::counter, t);
  CHECK(std::count(counter.masked.begin(), counter.masked.end(), 1) == static_cast<long>(t.size()));
  CHECK(std::count(co.masked.begin(), co.masked.end(), 1) > 0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (counter.masked[i]) CHECK(counter.phase[i] == 0.0);
  }
}

TEST_CASE("window metrics") {
  FiberParams f;
  const auto p = pump(1.0);
  const auto m = window_metrics(f, p, xi);
  REQUIRE(m.e_star);
  CHECK(*m.e_star == doctest::Approx(2.0 * units::pi * 2.1 / xi.sum()));
  CHECK(m.t_center == doctest::Approx(490.0));
  // frozen from scipy.special.erfinv
  CHECK(m.tau_w == doctest::Approx(204.72991325551).epsilon(1e-10));
  CHECK(m.walk_through_ok);

  f.length = 500.0;
  CHECK(window_metrics(f, p, xi).tau_w == doctest::Approx(1044.72991325551).epsilon(1e-10));

  f.length = 2.0;
  CHECK_FALSE(window_metrics(f, p, xi).walk_through_ok);

  f = FiberParams{};
  f.beta_plus = 0.0;
  const auto lock = window_metrics(f, p, xi);
  CHECK_FALSE(lock.e_star);
  CHECK(lock.tau_w == 0.0);
}

TEST_CASE("erf_inv inverts erf") {
  for (double y : {-0.999999, -0.5, -1e-9, 0.0, 0.3, units::pi / 4.0, 0.99, 0.9999999}) {
    CHECK(std::erf(erf_inv(y)) == doctest::Approx(y).epsilon(1e-13).scale(1.0));
  }
  CHECK_THROWS_AS(erf_inv(1.0), ValidationError);
}

TEST_CASE("combine rejects negative or mismatched phases") {
  PhaseProfile a{{0.0, 1.0}, {0.1, 0.2}, {0, 0}};
  PhaseProfile b{{0.0, 1.0}, {0.0, -0.5}, {0, 0}};
  CHECK_THROWS_AS(PhasePair::combine(a, b, PhaseProvenance::numeric), ValidationError);
  PhaseProfile c{{0.0, 2.0}, {0.0, 0.0}, {0, 0}};
  CHECK_THROWS_AS(PhasePair::combine(a, c, PhaseProvenance::numeric), ValidationError);
  PhaseProfile d{{0.0, 1.0}, {0.0, 0.1}, {0, 1}};
  const auto pair = PhasePair::combine(a, d, PhaseProvenance::gaussian_analytic);
  CHECK(pair.theta[0] == doctest::Approx(0.05));
  CHECK(pair.phi_common[1] == doctest::Approx(0.15));
  CHECK(pair.masked[1] == 1);
}

TEST_CASE("total switch energy requires positive xi") {
  FiberParams f;
  CHECK_THROWS_AS(total_switch_energy(f, XpmCoefficients{0.0, 0.0}), ValidationError);
}

TEST_CASE("window axis spans both transit times") {
  FiberParams f;
  const auto t = window_time_axis(f, 1.0, 10.0);
  CHECK(t.front() <= f.pump_transit() - 10.0 + 1e-9);
  CHECK(t.back() >= f.signal_transit() + 10.0 - 1e-9);
}
