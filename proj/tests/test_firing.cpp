#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "apnorms.hpp"
#include "firing.hpp"
#include "integrate.hpp"
#include "json_io.hpp"

using namespace apfire;

namespace {

SolveConfig cfg_default() { return SolveConfig{}; }

// Independent bisection oracle on a closed-form antiderivative F:
// first s > t with F(s) - F(t) = 1, assuming F strictly increasing.
double crossing_oracle(const std::function<double(double)> &F, double t) {
  double target = F(t) + 1.0;
  double lo = t, hi = t;
  double step = 0.5;
  while (F(hi) < target) hi += step;
  lo = hi - step;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (F(mid) < target ? lo : hi) = mid;
  }
  return hi;
}

}  // namespace

TEST_CASE("charge values") {
  FiringModel model(1.0, signal_preset("ex4_3"));
  SolveConfig cfg = cfg_default();
  CHECK(charge(model, 0.0, std::log(2.0), cfg) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(charge(model, 3.7, 3.7, cfg) == 0.0);
  FiringModel pi2(0.0, Signal::constant(2.0));
  CHECK(charge(pi2, 0.0, 1.0, cfg) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("first crossings of the constant and step drives") {
  SolveConfig cfg = cfg_default();
  FiringModel unit(0.0, Signal::constant(1.0));
  for (double t : {0.0, 1.5, -3.0}) {
    double phi = fire(unit, t, cfg).time;
    CHECK(phi == doctest::Approx(t + 1.0).epsilon(1e-10));
  }
  CHECK(displacement(unit, 7.0, cfg) == doctest::Approx(1.0).epsilon(1e-10));

  FiringModel step(1.0, signal_preset("ex4_3"));
  CHECK(fire(step, 0.0, cfg).time == doctest::Approx(std::log(2.0)).epsilon(1e-9));
  CHECK(fire(step, 1.0, cfg).time ==
        doctest::Approx(std::log(std::exp(1.0) + std::exp(2.0))).epsilon(1e-9));
  CHECK(fire(step, 0.2, cfg).time == doctest::Approx(0.2 + std::log(2.0)).epsilon(1e-9));
}

TEST_CASE("crossing against an independent antiderivative oracle") {
  // PI drive 2 + cos t: charge is F(s) - F(t) with F(s) = 2s + sin s
  FiringModel model(0.0, Signal::trig({{0.0, 2.0, 0.0}, {0.0, 1.0, 1.0}}));
  SolveConfig cfg = cfg_default();
  auto F = [](double s) { return 2.0 * s + std::sin(s); };
  for (double t : {0.0, 0.7, -2.9, 12.0}) {
    double expected = crossing_oracle(F, t);
    CHECK(fire(model, t, cfg).time == doctest::Approx(expected).epsilon(1e-9));
  }
  // and the three-tone drive used by the rate checks
  FiringModel m2(0.0, signal_preset("ex6_4"));
  auto F2 = [](double s) {
    return 2.0 * s + std::sin(s) + std::sin(std::sqrt(2.0) * s) / std::sqrt(2.0);
  };
  for (double t : {0.0, 3.3}) {
    CHECK(fire(m2, t, cfg).time == doctest::Approx(crossing_oracle(F2, t)).epsilon(1e-9));
  }
}

TEST_CASE("undefined firing times raise a horizon error") {
  FiringModel model(0.0, Signal::trig({{0.5, 0.0, 1.0}}));
  SolveConfig cfg = cfg_default();
  cfg.horizon = 60.0;
  CHECK_THROWS_AS(fire(model, M_PI / 2.0, cfg), HorizonError);
  try {
    fire(model, M_PI / 2.0, cfg);
  } catch (const HorizonError &e) {
    CHECK(e.start() == doctest::Approx(M_PI / 2.0));
    CHECK(e.horizon() == doctest::Approx(60.0));
  }
}

TEST_CASE("trajectories and estimates") {
  SolveConfig cfg = cfg_default();
  FiringModel unit(0.0, Signal::constant(1.0));
  FiringTrajectory traj = trajectory(unit, 0.0, 5, cfg);
  REQUIRE(!traj.error);
  REQUIRE(traj.spikes.size() == 5);
  for (int i = 0; i < 5; ++i)
    CHECK(traj.spikes[i] == doctest::Approx(i + 1.0).epsilon(1e-9));
  for (std::size_t i = 1; i < traj.spikes.size(); ++i)
    CHECK(traj.spikes[i] > traj.spikes[i - 1]);

  RateEstimate rate = firing_rate(unit, 0.0, 10, cfg);
  for (double r : rate.sequence) CHECK(r == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rotation_number(unit, 0.0, 10, cfg) == doctest::Approx(1.0).epsilon(1e-9));

  // rotation number and rate are reciprocal along the same trajectory
  FiringModel two_tone(1.0, signal_preset("ex6_13_f"));
  double rho = rotation_number(two_tone, 0.0, 100, cfg);
  double fr = firing_rate(two_tone, 0.0, 100, cfg).estimate;
  CHECK(rho * fr == doctest::Approx(1.0).epsilon(1e-12));

  // partial trajectory on failure
  FiringModel bad(0.0, Signal::trig({{0.5, 0.0, 1.0}}));
  SolveConfig short_cfg = cfg;
  short_cfg.horizon = 40.0;
  FiringTrajectory pt = trajectory(bad, 0.0, 5, short_cfg);
  CHECK(pt.error.has_value());
  CHECK(pt.error_index == pt.spikes.size());
  CHECK(pt.spikes.size() >= 1);  // Phi(0) = pi/3-ish exists for the half-sine
}

TEST_CASE("varsigma override bounds the search and the displacement") {
  SolveConfig cfg = cfg_default();
  cfg.varsigma = 1.0;
  CHECK(cfg.effective_horizon(0.0) == doctest::Approx(1.0 + cfg.scan_step));
  FiringModel unit(0.0, Signal::constant(1.0));
  for (double t : {0.1, 0.3, 123.456, -77.7}) {
    double psi = displacement(unit, t, cfg);
    CHECK(psi > 0.0);
    CHECK(psi <= 1.0 + 1e-9);
  }
}

TEST_CASE("uniform continuity probe of the displacement") {
  SolveConfig cfg = cfg_default();
  // continuous positive drive: sampled modulus shrinks towards zero
  FiringModel trig(0.0, signal_preset("ex6_4"));
  double prev = 1e300;
  for (double delta : {0.1, 0.01, 0.001}) {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      double t = 20.0 * i / 200.0;
      worst = std::max(worst, std::abs(displacement(trig, t + delta, cfg) -
                                       displacement(trig, t, cfg)));
    }
    CHECK(worst < prev);
    prev = worst;
  }
  CHECK(prev < 0.01);  // the final modulus is small for the smooth drive

  // the step model keeps unit-size jumps, so the modulus plateaus near 1
  // while still decreasing in delta
  FiringModel step(1.0, signal_preset("ex4_3"));
  prev = 1e300;
  for (double delta : {0.1, 0.01, 0.001}) {
    double worst = 0.0;
    for (int i = 0; i < 400; ++i) {
      double t = 10.0 * i / 400.0;
      worst = std::max(worst, std::abs(displacement(step, t + delta, cfg) -
                                       displacement(step, t, cfg)));
    }
    CHECK(worst < prev);
    prev = worst;
  }
}

TEST_CASE("accepted Stepanov almost periods nearly translate the displacement") {
  // drive 2 + cos t with floor 1: shifts accepted at level eps'^2/4 move the
  // displacement by less than eps
  auto f = Signal::trig({{0.0, 2.0, 0.0}, {0.0, 1.0, 1.0}});
  FiringModel model(0.0, f);
  SolveConfig cfg = cfg_default();
  const double eps = 0.5, floor = 1.0;
  ScanParams params;
  params.mode = ScanMode::Stepanov;
  params.p = 1.0;
  params.eps = floor * floor * eps / 4.0;
  params.window = Window(0.0, 40.0);
  params.samples_per_unit = 64;
  std::vector<double> taus;
  for (int t = 1; t <= 100; ++t) taus.push_back(t);
  AlmostPeriodScan scan = scan_periods(*f, params, taus);
  int accepted = 0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (!scan.accepted[i]) continue;
    ++accepted;
    double worst = 0.0;
    for (int k = 0; k < 60; ++k) {
      double t = 30.0 * k / 60.0;
      worst = std::max(worst, std::abs(displacement(model, t + taus[i], cfg) -
                                       displacement(model, t, cfg)));
    }
    CHECK(worst < eps);
  }
  CHECK(accepted >= 1);  // tau = 44 is a high-quality integer almost period
}

TEST_CASE("well-definedness probe") {
  SolveConfig cfg = cfg_default();
  FiringModel unit(0.0, Signal::constant(1.0));
  CHECK(well_defined_probe(unit, 10.0, cfg) == ProbeVerdict::LikelyDefined);
  FiringModel step(1.0, signal_preset("ex4_3"));
  CHECK(well_defined_probe(step, 50.0, cfg) == ProbeVerdict::LikelyDefined);
  FiringModel borderline(
      1.0, Signal::sum({Signal::constant(1.0), Signal::exponential(1.0, -2.0)}));
  CHECK(well_defined_probe(borderline, 30.0, cfg) == ProbeVerdict::Unknown);
}

TEST_CASE("solver parameter validation") {
  FiringModel unit(0.0, Signal::constant(1.0));
  SolveConfig cfg = cfg_default();
  cfg.scan_step = 0.0;
  CHECK_THROWS_AS(fire(unit, 0.0, cfg), std::invalid_argument);
  CHECK_THROWS_AS(FiringModel(-1.0, Signal::constant(1.0)), std::invalid_argument);
  CHECK_THROWS_AS(trajectory(unit, 0.0, 0, cfg_default()), std::invalid_argument);
  CHECK_THROWS_AS(firing_rate(unit, 0.0, 1, cfg_default()), std::invalid_argument);
}
