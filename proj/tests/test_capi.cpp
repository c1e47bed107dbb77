// Exercises the shared-library C interface end to end: handles, status
// codes, error text, and a smoke run of the verification entry point.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "apfire/apfire.h"

namespace {

struct Sig {
  apf_signal *p = nullptr;
  explicit Sig(apf_signal *s) : p(s) {}
  ~Sig() { apf_signal_free(p); }
};

}  // namespace

TEST_CASE("signal handles, evaluation and integration") {
  Sig step(apf_signal_preset("ex4_3"));
  REQUIRE(step.p != nullptr);
  double v = 0.0;
  CHECK(apf_signal_eval(step.p, 0.5, &v) == APF_OK);
  CHECK(v == 2.0);

  double value = 0.0, err = -1.0;
  CHECK(apf_signal_integrate(step.p, 0.0, 2.0, 1e-10, &value, &err) == APF_OK);
  CHECK(value == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(err == 0.0);

  CHECK(apf_signal_integrate_weighted(step.p, 1.0, 0.0, std::log(2.0), 1e-10, &value,
                                      &err) == APF_OK);
  CHECK(value == doctest::Approx(1.0).epsilon(1e-12));

  // malformed JSON and unknown presets set last_error and return null
  CHECK(apf_signal_from_json("{\"kind\":\"zzz\"}") == nullptr);
  CHECK(std::strlen(apf_last_error()) > 0);
  CHECK(apf_signal_preset("zzz") == nullptr);

  Sig parsed(apf_signal_from_json(
      "{\"kind\":\"sum\",\"children\":[{\"kind\":\"const\",\"value\":2},"
      "{\"kind\":\"trig\",\"terms\":[[0,1,1]]}]}"));
  REQUIRE(parsed.p != nullptr);
  CHECK(apf_signal_eval(parsed.p, 0.0, &v) == APF_OK);
  CHECK(v == 3.0);

  Sig dy(apf_signal_preset("ex4_12"));
  int terms = -1;
  CHECK(apf_signal_active_terms(dy.p, -1.0, 1.0, &terms) == APF_OK);
  CHECK(terms == 2);

  Sig shifted(apf_signal_shift(step.p, 2.0));
  REQUIRE(shifted.p != nullptr);
  double v2 = 0.0;
  CHECK(apf_signal_eval(shifted.p, 0.5, &v2) == APF_OK);
  CHECK(v2 == 2.0);
  Sig scaled(apf_signal_scale(step.p, -2.0));
  CHECK(apf_signal_eval(scaled.p, 0.5, &v2) == APF_OK);
  CHECK(v2 == -4.0);
  const apf_signal *pair[] = {step.p, scaled.p};
  Sig total(apf_signal_sum(pair, 2));
  CHECK(apf_signal_eval(total.p, 0.5, &v2) == APF_OK);
  CHECK(v2 == -2.0);
  Sig clamped(apf_signal_clamp(step.p, 1.5));
  CHECK(apf_signal_eval(clamped.p, 0.5, &v2) == APF_OK);
  CHECK(v2 == 1.5);

  CHECK(apf_signal_eval(nullptr, 0.0, &v) == APF_ERR_USAGE);
  CHECK(apf_signal_integrate(step.p, 2.0, 0.0, 1e-10, &value, &err) == APF_ERR_USAGE);
}

TEST_CASE("model handles and solver surface") {
  Sig step(apf_signal_preset("ex4_3"));
  apf_model *model = apf_model_new(step.p, 1.0);
  REQUIRE(model != nullptr);
  apf_solve_config cfg;
  apf_solve_config_default(&cfg);
  CHECK(cfg.scan_step == doctest::Approx(1e-3));
  CHECK(cfg.time_tol == doctest::Approx(1e-10));

  double q = 0.0;
  CHECK(apf_charge(model, 0.0, std::log(2.0), &cfg, &q) == APF_OK);
  CHECK(q == doctest::Approx(1.0).epsilon(1e-12));

  double phi = 0.0, residual = 0.0;
  CHECK(apf_fire(model, 0.0, &cfg, &phi, &residual) == APF_OK);
  CHECK(phi == doctest::Approx(std::log(2.0)).epsilon(1e-9));
  CHECK(residual <= 1e-8);

  double psi = 0.0;
  CHECK(apf_displacement(model, 0.0, &cfg, &psi) == APF_OK);
  CHECK(psi == doctest::Approx(std::log(2.0)).epsilon(1e-9));

  std::vector<double> spikes(10), residuals(10);
  int done = 0;
  CHECK(apf_trajectory(model, 0.0, 10, &cfg, spikes.data(), residuals.data(), &done) ==
        APF_OK);
  CHECK(done == 10);

  double estimate = 0.0;
  std::vector<double> sequence(50);
  CHECK(apf_firing_rate(model, 0.0, 50, &cfg, &estimate, sequence.data()) == APF_OK);
  CHECK(estimate > 0.5);
  double rho = 0.0;
  CHECK(apf_rotation_number(model, 0.0, 50, &cfg, &rho) == APF_OK);
  CHECK(rho * estimate == doctest::Approx(1.0).epsilon(1e-12));

  int verdict = -1;
  CHECK(apf_well_defined_probe(model, 20.0, &cfg, &verdict) == APF_OK);
  CHECK(verdict == 1);
  apf_model_free(model);

  // horizon errors surface as the dedicated status code
  Sig half_sine(apf_signal_from_json("{\"kind\":\"trig\",\"terms\":[[0.5,0,1]]}"));
  apf_model *pi = apf_model_new(half_sine.p, 0.0);
  cfg.horizon = 40.0;
  CHECK(apf_fire(pi, M_PI / 2.0, &cfg, &phi, &residual) == APF_ERR_HORIZON);
  CHECK(std::strlen(apf_last_error()) > 0);
  int partial = -1;
  std::vector<double> ps(4);
  CHECK(apf_trajectory(pi, 0.0, 4, &cfg, ps.data(), nullptr, &partial) ==
        APF_ERR_HORIZON);
  CHECK(partial >= 1);
  apf_model_free(pi);
}

TEST_CASE("metrics surface") {
  Sig mu(apf_signal_preset("ex4_12"));
  double norm = 0.0;
  CHECK(apf_stepanov_norm(mu.p, 1.0, 1.0, -4.0, 4.0, 8, &norm) == APF_OK);
  CHECK(norm >= 1.0);

  Sig cut(apf_signal_from_json("{\"kind\":\"dyadic\",\"name\":\"mu_no_mu\",\"terms\":2}"));
  double dev = 0.0;
  CHECK(apf_d_measure(mu.p, cut.p, 0.5, -8.0, 8.0, 4, &dev) == APF_OK);
  CHECK(dev == doctest::Approx(std::ldexp(1.0, -3)).epsilon(1e-12));

  double fnorm = 0.0;
  CHECK(apf_f_norm_prime(mu.p, -2.0, 2.0, 4, &fnorm) == APF_OK);
  CHECK(fnorm > 0.4);
  CHECK(fnorm < 1.0);

  double taus[] = {2.0, 3.0, 4.0};
  double devs[3];
  int accepted[3];
  double gap = 0.0;
  Sig step(apf_signal_preset("ex4_3"));
  CHECK(apf_scan_periods(step.p, APF_SCAN_UNIFORM, 1e-6, 1.0, 0.5, taus, 3, 0.0, 8.0,
                         256, devs, accepted, &gap) == APF_OK);
  CHECK(accepted[0] == 1);
  CHECK(accepted[1] == 0);
  CHECK(accepted[2] == 1);
  CHECK(gap == doctest::Approx(2.0));

  double schedule[] = {1.0, 2.0, 4.0, 8.0};
  double partials[4];
  int verdict = -1;
  double limit = 0.0;
  size_t wlo = 0, whi = 0;
  Sig c2(apf_signal_from_json("{\"kind\":\"const\",\"value\":2}"));
  CHECK(apf_mean_value(c2.p, schedule, 4, 1e-3, 3, partials, &verdict, &limit, &wlo,
                       &whi) == APF_OK);
  CHECK(verdict == APF_MEAN_CONVERGED);
  CHECK(limit == doctest::Approx(2.0));

  double res = 0.0;
  Sig sine(apf_signal_from_json("{\"kind\":\"trig\",\"terms\":[[1,0,1]]}"));
  CHECK(apf_antiderivative_residual(sine.p, 0.0, -10.0, 10.0, 512, &res) == APF_OK);
  CHECK(res == doctest::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("haar surface") {
  double v = 0.0;
  CHECK(apf_haar_fn(0, 2, 0.25, &v) == APF_OK);
  CHECK(v == 1.0);
  CHECK(apf_haar_fn(0, 2, 0.75, &v) == APF_OK);
  CHECK(v == -1.0);

  Sig step(apf_signal_preset("ex4_3"));
  apf_haar *coeffs = apf_haar_coefficients(step.p, -2, 2, 4, 1e-10);
  REQUIRE(coeffs != nullptr);
  double a = 0.0;
  CHECK(apf_haar_at(coeffs, 0, 1, &a) == APF_OK);
  CHECK(a == doctest::Approx(2.0));
  double proj = 0.0;
  CHECK(apf_haar_project(coeffs, 0.3, &proj) == APF_OK);
  CHECK(proj == doctest::Approx(2.0));
  CHECK(apf_haar_project(coeffs, 7.5, &proj) == APF_ERR_USAGE);
  apf_haar_free(coeffs);

  double err = -1.0;
  CHECK(apf_haar_projection_error(step.p, 4, 1.0, -2, 2, 1e-10, &err) == APF_OK);
  CHECK(err == 0.0);
  double lhs = 0.0, rhs = 0.0;
  int holds = 0;
  CHECK(apf_haar_modulus_bound(step.p, 4, 1.0, -2, 2, 1e-10, &lhs, &rhs, &holds) ==
        APF_OK);
  CHECK(holds == 1);
}

TEST_CASE("verification entry point") {
  struct Collected {
    int count = 0;
    int failures = 0;
  } collected;
  auto cb = +[](const char *, int pass, const char *, void *user) {
    auto *c = static_cast<Collected *>(user);
    ++c->count;
    if (pass == 0) ++c->failures;
  };
  int failures = apf_verify_run("P01", 0, cb, &collected);
  CHECK(failures == 0);
  CHECK(collected.count == 1);
  CHECK(collected.failures == 0);

  // listing enumerates everything without running
  collected = {};
  apf_verify_run(nullptr, 1, cb, &collected);
  CHECK(collected.count >= 30);
}
