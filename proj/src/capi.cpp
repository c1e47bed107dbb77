// extern "C" surface of the library: opaque handles over the C++ core,
// status codes instead of exceptions, thread-local error text.
#include "apfire/apfire.h"

#include <cmath>
#include <cstring>
#include <string>

#include "apnorms.hpp"
#include "firing.hpp"
#include "haar.hpp"
#include "integrate.hpp"
#include "json_io.hpp"
#include "verify.hpp"

using namespace apfire;

namespace {

thread_local std::string g_last_error;

void set_error(const std::string &msg) { g_last_error = msg; }

// Translate C++ failures into status codes at the ABI boundary.
template <typename Fn>
apf_status guarded(Fn &&fn) {
  try {
    fn();
    return APF_OK;
  } catch (const HorizonError &e) {
    set_error(e.what());
    return APF_ERR_HORIZON;
  } catch (const QuadratureError &e) {
    set_error(e.what());
    return APF_ERR_QUADRATURE;
  } catch (const std::exception &e) {
    set_error(e.what());
    return APF_ERR_USAGE;
  }
}

SolveConfig to_config(const apf_solve_config *cfg) {
  SolveConfig out;
  if (cfg) {
    out.scan_step = cfg->scan_step;
    out.time_tol = cfg->time_tol;
    out.horizon = cfg->horizon;
    out.quad_tol = cfg->quad_tol;
    if (cfg->varsigma > 0) out.varsigma = cfg->varsigma;
  }
  return out;
}

}  // namespace

struct apf_signal {
  SignalPtr impl;
};

struct apf_model {
  FiringModel impl;
};

struct apf_haar {
  HaarCoefficients impl;
};

extern "C" {

const char *apf_last_error(void) { return g_last_error.c_str(); }

apf_signal *apf_signal_from_json(const char *json_text) {
  apf_signal *out = nullptr;
  apf_status st = guarded([&] {
    if (!json_text) throw std::invalid_argument("null JSON document");
    out = new apf_signal{signal_from_json(json_text)};
  });
  return st == APF_OK ? out : nullptr;
}

apf_signal *apf_signal_preset(const char *name) {
  apf_signal *out = nullptr;
  guarded([&] {
    if (!name) throw std::invalid_argument("null preset name");
    SignalPtr sig = signal_preset(name);
    if (!sig) throw std::invalid_argument(std::string("unknown preset '") + name + "'");
    out = new apf_signal{std::move(sig)};
  });
  return out;
}

void apf_signal_free(apf_signal *sig) { delete sig; }

apf_status apf_signal_eval(const apf_signal *sig, double t, double *out) {
  return guarded([&] {
    if (!sig || !out) throw std::invalid_argument("null argument");
    *out = sig->impl->eval(t);
  });
}

apf_status apf_signal_integrate(const apf_signal *sig, double a, double b, double tol,
                                double *value, double *err_bound) {
  return guarded([&] {
    if (!sig || !value) throw std::invalid_argument("null argument");
    IntegralResult r = integrate(*sig->impl, a, b, tol);
    *value = r.value;
    if (err_bound) *err_bound = r.err_bound;
  });
}

apf_status apf_signal_integrate_weighted(const apf_signal *sig, double sigma, double t,
                                         double s, double tol, double *value,
                                         double *err_bound) {
  return guarded([&] {
    if (!sig || !value) throw std::invalid_argument("null argument");
    IntegralResult r = integrate_weighted(*sig->impl, sigma, t, s, tol);
    *value = r.value;
    if (err_bound) *err_bound = r.err_bound;
  });
}

apf_status apf_signal_active_terms(const apf_signal *sig, double a, double b,
                                   int *out) {
  return guarded([&] {
    if (!sig || !out) throw std::invalid_argument("null argument");
    if (!(a < b)) throw std::invalid_argument("active_terms: need a < b");
    const auto *node = std::get_if<DyadicNode>(&sig->impl->node());
    *out = node ? dyadic_ops(*node).active_terms(a, b) : 0;
  });
}

apf_signal *apf_signal_shift(const apf_signal *sig, double tau) {
  apf_signal *out = nullptr;
  guarded([&] {
    if (!sig) throw std::invalid_argument("null signal");
    out = new apf_signal{Signal::shift(tau, sig->impl)};
  });
  return out;
}

apf_signal *apf_signal_scale(const apf_signal *sig, double factor) {
  apf_signal *out = nullptr;
  guarded([&] {
    if (!sig) throw std::invalid_argument("null signal");
    out = new apf_signal{Signal::scale(factor, sig->impl)};
  });
  return out;
}

apf_signal *apf_signal_sum(const apf_signal *const *sigs, size_t count) {
  apf_signal *out = nullptr;
  guarded([&] {
    std::vector<SignalPtr> children;
    for (size_t i = 0; i < count; ++i) {
      if (!sigs || !sigs[i]) throw std::invalid_argument("null child signal");
      children.push_back(sigs[i]->impl);
    }
    out = new apf_signal{Signal::sum(std::move(children))};
  });
  return out;
}

apf_signal *apf_signal_clamp(const apf_signal *sig, double limit) {
  apf_signal *out = nullptr;
  guarded([&] {
    if (!sig) throw std::invalid_argument("null signal");
    out = new apf_signal{Signal::clamp(limit, sig->impl)};
  });
  return out;
}

void apf_solve_config_default(apf_solve_config *cfg) {
  if (!cfg) return;
  SolveConfig d;
  cfg->scan_step = d.scan_step;
  cfg->time_tol = d.time_tol;
  cfg->horizon = d.horizon;
  cfg->quad_tol = d.quad_tol;
  cfg->varsigma = 0.0;
}

apf_model *apf_model_new(const apf_signal *input, double sigma) {
  apf_model *out = nullptr;
  guarded([&] {
    if (!input) throw std::invalid_argument("null input signal");
    out = new apf_model{FiringModel(sigma, input->impl)};
  });
  return out;
}

void apf_model_free(apf_model *model) { delete model; }

apf_status apf_charge(const apf_model *model, double t, double s,
                      const apf_solve_config *cfg, double *out) {
  return guarded([&] {
    if (!model || !out) throw std::invalid_argument("null argument");
    *out = charge(model->impl, t, s, to_config(cfg));
  });
}

apf_status apf_fire(const apf_model *model, double t, const apf_solve_config *cfg,
                    double *phi, double *residual) {
  return guarded([&] {
    if (!model || !phi) throw std::invalid_argument("null argument");
    FireResult r = fire(model->impl, t, to_config(cfg));
    *phi = r.time;
    if (residual) *residual = r.residual;
  });
}

apf_status apf_displacement(const apf_model *model, double t,
                            const apf_solve_config *cfg, double *psi) {
  return guarded([&] {
    if (!model || !psi) throw std::invalid_argument("null argument");
    *psi = displacement(model->impl, t, to_config(cfg));
  });
}

apf_status apf_trajectory(const apf_model *model, double t0, int n,
                          const apf_solve_config *cfg, double *spikes,
                          double *residuals, int *n_done) {
  return guarded([&] {
    if (!model || !spikes) throw std::invalid_argument("null argument");
    FiringTrajectory traj = trajectory(model->impl, t0, n, to_config(cfg));
    for (std::size_t i = 0; i < traj.spikes.size(); ++i) {
      spikes[i] = traj.spikes[i];
      if (residuals) residuals[i] = traj.residuals[i];
    }
    if (n_done) *n_done = static_cast<int>(traj.spikes.size());
    if (traj.error) throw HorizonError(t0, to_config(cfg).horizon);
  });
}

apf_status apf_firing_rate(const apf_model *model, double t0, int n,
                           const apf_solve_config *cfg, double *estimate,
                           double *sequence) {
  return guarded([&] {
    if (!model || !estimate) throw std::invalid_argument("null argument");
    RateEstimate est = firing_rate(model->impl, t0, n, to_config(cfg));
    *estimate = est.estimate;
    if (sequence)
      for (std::size_t i = 0; i < est.sequence.size(); ++i) sequence[i] = est.sequence[i];
  });
}

apf_status apf_rotation_number(const apf_model *model, double t0, int n,
                               const apf_solve_config *cfg, double *out) {
  return guarded([&] {
    if (!model || !out) throw std::invalid_argument("null argument");
    *out = rotation_number(model->impl, t0, n, to_config(cfg));
  });
}

apf_status apf_well_defined_probe(const apf_model *model, double t_max,
                                  const apf_solve_config *cfg, int *verdict) {
  return guarded([&] {
    if (!model || !verdict) throw std::invalid_argument("null argument");
    ProbeVerdict v = well_defined_probe(model->impl, t_max, to_config(cfg));
    *verdict = v == ProbeVerdict::LikelyDefined ? 1 : 0;
  });
}

apf_status apf_stepanov_norm(const apf_signal *sig, double p, double r, double a,
                             double b, int samples_per_unit, double *out) {
  return guarded([&] {
    if (!sig || !out) throw std::invalid_argument("null argument");
    NormParams params;
    params.p = p;
    params.r = r;
    params.window = Window(a, b);
    params.samples_per_unit = samples_per_unit;
    *out = stepanov_norm(*sig->impl, params);
  });
}

apf_status apf_d_measure(const apf_signal *f, const apf_signal *g, double eta,
                         double a, double b, int anchors_per_unit, double *out) {
  return guarded([&] {
    if (!f || !g || !out) throw std::invalid_argument("null argument");
    *out = d_measure(*f->impl, *g->impl, eta, Window(a, b), anchors_per_unit);
  });
}

apf_status apf_f_norm_prime(const apf_signal *sig, double a, double b,
                            int anchors_per_unit, double *out) {
  return guarded([&] {
    if (!sig || !out) throw std::invalid_argument("null argument");
    *out = f_norm_prime(*sig->impl, Window(a, b), anchors_per_unit);
  });
}

apf_status apf_scan_periods(const apf_signal *sig, apf_scan_mode mode, double eps,
                            double p, double eta, const double *taus, size_t count,
                            double a, double b, int samples_per_unit,
                            double *deviations, int *accepted, double *max_gap) {
  return guarded([&] {
    if (!sig || !taus || !deviations || !accepted)
      throw std::invalid_argument("null argument");
    ScanParams params;
    params.mode = mode == APF_SCAN_UNIFORM
                      ? ScanMode::Uniform
                      : (mode == APF_SCAN_STEPANOV ? ScanMode::Stepanov : ScanMode::Mu);
    params.eps = eps;
    params.p = p;
    params.eta = eta;
    params.window = Window(a, b);
    params.samples_per_unit = samples_per_unit;
    std::vector<double> tau_list(taus, taus + count);
    AlmostPeriodScan scan = scan_periods(*sig->impl, params, tau_list);
    for (size_t i = 0; i < count; ++i) {
      deviations[i] = scan.deviations[i];
      accepted[i] = scan.accepted[i] ? 1 : 0;
    }
    if (max_gap) *max_gap = scan.max_gap;
  });
}

apf_status apf_mean_value(const apf_signal *sig, const double *schedule, size_t count,
                          double tol, int trailing, double *partials, int *verdict,
                          double *limit, size_t *witness_lo, size_t *witness_hi) {
  return guarded([&] {
    if (!sig || !schedule || !partials) throw std::invalid_argument("null argument");
    std::vector<double> sched(schedule, schedule + count);
    MeanEstimate est = estimate_mean(*sig->impl, sched, tol, trailing);
    for (size_t i = 0; i < count; ++i) partials[i] = est.partials[i];
    if (verdict) {
      switch (est.verdict) {
        case MeanVerdict::Converged: *verdict = APF_MEAN_CONVERGED; break;
        case MeanVerdict::Oscillating: *verdict = APF_MEAN_OSCILLATING; break;
        default: *verdict = APF_MEAN_INCONCLUSIVE; break;
      }
    }
    if (limit) *limit = est.limit;
    if (witness_lo) *witness_lo = est.witness_lo;
    if (witness_hi) *witness_hi = est.witness_hi;
  });
}

apf_status apf_antiderivative_residual(const apf_signal *sig, double m, double a,
                                       double b, int samples_per_unit, double *out) {
  return guarded([&] {
    if (!sig || !out) throw std::invalid_argument("null argument");
    *out = antiderivative_residual(*sig->impl, m, Window(a, b), samples_per_unit);
  });
}

apf_status apf_haar_fn(long long k, int j, double t, double *out) {
  return guarded([&] {
    if (!out) throw std::invalid_argument("null argument");
    *out = haar_value({k, j}, t);
  });
}

apf_haar *apf_haar_coefficients(const apf_signal *sig, long long k0, long long k1,
                                int n, double quad_tol) {
  apf_haar *out = nullptr;
  guarded([&] {
    if (!sig) throw std::invalid_argument("null signal");
    out = new apf_haar{haar_coefficients(*sig->impl, k0, k1, n, quad_tol)};
  });
  return out;
}

void apf_haar_free(apf_haar *coeffs) { delete coeffs; }

apf_status apf_haar_at(const apf_haar *coeffs, long long k, int j, double *out) {
  return guarded([&] {
    if (!coeffs || !out) throw std::invalid_argument("null argument");
    *out = coeffs->impl.at(k, j);
  });
}

apf_status apf_haar_project(const apf_haar *coeffs, double t, double *out) {
  return guarded([&] {
    if (!coeffs || !out) throw std::invalid_argument("null argument");
    *out = coeffs->impl.project(t);
  });
}

apf_status apf_haar_projection_error(const apf_signal *sig, int n, double p,
                                     long long k0, long long k1, double quad_tol,
                                     double *out) {
  return guarded([&] {
    if (!sig || !out) throw std::invalid_argument("null argument");
    *out = projection_error(*sig->impl, n, p, k0, k1, quad_tol);
  });
}

apf_status apf_haar_modulus_bound(const apf_signal *sig, int n, double p, long long k0,
                                  long long k1, double quad_tol, double *lhs,
                                  double *rhs, int *holds) {
  return guarded([&] {
    if (!sig || !lhs || !rhs || !holds) throw std::invalid_argument("null argument");
    ModulusBound mb = modulus_bound_check(*sig->impl, n, p, k0, k1, quad_tol);
    *lhs = mb.lhs;
    *rhs = mb.rhs;
    *holds = mb.holds ? 1 : 0;
  });
}

int apf_verify_run(const char *only, int list_only, apf_verify_cb cb, void *user) {
  std::string filter = only ? only : "";
  return run_verification(filter, list_only != 0,
                          [&](const Check &check, const CheckResult &result) {
                            if (cb)
                              cb(check.id.c_str(), list_only ? -1 : (result.pass ? 1 : 0),
                                 result.detail.c_str(), user);
                          });
}

}  // extern "C"
